#include "mfs/free_energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <stdexcept>

namespace mfs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Cert { Negative, PositiveFinite, PositiveInfinite, Straddle };

// t(beta) = +inf exactly when the weight series diverges for every t: an
// exponentially growing psi factor on an infinite alphabet.
bool divergent_for_all_t(const SystemSpec& sys, const PotentialSpec& psi, double beta) {
    if (!sys.infinite_alphabet()) return false;
    if (psi.geometric) return false;
    return psi.law == Depth1Law::NegIdentity && beta < 0.0;
}

}  // namespace

FreeEnergyEngine::FreeEnergyEngine(SystemSpec sys, PotentialSpec psi, DepthPolicy pol, double t_cap)
    : sys_(std::move(sys)), psi_(std::move(psi)), t_cap_(t_cap), eval_(sys_, psi_, pol) {
    if (!(t_cap_ > 1.0)) throw std::invalid_argument("t_cap must exceed 1");
}

FreeEnergyPoint FreeEnergyEngine::at(double beta, double tol) const {
    if (!(tol > 0.0)) throw std::invalid_argument("free_energy: tol must be positive");
    FreeEnergyPoint out;
    out.beta = beta;

    if (divergent_for_all_t(sys_, psi_, beta)) {
        PressureValue probe = eval_.eval(t_cap_, beta);
        if (sign_of(probe) != PressureSign::Negative) {
            out.infinite = true;
            return out;
        }
        // certificate and numeric probe disagree; fall through to bisection
    }

    // sign certification near the root needs series widths well under tol
    const double eps_hint = std::max(1e-12, tol * 0.02);
    std::map<double, Cert> cache;
    auto cert_at = [&](double t) {
        auto it = cache.find(t);
        if (it != cache.end()) return it->second;
        PressureValue pv = eval_.eval(t, beta, eps_hint);
        Cert c = Cert::Straddle;
        switch (pv.kind) {
            case PressureValue::Kind::PlusInfinity:
                c = Cert::PositiveInfinite;
                break;
            case PressureValue::Kind::Finite:
                if (pv.enc.hi < 0.0) c = Cert::Negative;
                else if (pv.enc.lo > 0.0) c = Cert::PositiveFinite;
                break;
            case PressureValue::Kind::Indeterminate:
                if (pv.lower > 0.0) c = Cert::PositiveFinite;
                break;
        }
        cache.emplace(t, c);
        return c;
    };
    auto is_positive = [&](double t) {
        Cert c = cert_at(t);
        return c == Cert::PositiveFinite || c == Cert::PositiveInfinite;
    };

    // grow a certified-negative endpoint upward from 1
    double t_neg = 1.0;
    while (cert_at(t_neg) != Cert::Negative) {
        if (t_neg >= t_cap_) {
            out.warning = FreeEnergyPoint::Warning::CapExceeded;
            break;
        }
        t_neg = std::min(t_cap_, t_neg * 2.0);
    }
    // grow a certified-positive endpoint downward from 0
    double t_pos = 0.0;
    double down_step = 1.0;
    while (!is_positive(t_pos)) {
        if (t_pos <= -t_cap_) break;
        t_pos = std::max(-t_cap_, t_pos - down_step);
        down_step *= 2.0;
    }

    const double res = std::max(tol / 4.0, 1e-12);

    // inf of the certified-negative set
    double n_lo = t_pos, n_hi = t_neg;
    if (cert_at(t_neg) == Cert::Negative) {
        while (n_hi - n_lo > res) {
            double mid = 0.5 * (n_lo + n_hi);
            if (mid <= n_lo || mid >= n_hi) break;
            if (cert_at(mid) == Cert::Negative) n_hi = mid;
            else n_lo = mid;
        }
    }
    // sup of the certified-positive set
    double p_lo = t_pos, p_hi = n_hi;
    if (is_positive(t_pos)) {
        while (p_hi - p_lo > res) {
            double mid = 0.5 * (p_lo + p_hi);
            if (mid <= p_lo || mid >= p_hi) break;
            if (is_positive(mid)) p_lo = mid;
            else p_hi = mid;
        }
    } else {
        p_lo = -t_cap_;  // could not certify positivity anywhere above -t_cap
        out.warning = FreeEnergyPoint::Warning::Widened;
    }

    out.zero_exists = cert_at(p_lo) == Cert::PositiveFinite && cert_at(n_hi) == Cert::Negative;
    out.value = Enclosure::of(p_lo, n_hi);
    if (out.warning == FreeEnergyPoint::Warning::None && out.value.width() > tol)
        out.warning = FreeEnergyPoint::Warning::Widened;
    return out;
}

FreeEnergyPoint free_energy_at(const SystemSpec& sys, const PotentialSpec& psi, double beta,
                               double tol, const DepthPolicy& pol, double t_cap) {
    FreeEnergyEngine engine(sys, psi, pol, t_cap);
    return engine.at(beta, tol);
}

FreeEnergyCurve free_energy_curve(const SystemSpec& sys, const PotentialSpec& psi,
                                  const std::vector<double>& beta_grid, double tol,
                                  const DepthPolicy& pol, double t_cap, int threads) {
    if (beta_grid.size() < 3) throw std::invalid_argument("free_energy_curve: need at least 3 grid points");
    for (std::size_t i = 1; i < beta_grid.size(); ++i)
        if (!(beta_grid[i] > beta_grid[i - 1]))
            throw std::invalid_argument("free_energy_curve: grid must be strictly increasing");

    FreeEnergyEngine engine(sys, psi, pol, t_cap);
    FreeEnergyCurve curve;
    curve.points.resize(beta_grid.size());

    int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        for (std::size_t i = 0; i < beta_grid.size(); ++i) curve.points[i] = engine.at(beta_grid[i], tol);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < nthreads; ++w) {
            futs.push_back(std::async(std::launch::async, [&]() {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= beta_grid.size()) return;
                    curve.points[i] = engine.at(beta_grid[i], tol);
                }
            }));
        }
        for (auto& f : futs) f.get();
    }

    // +inf points must form end segments of the grid for a convex curve
    std::size_t first_fin = curve.points.size(), last_fin = 0;
    bool any_fin = false;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (!curve.points[i].infinite) {
            if (!any_fin) first_fin = i;
            last_fin = i;
            any_fin = true;
        }
    }
    if (any_fin) {
        for (std::size_t i = first_fin; i <= last_fin; ++i)
            if (curve.points[i].infinite) curve.infinite_segments_valid = false;
        if (first_fin > 0)
            curve.dom_lo = 0.5 * (beta_grid[first_fin - 1] + beta_grid[first_fin]);
        if (last_fin + 1 < curve.points.size())
            curve.dom_hi = 0.5 * (beta_grid[last_fin] + beta_grid[last_fin + 1]);
    }

    // midpoint convexity defect beyond enclosure widths
    double defect = 0.0;
    for (std::size_t i = first_fin; any_fin && i + 2 <= last_fin; ++i) {
        const auto &a = curve.points[i], &b = curve.points[i + 1], &c = curve.points[i + 2];
        if (a.infinite || b.infinite || c.infinite) continue;
        double b1 = a.beta, b2 = b.beta, b3 = c.beta;
        double lhs = b.value.mid() * (b3 - b1);
        double rhs = a.value.mid() * (b3 - b2) + c.value.mid() * (b2 - b1);
        double allowance = a.value.width() * (b3 - b2) + c.value.width() * (b2 - b1) +
                           b.value.width() * (b3 - b1);
        defect = std::max(defect, (lhs - rhs - allowance) / (b3 - b1));
    }
    curve.convexity_defect = std::max(0.0, defect);
    return curve;
}

SlopeReport slopes(const FreeEnergyCurve& curve) {
    SlopeReport rep;
    std::vector<std::size_t> fin;
    for (std::size_t i = 0; i < curve.points.size(); ++i)
        if (!curve.points[i].infinite) fin.push_back(i);
    if (fin.size() < 2) throw std::invalid_argument("slopes: need at least 2 finite points");

    auto mid = [&](std::size_t i) { return curve.points[i].value.mid(); };
    auto beta = [&](std::size_t i) { return curve.points[i].beta; };

    rep.alpha_minus = kInf;
    rep.alpha_plus = -kInf;
    double am_err = 0.0, ap_err = 0.0;
    std::vector<double> left_slopes(fin.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<double> right_slopes(fin.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k + 1 < fin.size(); ++k) {
        double s = (mid(fin[k + 1]) - mid(fin[k])) / (beta(fin[k + 1]) - beta(fin[k]));
        right_slopes[k] = s;
        left_slopes[k + 1] = s;
    }
    for (std::size_t k = 1; k + 1 < fin.size(); ++k) {
        SlopeReport::PointSlopes ps;
        ps.beta = beta(fin[k]);
        ps.left = left_slopes[k];
        ps.right = right_slopes[k];
        rep.interior.push_back(ps);
        double h_l = beta(fin[k]) - beta(fin[k - 1]);
        double h_r = beta(fin[k + 1]) - beta(fin[k]);
        double w_err_l = (curve.points[fin[k]].value.width() + curve.points[fin[k - 1]].value.width()) / h_l;
        double w_err_r = (curve.points[fin[k + 1]].value.width() + curve.points[fin[k]].value.width()) / h_r;
        if (-left_slopes[k] < rep.alpha_minus) {
            rep.alpha_minus = -left_slopes[k];
            am_err = w_err_l + std::abs(left_slopes[k] - right_slopes[k]);
        }
        if (-right_slopes[k] > rep.alpha_plus) {
            rep.alpha_plus = -right_slopes[k];
            ap_err = w_err_r + std::abs(left_slopes[k] - right_slopes[k]);
        }
    }
    if (rep.interior.empty()) {
        // only two finite points: a single chord serves both estimates
        double s = right_slopes[0];
        rep.alpha_minus = -s;
        rep.alpha_plus = -s;
    }
    rep.alpha_minus_err = am_err;
    rep.alpha_plus_err = ap_err;
    rep.alpha_minus_extrapolated = std::isfinite(curve.dom_hi);
    rep.alpha_plus_extrapolated = std::isfinite(curve.dom_lo);
    return rep;
}

}  // namespace mfs

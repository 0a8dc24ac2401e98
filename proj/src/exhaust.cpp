#include "mfs/exhaust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Concrete map evaluation; only families with canonical or explicit offsets
// define actual maps on [0,1].
struct MapEval {
    const SystemSpec& sys;

    bool has_maps() const {
        if (sys.family == Family::Gauss) return true;
        if (sys.family == Family::Lueroth || sys.family == Family::GeneralizedLueroth) return true;
        return sys.family == Family::FiniteSelfSimilar && sys.offsets.has_value();
    }
    double value(Symbol e, double x) const {
        if (sys.family == Family::Gauss) return 1.0 / (x + static_cast<double>(e));
        double r = sys.ratio(e).mid();
        double o = sys.offset(e)->mid();
        return r * x + o;
    }
    double deriv(Symbol e, double x) const {  // signed
        if (sys.family == Family::Gauss) {
            double d = x + static_cast<double>(e);
            return -1.0 / (d * d);
        }
        return sys.ratio(e).mid();
    }
    double deriv_bound(Symbol e) const {  // sup |phi'|
        return sys.sup_deriv(e).hi;
    }
    double second_deriv_bound(Symbol e) const {  // sup |phi''|
        if (sys.family == Family::Gauss) {
            double ed = static_cast<double>(e);
            return 2.0 / (ed * ed * ed);
        }
        return 0.0;
    }
};

double pow2_neg(double k) { return std::ldexp(1.0, -static_cast<int>(k)); }

// exact sum_{i=a}^{b} 2^-i (b may be infinite)
double geom_sum(std::uint64_t a, std::optional<std::uint64_t> b) {
    if (b && *b < a) return 0.0;
    double head = std::ldexp(1.0, -static_cast<int>(a - 1));
    double tail = b ? std::ldexp(1.0, -static_cast<int>(*b)) : 0.0;
    return head - tail;
}

}  // namespace

Enclosure rho_distance(const SystemSpec& a, const SystemSpec& b, int depth) {
    if (depth < 1) throw std::invalid_argument("rho_distance: depth must be >= 1");
    MapEval ea{a}, eb{b};
    const bool identical_laws = a.same_maps(b);
    auto maxA = a.max_symbol(), maxB = b.max_symbol();

    Enclosure total{0.0, 0.0};
    const int grid_n = 2048;
    for (int i = 1; i <= depth; ++i) {
        const Symbol e = static_cast<Symbol>(i);
        const bool inA = a.contains_symbol(e), inB = b.contains_symbol(e);
        const double w = pow2_neg(i);
        if (!inA && !inB) continue;
        if (inA != inB) {
            total = total + Enclosure::point(w);
            continue;
        }
        if (identical_laws) continue;  // shared symbol, same map: zero contribution
        if (!ea.has_maps() || !eb.has_maps())
            throw std::invalid_argument("rho_distance: system has no concrete maps (offsets undefined)");
        double sup_v = 0.0, sup_d = 0.0;
        for (int g = 0; g <= grid_n; ++g) {
            double x = static_cast<double>(g) / grid_n;
            sup_v = std::max(sup_v, std::abs(ea.value(e, x) - eb.value(e, x)));
            sup_d = std::max(sup_d, std::abs(ea.deriv(e, x) - eb.deriv(e, x)));
        }
        const double h = 1.0 / grid_n;
        double lip_v = ea.deriv_bound(e) + eb.deriv_bound(e);
        double lip_d = ea.second_deriv_bound(e) + eb.second_deriv_bound(e);
        Enclosure v{step_down(sup_v, 4), step_up(sup_v + lip_v * h / 2.0, 4)};
        Enclosure d{step_down(sup_d, 4), step_up(sup_d + lip_d * h / 2.0, 4)};
        total = total + scale(w, v + d);
    }

    // symbols above `depth`
    std::uint64_t d64 = static_cast<std::uint64_t>(depth);
    auto clip = [&](std::optional<std::uint64_t> m) { return m ? std::max(*m, d64) : std::optional<std::uint64_t>{}; };
    auto cA = clip(maxA), cB = clip(maxB);
    std::optional<std::uint64_t> shared_end =
        (cA && cB) ? std::optional<std::uint64_t>(std::min(*cA, *cB))
                   : (cA ? cA : cB);  // min with infinity
    // shared region (depth, min(limA, limB)]
    double shared_sum = cA && cB ? geom_sum(d64 + 1, std::min(*cA, *cB))
                                 : (cA || cB ? geom_sum(d64 + 1, shared_end) : geom_sum(d64 + 1, std::nullopt));
    if (!cA && !cB) shared_sum = geom_sum(d64 + 1, std::nullopt);
    if (!identical_laws)
        total = total + Enclosure{0.0, step_up(3.0 * shared_sum)};
    // symmetric-difference region (min, max]
    std::uint64_t lo_end = 0;
    std::optional<std::uint64_t> hi_end;
    if (cA && cB) {
        lo_end = std::min(*cA, *cB);
        hi_end = std::max(*cA, *cB);
    } else if (cA || cB) {
        lo_end = cA ? *cA : *cB;
        hi_end = std::nullopt;  // the infinite one continues
    } else {
        lo_end = 0;  // both infinite: empty difference
    }
    if (lo_end > 0) {
        double diff = geom_sum(std::max(lo_end, d64) + 1, hi_end);
        total = total + Enclosure::point(diff);
    }
    return total;
}

LambdaRatioResult lambda_ratio_check(const SystemSpec& sys_n, const SystemSpec& sys, double R,
                                     std::uint64_t symbol_probe_cap) {
    if (!(R > 1.0)) throw std::invalid_argument("lambda_ratio_check: R must exceed 1");
    auto maxN = sys_n.max_symbol(), maxF = sys.max_symbol();
    if (maxF && (!maxN || *maxN > *maxF))
        throw std::invalid_argument("lambda_ratio_check: alphabets not nested");

    LambdaRatioResult res;
    std::uint64_t limit = maxN ? std::min(*maxN, symbol_probe_cap) : symbol_probe_cap;
    double worst = 1.0;
    Symbol worst_sym = 1;
    auto probe = [&](std::uint64_t e) {
        Enclosure num = sys_n.sup_deriv(static_cast<Symbol>(e));
        Enclosure den = sys.sup_deriv(static_cast<Symbol>(e));
        double ratio = num.mid() / den.mid();
        double dev = std::max(ratio, 1.0 / ratio);
        if (dev > worst) {
            worst = dev;
            worst_sym = static_cast<Symbol>(e);
        }
    };
    for (std::uint64_t e = 1; e <= limit; ++e) probe(e);
    if (!maxN || *maxN > symbol_probe_cap) {
        // law-level tail: the per-symbol ratio of two laws with different
        // asymptotic degree is unbounded regardless of R; log corrections also
        // diverge against pure powers of the same degree
        auto degree = [](const SystemSpec& s) {
            switch (s.family) {
                case Family::Gauss: return 2.0;
                case Family::Lueroth: return 2.0;
                case Family::GeneralizedLueroth: return 3.0;
                case Family::PowerLaw: return s.p;
                case Family::LogPower: return 1.0;
                case Family::FiniteSelfSimilar: return 0.0;
            }
            return 0.0;
        };
        bool log_mismatch = (sys_n.family == Family::LogPower) != (sys.family == Family::LogPower);
        if (degree(sys_n) != degree(sys) || log_mismatch) {
            res.tail_bounded = false;
            res.pass = false;
            res.worst_ratio = kInf;
            res.worst_symbol = static_cast<Symbol>(limit);
            return res;
        }
        for (std::uint64_t e : {std::uint64_t(100000), std::uint64_t(10000000)})
            if (!maxN || e <= *maxN) probe(e);
    }
    res.worst_ratio = worst;
    res.worst_symbol = worst_sym;
    res.pass = worst <= R;
    return res;
}

RegularCertificate regular_certificate_exhausting(const SystemSpec& sys, const PotentialSpec& psi) {
    RegularCertificate cert;
    cert.k = 1;
    cert.C = 1.0;
    cert.justification =
        "truncation restricts suprema over cylinders: sup over the sub-shift never exceeds "
        "sup over the full shift, so the domination inequality holds with k=1, C=1 for " +
        sys.describe() + " with psi=" + psi.describe();
    return cert;
}

ConvergenceReport exhaust_run(const SystemSpec& sys, const PotentialSpec& psi,
                              const std::vector<std::uint64_t>& n_list,
                              const std::vector<double>& beta_probes,
                              const std::vector<double>& alpha_probes, double tol,
                              const DepthPolicy& pol, double t_cap, int threads) {
    if (n_list.empty()) throw std::invalid_argument("exhaust_run: n_list must be nonempty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("exhaust_run: n_list must be strictly increasing");

    ConvergenceReport rep;
    rep.beta_probes = beta_probes;
    rep.alpha_probes = alpha_probes;
    rep.certificate = regular_certificate_exhausting(sys, psi);

    for (std::uint64_t n : n_list) {
        TruncationRecord row;
        row.n = n;
        SystemSpec trunc = truncate(sys, n);
        row.curve = free_energy_curve(trunc, psi, beta_probes, tol, pol, t_cap, threads);
        row.slope = slopes(row.curve);
        row.spec = spectrum(row.curve, alpha_probes);
        row.alpha_minus_n = row.slope.alpha_minus;
        row.alpha_plus_n = row.slope.alpha_plus;
        row.rho_to_full = rho_distance(sys, trunc, static_cast<int>(std::max<std::uint64_t>(12, n + 2)));
        row.boundary_f_estimate = conjugate(row.curve, row.alpha_plus_n).value;
        double interior_max = -kInf;
        for (const auto& sp : row.spec.points)
            if (sp.region == SpectrumPoint::Region::Interior) interior_max = std::max(interior_max, sp.value);
        row.interior_f_max = std::isfinite(interior_max) ? interior_max : 0.0;
        row.boundary_collapse = row.boundary_f_estimate < kBoundaryCollapseTol &&
                                row.interior_f_max > kInteriorPositiveFloor;

        // slope-jump heuristic: a kink exceeds 10x the median local slope variation
        std::vector<double> jumps;
        for (const auto& ps : row.slope.interior)
            if (ps.left && ps.right) jumps.push_back(std::abs(*ps.right - *ps.left));
        if (jumps.size() >= 3) {
            std::vector<double> sorted = jumps;
            std::sort(sorted.begin(), sorted.end());
            double med = sorted[sorted.size() / 2];
            double maxj = sorted.back();
            row.second_order_kink = maxj > 10.0 * std::max(med, 1e-12) && maxj > 0.05;
        }
        rep.rows.push_back(std::move(row));
    }

    if (sys.self_similar() && sys.infinite_alphabet())
        rep.full_curve = free_energy_curve(sys, psi, beta_probes, tol, pol, t_cap, threads);

    // summary trends against the finest truncation
    const auto& ref = rep.full_curve ? *rep.full_curve : rep.rows.back().curve;
    for (const auto& row : rep.rows) {
        double worst = 0.0;
        for (std::size_t i = 0; i < row.curve.points.size(); ++i) {
            const auto &p = row.curve.points[i], &q = ref.points[i];
            if (p.infinite || q.infinite) continue;
            worst = std::max(worst, std::abs(p.value.mid() - q.value.mid()));
        }
        rep.t_trend.push_back(worst);
    }
    for (std::size_t k = 0; k + 1 < rep.rows.size(); ++k) {
        double worst = 0.0;
        for (std::size_t i = 0; i < alpha_probes.size(); ++i) {
            const auto &p = rep.rows[k].spec.points[i], &q = rep.rows[k + 1].spec.points[i];
            if (p.region == SpectrumPoint::Region::Interior &&
                q.region == SpectrumPoint::Region::Interior)
                worst = std::max(worst, std::abs(p.value - q.value));
        }
        rep.spectrum_increments.push_back(worst);
    }

    // escaping boundary: alpha_+^n strictly increasing with non-decaying steps
    if (rep.rows.size() >= 3) {
        bool increasing = true;
        for (std::size_t k = 1; k < rep.rows.size(); ++k)
            if (rep.rows[k].alpha_plus_n <= rep.rows[k - 1].alpha_plus_n + 1e-9) increasing = false;
        if (increasing) {
            std::size_t m = rep.rows.size();
            double last = rep.rows[m - 1].alpha_plus_n - rep.rows[m - 2].alpha_plus_n;
            double prev = rep.rows[m - 2].alpha_plus_n - rep.rows[m - 3].alpha_plus_n;
            double total = rep.rows[m - 1].alpha_plus_n - rep.rows[0].alpha_plus_n;
            rep.escaping_boundary = last >= 0.8 * prev && total > 0.1;
        }
    }
    for (const auto& row : rep.rows) rep.any_second_order_kink |= row.second_order_kink;
    if (rep.full_curve) {
        // check the full curve for a kink as well
        SlopeReport sr = slopes(*rep.full_curve);
        std::vector<double> jumps;
        for (const auto& ps : sr.interior)
            if (ps.left && ps.right) jumps.push_back(std::abs(*ps.right - *ps.left));
        if (jumps.size() >= 3) {
            std::vector<double> sorted = jumps;
            std::sort(sorted.begin(), sorted.end());
            double med = sorted[sorted.size() / 2];
            rep.any_second_order_kink |= sorted.back() > 10.0 * std::max(med, 1e-12) && sorted.back() > 0.05;
        }
    }
    return rep;
}

}  // namespace mfs

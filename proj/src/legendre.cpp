#include "mfs/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfs {

namespace {

std::vector<std::size_t> finite_indices(const FreeEnergyCurve& curve) {
    std::vector<std::size_t> fin;
    for (std::size_t i = 0; i < curve.points.size(); ++i)
        if (!curve.points[i].infinite) fin.push_back(i);
    return fin;
}

}  // namespace

ConjugateValue conjugate(const FreeEnergyCurve& curve, double alpha) {
    auto fin = finite_indices(curve);
    if (fin.empty()) throw std::invalid_argument("conjugate: no finite grid points");
    ConjugateValue out;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    std::vector<double> vals(fin.size());
    for (std::size_t k = 0; k < fin.size(); ++k) {
        const auto& p = curve.points[fin[k]];
        vals[k] = p.value.mid() + p.beta * alpha;
        if (vals[k] < best) {
            best = vals[k];
            best_k = k;
        }
    }
    out.value = best;
    // flagged sentinel: infimum at a grid edge with a consistently decreasing run
    if (fin.size() >= 3) {
        const double trend_eps = 1e-9;
        if (best_k == 0 && vals[0] < vals[1] - trend_eps && vals[1] < vals[2] - trend_eps)
            out.neg_infinity = true;
        std::size_t n = fin.size();
        if (best_k == n - 1 && vals[n - 1] < vals[n - 2] - trend_eps && vals[n - 2] < vals[n - 3] - trend_eps)
            out.neg_infinity = true;
    }
    return out;
}

SpectrumCurve spectrum(const FreeEnergyCurve& curve, const std::vector<double>& alpha_grid) {
    SpectrumCurve sc;
    SlopeReport sr = slopes(curve);
    sc.alpha_minus = sr.alpha_minus;
    sc.alpha_plus = sr.alpha_plus;
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        double alpha = alpha_grid[i];
        // safety margin of one local grid cell (grids may be non-uniform)
        double cell = 0.0;
        if (i > 0) cell = alpha - alpha_grid[i - 1];
        if (i + 1 < alpha_grid.size())
            cell = cell > 0.0 ? std::min(cell, alpha_grid[i + 1] - alpha) : alpha_grid[i + 1] - alpha;
        SpectrumPoint sp;
        sp.alpha = alpha;
        ConjugateValue cv = conjugate(curve, alpha);
        sp.neg_infinity = cv.neg_infinity;
        sp.unclamped = cv.value;
        sp.value = std::max(0.0, cv.value);
        sp.clamped = cv.value < 0.0;
        if (alpha > sc.alpha_minus + cell && alpha < sc.alpha_plus - cell && !cv.neg_infinity)
            sp.region = SpectrumPoint::Region::Interior;
        sp.clamp_anomaly = sp.clamped && sp.region == SpectrumPoint::Region::Interior;
        sc.points.push_back(sp);
    }
    return sc;
}

double biconjugate_gap(const FreeEnergyCurve& curve) {
    auto fin = finite_indices(curve);
    if (fin.size() < 3) throw std::invalid_argument("biconjugate_gap: need at least 3 finite points");

    // slope set of the sampled curve; for convex data the support slopes at the
    // grid points are exactly the adjacent difference quotients
    std::vector<double> slopes_set;
    for (std::size_t k = 0; k + 1 < fin.size(); ++k) {
        const auto& a = curve.points[fin[k]];
        const auto& b = curve.points[fin[k + 1]];
        slopes_set.push_back((b.value.mid() - a.value.mid()) / (b.beta - a.beta));
    }
    slopes_set.push_back(0.0);

    double gap = 0.0;
    for (std::size_t k = 0; k < fin.size(); ++k) {
        const auto& p = curve.points[fin[k]];
        double t_star_best = -std::numeric_limits<double>::infinity();
        for (double a : slopes_set) {
            // t*(a) = sup_b (a b - t(b)); then t**(beta) = sup_a (a beta - t*(a))
            double t_star = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < fin.size(); ++j) {
                const auto& q = curve.points[fin[j]];
                t_star = std::max(t_star, a * q.beta - q.value.mid());
            }
            t_star_best = std::max(t_star_best, a * p.beta - t_star);
        }
        gap = std::max(gap, p.value.mid() - t_star_best);
    }
    return gap;
}

}  // namespace mfs

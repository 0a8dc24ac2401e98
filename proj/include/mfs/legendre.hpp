#pragma once
// Multifractal spectrum as the Legendre conjugate f(alpha) = inf_beta
// (t(beta) + beta*alpha) over the sampled free-energy grid, with interior /
// boundary labeling and a biconjugate convexity diagnostic.

#include <vector>

#include "mfs/free_energy.hpp"

namespace mfs {

struct ConjugateValue {
    double value = 0.0;
    // A finite grid cannot certify divergence; a monotone decreasing trend into
    // the grid edge is reported as a flagged sentinel instead.
    bool neg_infinity = false;
};

ConjugateValue conjugate(const FreeEnergyCurve& curve, double alpha);

struct SpectrumPoint {
    double alpha = 0.0;
    double value = 0.0;           // clamped at 0 from below
    double unclamped = 0.0;
    bool neg_infinity = false;
    enum class Region { Interior, BoundaryOrExterior } region = Region::BoundaryOrExterior;
    bool clamped = false;
    bool clamp_anomaly = false;   // an Interior value needed clamping
};

struct SpectrumCurve {
    std::vector<SpectrumPoint> points;
    double alpha_minus = 0.0;
    double alpha_plus = 0.0;
};

SpectrumCurve spectrum(const FreeEnergyCurve& curve, const std::vector<double>& alpha_grid);

// max over finite grid points of t - t**; large gaps flag non-convex artifacts.
double biconjugate_gap(const FreeEnergyCurve& curve);

}  // namespace mfs

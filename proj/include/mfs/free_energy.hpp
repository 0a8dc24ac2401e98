#pragma once
// Generalized free energy t(beta) = inf { t : P(t*zeta + beta*psi) <= 0 } by
// monotone bisection over the certified pressure-sign oracle, effective-domain
// detection and one-sided slope estimates.

#include <optional>
#include <vector>

#include "mfs/pressure.hpp"

namespace mfs {

struct FreeEnergyPoint {
    double beta = 0.0;
    bool infinite = false;      // t(beta) = +inf with an analytic certificate
    Enclosure value{0.0, 0.0};  // brackets t(beta) when finite
    // True when a certified finite-positive pressure was seen below a certified
    // negative one (a genuine zero crossing); false when the infimum is only
    // approached through +inf pressures or the curve never certifies positive.
    bool zero_exists = false;
    enum class Warning { None, Widened, CapExceeded } warning = Warning::None;
};

struct FreeEnergyCurve {
    std::vector<FreeEnergyPoint> points;
    double dom_lo = -std::numeric_limits<double>::infinity();
    double dom_hi = std::numeric_limits<double>::infinity();
    double convexity_defect = 0.0;  // max midpoint-convexity violation beyond widths
    bool infinite_segments_valid = true;  // +inf points form at most two end-segments
};

// Evaluator shared across grid points; bisection brackets grow from [0,1]
// doubling outward, capped at |t| <= t_cap.
class FreeEnergyEngine {
public:
    FreeEnergyEngine(SystemSpec sys, PotentialSpec psi, DepthPolicy pol, double t_cap = 64.0);

    FreeEnergyPoint at(double beta, double tol) const;
    const PressureEvaluator& evaluator() const { return eval_; }

private:
    SystemSpec sys_;
    PotentialSpec psi_;
    double t_cap_;
    PressureEvaluator eval_;
};

FreeEnergyPoint free_energy_at(const SystemSpec& sys, const PotentialSpec& psi, double beta,
                               double tol, const DepthPolicy& pol, double t_cap = 64.0);

FreeEnergyCurve free_energy_curve(const SystemSpec& sys, const PotentialSpec& psi,
                                  const std::vector<double>& beta_grid, double tol,
                                  const DepthPolicy& pol, double t_cap = 64.0, int threads = 1);

struct SlopeReport {
    struct PointSlopes {
        double beta = 0.0;
        std::optional<double> left;   // backward difference quotient of midpoints
        std::optional<double> right;  // forward difference quotient
    };
    std::vector<PointSlopes> interior;
    double alpha_minus = 0.0;  // inf of negated left slopes over the finite interior
    double alpha_plus = 0.0;   // sup of negated right slopes
    bool alpha_minus_extrapolated = false;  // dom(t) bounded above in the grid
    bool alpha_plus_extrapolated = false;   // dom(t) bounded below in the grid
    double alpha_minus_err = 0.0;  // grid-resolution error estimates
    double alpha_plus_err = 0.0;
};

SlopeReport slopes(const FreeEnergyCurve& curve);

}  // namespace mfs

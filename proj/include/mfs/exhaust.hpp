#pragma once
// Exhausting-principle driver: free energies, spectra and boundary-slope
// estimates over truncations, the weighted sup-norm metric between systems,
// the single-symbol derivative-ratio check, and convergence reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfs/legendre.hpp"

namespace mfs {

// sum_i 2^-i (||phi_i^1 - phi_i^2|| + ||(phi_i^1)' - (phi_i^2)'||) over shared
// symbols plus sum 2^-i over the symmetric difference; symbols above `depth`
// are folded into an analytic tail.
Enclosure rho_distance(const SystemSpec& a, const SystemSpec& b, int depth);

struct LambdaRatioResult {
    bool pass = false;
    double worst_ratio = 1.0;  // max of ratio and its reciprocal over symbols
    Symbol worst_symbol = 1;
    bool tail_bounded = true;  // law-level asymptotic ratio stays bounded
};

// Checks R^-1 <= ||(phi_e^n)'|| / ||phi_e'|| <= R on the shared alphabet.
LambdaRatioResult lambda_ratio_check(const SystemSpec& sys_n, const SystemSpec& sys, double R,
                                     std::uint64_t symbol_probe_cap = 10000);

struct RegularCertificate {
    int k = 1;
    double C = 1.0;
    std::string justification;
};

// Restriction to a sub-alphabet never increases cylinder suprema, so the
// truncation family satisfies the domination inequality with k = 1, C = 1.
RegularCertificate regular_certificate_exhausting(const SystemSpec& sys, const PotentialSpec& psi);

struct TruncationRecord {
    std::uint64_t n = 0;
    FreeEnergyCurve curve;
    SpectrumCurve spec;
    SlopeReport slope;
    double alpha_minus_n = 0.0;
    double alpha_plus_n = 0.0;
    Enclosure rho_to_full{0.0, 0.0};
    double boundary_f_estimate = 0.0;  // conjugate at the alpha_+ estimate
    double interior_f_max = 0.0;
    bool boundary_collapse = false;    // heuristic flag (thresholds below)
    bool second_order_kink = false;    // heuristic slope-jump flag
};

struct ConvergenceReport {
    std::vector<TruncationRecord> rows;
    std::optional<FreeEnergyCurve> full_curve;  // computed for self-similar systems
    std::vector<double> t_trend;                // max |t_n - t_N| over probes, per n
    std::vector<double> spectrum_increments;    // per consecutive pair of n
    bool escaping_boundary = false;             // heuristic: alpha_+^n keeps growing
    bool any_second_order_kink = false;
    RegularCertificate certificate;
    std::vector<double> beta_probes;
    std::vector<double> alpha_probes;
};

// Heuristic flag thresholds (reported as heuristics in output).
constexpr double kBoundaryCollapseTol = 0.02;
constexpr double kInteriorPositiveFloor = 0.1;

ConvergenceReport exhaust_run(const SystemSpec& sys, const PotentialSpec& psi,
                              const std::vector<std::uint64_t>& n_list,
                              const std::vector<double>& beta_probes,
                              const std::vector<double>& alpha_probes, double tol,
                              const DepthPolicy& pol, double t_cap = 64.0, int threads = 1);

}  // namespace mfs

#pragma once
// Partition functions and rigorous two-sided pressure enclosures. Self-similar
// systems go through exact weight series; Gauss systems enumerate words with
// exact Moebius endpoint bounds, per-depth symbol caps and analytic tails over
// the remaining symbols.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mfs/enclosure.hpp"
#include "mfs/potential.hpp"
#include "mfs/series_tail.hpp"
#include "mfs/system.hpp"

namespace mfs {

struct DepthPolicy {
    int max_depth = 6;
    std::uint64_t symbol_cap = 4096;
    double target_width = 1e-3;
};

struct PressureValue {
    enum class Kind { Finite, PlusInfinity, Indeterminate } kind = Kind::Indeterminate;
    Enclosure enc{0.0, 0.0};  // brackets the pressure when Finite
    double lower = 0.0;       // certified lower bound when Indeterminate

    static PressureValue finite(Enclosure e) { return {Kind::Finite, e, e.lo}; }
    static PressureValue plus_infinity(double lower_bound) {
        return {Kind::PlusInfinity, {0.0, 0.0}, lower_bound};
    }
    static PressureValue indeterminate(double lower_bound) {
        return {Kind::Indeterminate, {0.0, 0.0}, lower_bound};
    }
    bool finite_kind() const { return kind == Kind::Finite; }
};

enum class PressureSign { Negative, Positive, ZeroStraddling };

// Reusable evaluator: word tables and symbol laws depend only on the system,
// the potential law and the policy, not on (t, beta).
class PressureEvaluator {
public:
    PressureEvaluator(SystemSpec sys, PotentialSpec psi, DepthPolicy pol);
    ~PressureEvaluator();
    PressureEvaluator(PressureEvaluator&&) noexcept;

    // Enclosure of P(t*zeta + beta*psi); coefficients are pre-normalization.
    // eps_hint, when positive, overrides the policy's target width for the
    // symbol-series evaluations (bisections need tighter widths than reports).
    PressureValue eval(double t, double beta, double eps_hint = 0.0) const;

    const DepthPolicy& policy() const { return pol_; }
    const SystemSpec& system() const { return sys_; }

private:
    struct Impl;
    SystemSpec sys_;
    PotentialSpec psi_;
    DepthPolicy pol_;
    std::unique_ptr<Impl> impl_;
};

// Enclosure of (1/n) log Z_n over words with symbols <= cap; the upper
// endpoint completes the sum with the analytic tail over larger symbols.
Enclosure partition_bounds(const WeightedPotential& wp, int n, std::uint64_t cap);

// Closed-form series pressure for self-similar systems: P = log sum_e r_e^t e^{beta c_e}.
PressureValue exact_series_pressure(const WeightedPotential& wp, double eps);

PressureValue pressure(const WeightedPotential& wp, const DepthPolicy& pol);

PressureSign pressure_sign(const WeightedPotential& wp, const DepthPolicy& pol);
PressureSign sign_of(const PressureValue& pv);

// Largest symbol enumerated at the given depth under the global word budget.
std::uint64_t depth_symbol_cap(int depth, std::uint64_t symbol_cap);

}  // namespace mfs

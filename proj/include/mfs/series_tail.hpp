#pragma once
// Rigorous evaluation of single-symbol weight series sum_e exp(t*log r_e + beta*c_e):
// partial sums in directed log-space plus closed-form tail enclosures or
// divergence certificates derived from each family's ratio law.

#include <cstdint>
#include <optional>
#include <vector>

#include "mfs/enclosure.hpp"
#include "mfs/potential.hpp"

namespace mfs::series {

enum class RatioKind {
    Lueroth,     // r_e = 1/(e(e+1))
    GenLueroth,  // r_e = 4/(e(e+1)(e+2))
    PowerLaw,    // r_e = a e^{-p}
    LogPower,    // r_e = a/((e+2) log^2(e+2))
    GaussSup,    // 1/e^2   (upper derivative law of the Gauss maps)
    GaussInf,    // 1/(e+1)^2
    FiniteList,  // explicit ratios, no tail
};

struct TermLaw {
    RatioKind ratio = RatioKind::FiniteList;
    double a = 0.0, p = 0.0;          // family parameters
    std::vector<Enclosure> log_r_list;  // FiniteList

    Depth1Law psi = Depth1Law::Constant;
    double psi_c = 0.0;
    std::vector<double> psi_values;

    Enclosure log_r(std::uint64_t e) const;
    Enclosure psi_value(std::uint64_t e) const;
    // log of the weight w_e = r_e^t * exp(beta * c_e)
    Enclosure log_term(double t, double beta, std::uint64_t e) const;

    static TermLaw for_system(const SystemSpec& sys, const PotentialSpec& psi);
    static TermLaw gauss_bound(bool sup, const PotentialSpec& psi);
};

struct TailBound {
    enum class Kind { Empty, Enclosed, Divergent, Unknown } kind = Kind::Unknown;
    Enclosure sum{0.0, 0.0};       // bounds on sum_{e > N} w_e when Enclosed
    std::uint64_t grow_to = 0;     // for Unknown: partial sum must reach this N first
};

// Bound on the series tail beyond index N for an infinite alphabet.
TailBound tail_bound(const TermLaw& law, double t, double beta, std::uint64_t N);

struct SeriesOutcome {
    enum class Kind { Finite, PlusInfinity, Indeterminate } kind = Kind::Indeterminate;
    Enclosure log_value{0.0, 0.0};  // encloses log sum when Finite
    double lower_log = 0.0;         // certified lower bound on log sum (always valid)
    std::uint64_t terms = 0;
};

// log of sum_{e in alphabet} w_e with adaptive partial summation. alphabet_max
// empty means the full infinite index set.
SeriesOutcome series_log_sum(const TermLaw& law, std::optional<std::uint64_t> alphabet_max,
                             double t, double beta, double eps, std::uint64_t n_cap = 1u << 20);

// Enclosure of int_x^infty e^-v v^-l dv for x > 0 (used by log-power tails).
Enclosure exp_power_integral(double x, double l);

}  // namespace mfs::series

#pragma once
// Depth-1 (first-symbol) potentials, the geometric potential, and Birkhoff-sum
// enclosures of t*zeta + beta*psi over cylinders.

#include <optional>
#include <string>
#include <vector>

#include "mfs/enclosure.hpp"
#include "mfs/system.hpp"

namespace mfs {

enum class Depth1Law {
    NegIdentity,  // c_e = -e
    NegTwoLog,    // c_e = -2 log e
    Constant,     // c_e = c
    ExplicitList, // c_e = values[e-1]
};

struct PotentialSpec {
    bool geometric = false;  // psi = zeta; folded into the t-coefficient
    Depth1Law law = Depth1Law::Constant;
    double c = 0.0;
    std::vector<double> values;

    static PotentialSpec neg_identity() { return {false, Depth1Law::NegIdentity, 0.0, {}}; }
    static PotentialSpec neg_two_log() { return {false, Depth1Law::NegTwoLog, 0.0, {}}; }
    static PotentialSpec constant(double c) { return {false, Depth1Law::Constant, c, {}}; }
    static PotentialSpec explicit_list(std::vector<double> v) {
        return {false, Depth1Law::ExplicitList, 0.0, std::move(v)};
    }
    static PotentialSpec geometric_potential() { return {true, Depth1Law::Constant, 0.0, {}}; }

    // Per-symbol value c_e of a depth-1 law (throws if geometric).
    Enclosure value(Symbol e) const;
    std::string describe() const;
};

// t*zeta + beta*psi. A geometric psi contributes through the t-coefficient
// only: the pair is normalized to ((t + beta)*zeta, psi = 0).
struct WeightedPotential {
    double t = 0.0;
    double beta = 0.0;
    SystemSpec system;
    PotentialSpec psi;

    WeightedPotential() = default;
    WeightedPotential(double t_, double beta_, SystemSpec sys, PotentialSpec psi_);

    // Coefficients after folding a geometric psi into zeta.
    double zeta_coeff() const { return psi.geometric ? t + beta : t; }
    double psi_coeff() const { return psi.geometric ? 0.0 : beta; }
    const PotentialSpec& effective_psi() const {
        static const PotentialSpec zero = PotentialSpec::constant(0.0);
        return psi.geometric ? zero : psi;
    }
};

// [inf, sup] over the cylinder [w] of S_{|w|}(t*zeta + beta*psi).
Enclosure birkhoff_bounds(const WeightedPotential& wp, const Word& w);

// K with sup - inf of any cylinder Birkhoff sum <= log K, uniformly in depth.
double distortion_bound(const WeightedPotential& wp);

}  // namespace mfs

#include "mfs/potential.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mfs {

Enclosure PotentialSpec::value(Symbol e) const {
    if (geometric) throw std::domain_error("geometric potential has no per-symbol constant");
    switch (law) {
        case Depth1Law::NegIdentity:
            return Enclosure::point(-static_cast<double>(e));
        case Depth1Law::NegTwoLog:
            return scale(-2.0, log_point(static_cast<double>(e)));
        case Depth1Law::Constant:
            return Enclosure::point(c);
        case Depth1Law::ExplicitList:
            if (e < 1 || e > values.size()) throw std::invalid_argument("explicit potential: symbol out of range");
            return Enclosure::point(values[e - 1]);
    }
    throw std::logic_error("unreachable");
}

std::string PotentialSpec::describe() const {
    if (geometric) return "geometric";
    switch (law) {
        case Depth1Law::NegIdentity: return "negid";
        case Depth1Law::NegTwoLog: return "neg2log";
        case Depth1Law::Constant: {
            std::ostringstream os;
            os << "const:c=" << c;
            return os.str();
        }
        case Depth1Law::ExplicitList: {
            std::ostringstream os;
            os << "list:";
            for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
            return os.str();
        }
    }
    return "?";
}

WeightedPotential::WeightedPotential(double t_, double beta_, SystemSpec sys, PotentialSpec psi_)
    : t(t_), beta(beta_), system(std::move(sys)), psi(std::move(psi_)) {
    if (psi.law == Depth1Law::ExplicitList && !psi.geometric) {
        auto m = system.max_symbol();
        if (!m) throw std::invalid_argument("explicit potential list requires a finite alphabet");
        if (psi.values.size() < *m)
            throw std::invalid_argument("explicit potential list shorter than alphabet");
    }
}

Enclosure birkhoff_bounds(const WeightedPotential& wp, const Word& w) {
    wp.system.validate_word(w);
    const double tz = wp.zeta_coeff();
    const double bp = wp.psi_coeff();

    // zeta part: t * log of the per-word derivative range; psi part is exact.
    Enclosure zeta_part = scale(tz, log_enc(ratio_bounds(wp.system, w)));
    Enclosure psi_sum = Enclosure::point(0.0);
    if (bp != 0.0) {
        const PotentialSpec& eff = wp.effective_psi();
        for (Symbol e : w) psi_sum = psi_sum + eff.value(e);
    }
    return zeta_part + scale(bp, psi_sum);
}

double distortion_bound(const WeightedPotential& wp) {
    double k_phi = distortion_constant(wp.system);
    return std::pow(k_phi, std::abs(wp.zeta_coeff()));
}

}  // namespace mfs

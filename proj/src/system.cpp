#include "mfs/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mfs {

std::string family_name(Family f) {
    switch (f) {
        case Family::Gauss: return "gauss";
        case Family::Lueroth: return "lueroth";
        case Family::GeneralizedLueroth: return "glueroth";
        case Family::PowerLaw: return "powerlaw";
        case Family::LogPower: return "logpower";
        case Family::FiniteSelfSimilar: return "finite";
    }
    return "?";
}

SystemSpec SystemSpec::gauss() {
    SystemSpec s;
    s.family = Family::Gauss;
    return s;
}

SystemSpec SystemSpec::lueroth() {
    SystemSpec s;
    s.family = Family::Lueroth;
    return s;
}

SystemSpec SystemSpec::generalized_lueroth() {
    SystemSpec s;
    s.family = Family::GeneralizedLueroth;
    return s;
}

SystemSpec SystemSpec::power_law(double a, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("power_law: requires p > 1");
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("power_law: requires 0 < a < 1 so r_1 < 1");
    SystemSpec s;
    s.family = Family::PowerLaw;
    s.a = a;
    s.p = p;
    return s;
}

SystemSpec SystemSpec::log_power(double a) {
    // r_1 = a / (3 log^2 3) must stay below 1
    const double r1_denom = 3.0 * std::log(3.0) * std::log(3.0);
    if (!(a > 0.0 && a < r1_denom)) throw std::invalid_argument("log_power: a out of range");
    SystemSpec s;
    s.family = Family::LogPower;
    s.a = a;
    return s;
}

SystemSpec SystemSpec::finite_self_similar(std::vector<double> ratios,
                                           std::optional<std::vector<double>> offsets) {
    if (ratios.size() < 2) throw std::invalid_argument("finite_self_similar: need at least 2 maps");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("finite_self_similar: ratio outside (0,1)");
    if (offsets) {
        if (offsets->size() != ratios.size())
            throw std::invalid_argument("finite_self_similar: offsets/ratios length mismatch");
        std::vector<std::pair<double, double>> iv;
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            double o = (*offsets)[i];
            if (!(o >= 0.0 && o + ratios[i] <= 1.0 + 1e-12))
                throw std::invalid_argument("finite_self_similar: image escapes [0,1]");
            iv.emplace_back(o, o + ratios[i]);
        }
        std::sort(iv.begin(), iv.end());
        for (std::size_t i = 1; i < iv.size(); ++i)
            if (iv[i].first < iv[i - 1].second - 1e-12)
                throw std::invalid_argument("finite_self_similar: images have overlapping interiors");
    }
    SystemSpec s;
    s.family = Family::FiniteSelfSimilar;
    s.ratios = std::move(ratios);
    s.offsets = std::move(offsets);
    return s;
}

std::optional<std::uint64_t> SystemSpec::max_symbol() const {
    if (family == Family::FiniteSelfSimilar) {
        std::uint64_t n = ratios.size();
        if (alphabet.truncation) n = std::min(n, *alphabet.truncation);
        return n;
    }
    return alphabet.truncation;
}

bool SystemSpec::contains_symbol(Symbol e) const {
    if (e < 1) return false;
    auto m = max_symbol();
    return !m || e <= *m;
}

void SystemSpec::validate_word(const Word& w) const {
    if (w.empty()) throw std::invalid_argument("word must be nonempty");
    for (Symbol e : w)
        if (!contains_symbol(e)) throw std::invalid_argument("word symbol outside alphabet");
}

Enclosure SystemSpec::ratio(Symbol e) const {
    if (!contains_symbol(e)) throw std::invalid_argument("symbol outside alphabet");
    const double ed = static_cast<double>(e);
    switch (family) {
        case Family::Lueroth: {
            // 1/(e(e+1)); exact in double up to e ~ 9.4e7
            Enclosure den = Enclosure::point(ed) * Enclosure::point(ed + 1.0);
            return Enclosure{step_down(1.0 / den.hi), step_up(1.0 / den.lo)};
        }
        case Family::GeneralizedLueroth: {
            Enclosure den = Enclosure::point(ed) * Enclosure::point(ed + 1.0) * Enclosure::point(ed + 2.0);
            return Enclosure{step_down(4.0 / den.hi), step_up(4.0 / den.lo)};
        }
        case Family::PowerLaw:
            return exp_enc(log_ratio(e));
        case Family::LogPower:
            return exp_enc(log_ratio(e));
        case Family::FiniteSelfSimilar:
            return Enclosure::point(ratios[e - 1]);
        case Family::Gauss:
            break;
    }
    throw std::domain_error("ratio: Gauss maps have no constant ratio");
}

Enclosure SystemSpec::log_ratio(Symbol e) const {
    if (!contains_symbol(e)) throw std::invalid_argument("symbol outside alphabet");
    const double ed = static_cast<double>(e);
    switch (family) {
        case Family::Lueroth:
            return -(log_point(ed) + log_point(ed + 1.0));
        case Family::GeneralizedLueroth:
            return log_point(4.0) - (log_point(ed) + log_point(ed + 1.0) + log_point(ed + 2.0));
        case Family::PowerLaw:
            return log_point(a) - scale(p, log_point(ed));
        case Family::LogPower:
            // log a - log(e+2) - 2 log log(e+2)
            return log_point(a) - log_point(ed + 2.0) - scale(2.0, log_enc(log_point(ed + 2.0)));
        case Family::FiniteSelfSimilar:
            return log_point(ratios[e - 1]);
        case Family::Gauss:
            break;
    }
    throw std::domain_error("log_ratio: Gauss maps have no constant ratio");
}

std::optional<Enclosure> SystemSpec::offset(Symbol e) const {
    if (!contains_symbol(e)) throw std::invalid_argument("symbol outside alphabet");
    const double ed = static_cast<double>(e);
    switch (family) {
        case Family::Lueroth: {
            double den = ed + 1.0;
            return Enclosure{step_down(1.0 / den), step_up(1.0 / den)};
        }
        case Family::GeneralizedLueroth: {
            Enclosure den = Enclosure::point(ed + 1.0) * Enclosure::point(ed + 2.0);
            return Enclosure{step_down(2.0 / den.hi), step_up(2.0 / den.lo)};
        }
        case Family::FiniteSelfSimilar:
            if (offsets) return Enclosure::point((*offsets)[e - 1]);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

Enclosure SystemSpec::sup_deriv(Symbol e) const {
    if (family == Family::Gauss) {
        // sup of 1/(x+e)^2 at x = 0
        const double ed = static_cast<double>(e);
        return Enclosure{step_down(1.0 / (ed * ed)), step_up(1.0 / (ed * ed))};
    }
    return ratio(e);
}

Enclosure SystemSpec::inf_deriv(Symbol e) const {
    if (family == Family::Gauss) {
        const double d1 = static_cast<double>(e) + 1.0;
        return Enclosure{step_down(1.0 / (d1 * d1)), step_up(1.0 / (d1 * d1))};
    }
    return ratio(e);
}

std::string SystemSpec::describe() const {
    std::ostringstream os;
    os << family_name(family);
    if (family == Family::PowerLaw) os << ":a=" << a << ",p=" << p;
    if (family == Family::LogPower) os << ":a=" << a;
    if (family == Family::FiniteSelfSimilar) {
        os << ":ratios=";
        for (std::size_t i = 0; i < ratios.size(); ++i) os << (i ? "," : "") << ratios[i];
        if (offsets) {
            os << ":offsets=";
            for (std::size_t i = 0; i < offsets->size(); ++i) os << (i ? "," : "") << (*offsets)[i];
        }
    }
    if (alphabet.truncation) os << ":trunc=" << *alphabet.truncation;
    return os.str();
}

bool SystemSpec::same_maps(const SystemSpec& other) const {
    if (family != other.family) return false;
    switch (family) {
        case Family::PowerLaw: return a == other.a && p == other.p;
        case Family::LogPower: return a == other.a;
        case Family::FiniteSelfSimilar: return ratios == other.ratios && offsets == other.offsets;
        default: return true;
    }
}

Enclosure to_enclosure(const BigInt& v) {
    double d = v.convert_to<double>();
    return Enclosure{step_down(d, 2), step_up(d, 2)};
}

Enclosure MoebiusMatrix::abs_deriv_over(const Enclosure& x) const {
    // c x + d with c, d >= 0 here; derivative magnitude is 1/(cx+d)^2
    Enclosure ce = to_enclosure(c), de = to_enclosure(d);
    Enclosure den = ce * x + de;
    if (!(den.lo > 0.0)) throw std::domain_error("abs_deriv_over: denominator not positive");
    Enclosure den2 = den * den;
    return Enclosure{step_down(1.0 / den2.hi), step_up(1.0 / den2.lo)};
}

Enclosure MoebiusMatrix::image_of(const Enclosure& x) const {
    Enclosure ae = to_enclosure(a), be = to_enclosure(b), ce = to_enclosure(c), de = to_enclosure(d);
    auto eval = [&](double t) {
        Enclosure te = Enclosure::point(t);
        Enclosure num = ae * te + be;
        Enclosure den = ce * te + de;
        if (!(den.lo > 0.0)) throw std::domain_error("image_of: denominator not positive");
        return Enclosure{step_down(num.lo / den.hi), step_up(num.hi / den.lo)};
    };
    Enclosure at_lo = eval(x.lo), at_hi = eval(x.hi);
    return Enclosure{std::min(at_lo.lo, at_hi.lo), std::max(at_lo.hi, at_hi.hi)};
}

MoebiusMatrix gauss_word_matrix(const Word& w) {
    MoebiusMatrix m = MoebiusMatrix::identity();
    for (Symbol e : w) m = m * MoebiusMatrix::gauss_symbol(e);
    return m;
}

SystemSpec truncate(const SystemSpec& sys, std::uint64_t n) {
    std::uint64_t effective = n;
    if (sys.alphabet.truncation) effective = std::min(effective, *sys.alphabet.truncation);
    if (sys.family == Family::FiniteSelfSimilar)
        effective = std::min<std::uint64_t>(effective, sys.ratios.size());
    if (effective < 2) throw std::invalid_argument("truncate: fewer than 2 symbols would remain");
    SystemSpec out = sys;
    out.alphabet = Alphabet::truncated(effective);
    return out;
}

Enclosure ratio_bounds(const SystemSpec& sys, const Word& w) {
    sys.validate_word(w);
    if (sys.family == Family::Gauss) {
        MoebiusMatrix m = gauss_word_matrix(w);
        return m.abs_deriv_over(Enclosure::of(0.0, 1.0));
    }
    Enclosure prod = Enclosure::point(1.0);
    for (Symbol e : w) prod = prod * sys.ratio(e);
    return prod;
}

SupContraction s_phi(const SystemSpec& sys) {
    if (sys.family == Family::Gauss) return {1.0, true};
    if (sys.family == Family::FiniteSelfSimilar) {
        auto m = *sys.max_symbol();
        double best = 0.0;
        for (std::uint64_t e = 1; e <= m; ++e) best = std::max(best, sys.ratios[e - 1]);
        return {best, false};
    }
    // remaining laws are strictly decreasing in e, so the sup sits at e = 1
    return {sys.ratio(1).hi, false};
}

Enclosure cylinder_interval(const SystemSpec& sys, const Word& w) {
    sys.validate_word(w);
    if (sys.family == Family::Gauss) {
        MoebiusMatrix m = gauss_word_matrix(w);
        return m.image_of(Enclosure::of(0.0, 1.0));
    }
    Enclosure img = Enclosure::of(0.0, 1.0);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        auto off = sys.offset(*it);
        if (!off) throw std::domain_error("cylinder_interval: family provides no offsets");
        img = sys.ratio(*it) * img + *off;
    }
    return img;
}

double distortion_constant(const SystemSpec& sys) {
    // Gauss: sup over words of sup/inf equals ((e+1)/e)^2 at the one-letter
    // word e = 1; longer words only flatten the ratio.
    return sys.family == Family::Gauss ? 4.0 : 1.0;
}

Enclosure limit_set_hull(const SystemSpec& sys) {
    if (sys.family != Family::Gauss || sys.alphabet.is_full()) return Enclosure::of(0.0, 1.0);
    // extremal points of the truncated continued-fraction set:
    // M = [0; 1, n, 1, n, ...] solves M^2 + n M - n = 0, m = 1/(n + M)
    const double n = static_cast<double>(*sys.alphabet.truncation);
    Enclosure ne = Enclosure::point(n);
    Enclosure disc = sqrt_enc(ne * ne + scale(4.0, ne));
    Enclosure M = scale(0.5, disc - n);
    Enclosure m_den = ne + M;
    Enclosure m{step_down(1.0 / m_den.hi), step_up(1.0 / m_den.lo)};
    return Enclosure::of(std::max(0.0, m.lo), std::min(1.0, M.hi));
}

}  // namespace mfs

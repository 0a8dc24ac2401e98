#include "mfs/series_tail.hpp"

#include <cmath>
#include <stdexcept>

namespace mfs::series {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^a + T) for an additive tail interval T >= 0, directed per endpoint.
double log_add_lo(double log_a, double tail_lo) {
    if (tail_lo <= 0.0) return log_a;
    if (log_a == -kInf) return log_down(tail_lo);
    double lt = log_down(tail_lo);
    double m = std::max(log_a, lt);
    double s = step_down(exp_down(log_a - m) + exp_down(lt - m));
    return step_down(m + log_down(s));
}

double log_add_hi(double log_a, double tail_hi) {
    if (tail_hi <= 0.0) return log_a;
    if (log_a == -kInf) return log_up(tail_hi);
    double lt = log_up(tail_hi);
    double m = std::max(log_a, lt);
    double s = step_up(exp_up(log_a - m) + exp_up(lt - m));
    return step_up(m + log_up(s));
}

Enclosure sorted_pair(const Enclosure& x, const Enclosure& y) {
    return Enclosure{std::min(x.lo, y.lo), std::max(x.hi, y.hi)};
}

// Sensitivity of log r_e to e -> e+1 is at most kappa/e for every family.
double ratio_log_lipschitz(RatioKind k, double p) {
    switch (k) {
        case RatioKind::Lueroth: return 2.0;
        case RatioKind::GenLueroth: return 3.0;
        case RatioKind::PowerLaw: return p;
        case RatioKind::LogPower: return 3.0;  // 1/(e+2) + 2/((e+2) log(e+2)) <= 3/e
        case RatioKind::GaussSup: return 2.0;
        case RatioKind::GaussInf: return 2.0;
        case RatioKind::FiniteList: return 0.0;
    }
    return 0.0;
}

struct PolyModel {
    Enclosure s;        // power exponent (in m = e + shift)
    double l = 0.0;     // log exponent (nonzero only for LogPower)
    Enclosure C;        // constant interval, w_e in C * m^-s * log^-l m for e > N
    int shift = 0;      // m = e + shift
};

// Constant bounds only need to hold beyond the partial sum, so they tighten to
// 1 + O(1/N): e(e+1) = e^2 (1 + 1/e) with 1/e <= 1/(N+1), and so on.
PolyModel poly_model(const TermLaw& law, double t, double beta, std::uint64_t N) {
    PolyModel m;
    Enclosure one = Enclosure::point(1.0);
    const double inv = 1.0 / static_cast<double>(N + 1);
    auto corr = [&](double mult) {  // (1 + mult/e)^{-t} range for e > N
        return sorted_pair(one, pow_enc(Enclosure::point(1.0) + Enclosure::point(mult * inv), -t));
    };
    switch (law.ratio) {
        case RatioKind::Lueroth:
            m.s = Enclosure::point(2.0 * t);
            m.C = corr(1.0);
            break;
        case RatioKind::GenLueroth: {
            m.s = Enclosure::point(3.0 * t);
            Enclosure fac = (Enclosure::point(1.0) + Enclosure::point(inv)) *
                            (Enclosure::point(1.0) + Enclosure::point(2.0 * inv));
            m.C = pow_enc(Enclosure::point(4.0), t) * sorted_pair(one, pow_enc(fac, -t));
            break;
        }
        case RatioKind::PowerLaw:
            m.s = scale(t, Enclosure::point(law.p));
            m.C = pow_enc(Enclosure::point(law.a), t);
            break;
        case RatioKind::LogPower:
            m.s = Enclosure::point(t);
            m.l = 2.0 * t;
            m.C = pow_enc(Enclosure::point(law.a), t);
            m.shift = 2;
            break;
        case RatioKind::GaussSup:
            m.s = Enclosure::point(2.0 * t);
            m.C = one;
            break;
        case RatioKind::GaussInf:
            m.s = Enclosure::point(2.0 * t);
            m.C = corr(3.0);  // (e+1)^2 = e^2 (1+1/e)^2 and (1+1/e)^2 <= 1 + 3/e for e >= 1
            break;
        case RatioKind::FiniteList:
            throw std::logic_error("poly_model: finite list has no tail model");
    }
    switch (law.psi) {
        case Depth1Law::NegTwoLog:
            m.s = m.s + Enclosure::point(2.0 * beta);
            if (m.shift == 2) {
                // e^{-2beta} against m^{-2beta}: e = m(1 - 2/m), 2/m <= 2/(N+3)
                Enclosure fac = Enclosure::point(1.0) - Enclosure::point(2.0 / (static_cast<double>(N) + 3.0));
                m.C = m.C * sorted_pair(one, pow_enc(fac, -2.0 * beta));
            }
            break;
        case Depth1Law::Constant:
            m.C = m.C * exp_enc(Enclosure::point(beta * law.psi_c));
            break;
        case Depth1Law::NegIdentity:
            // beta == 0 only; the geometric branch owns beta != 0
            break;
        case Depth1Law::ExplicitList:
            throw std::logic_error("poly_model: explicit psi list needs a finite alphabet");
    }
    return m;
}

// int_M^infty m^-s dm for s > 1 (pure-power branch)
Enclosure power_integral(double M, const Enclosure& s) {
    Enclosure sm1 = s - Enclosure::point(1.0);
    Enclosure val = pow_enc(Enclosure::point(M), -(sm1.hi)) ;
    Enclosure val_hi = pow_enc(Enclosure::point(M), -(sm1.lo));
    Enclosure num = sorted_pair(val, val_hi);
    return Enclosure{step_down(num.lo / sm1.hi), step_up(num.hi / sm1.lo)};
}

// int_M^infty m^-s log^-l m dm = (s-1)^{l-1} * J((s-1) log M, l), s > 1
Enclosure poly_log_integral(double M, const Enclosure& s, double l) {
    if (l == 0.0) return power_integral(M, s);
    Enclosure sm1 = s - Enclosure::point(1.0);
    Enclosure logM = log_point(M);
    Enclosure x = sm1 * logM;
    Enclosure j_lo = exp_power_integral(x.lo, l);
    Enclosure j_hi = exp_power_integral(x.hi, l);
    Enclosure J = sorted_pair(j_lo, j_hi);  // J is monotone in x; take the hull
    Enclosure pref = pow_enc(sm1, l - 1.0);
    return pref * J;
}

// h(m) = m^-s log^-l m must be nonincreasing from m0 on: s log m + l >= 0.
bool certifies_decreasing(double m0, const Enclosure& s, double l) {
    if (!(m0 >= 3.0)) return false;
    double v = s.lo * log_down(m0) + l;
    return v >= 0.0;
}

}  // namespace

Enclosure exp_power_integral(double x, double l) {
    if (!(x > 0.0)) throw std::domain_error("exp_power_integral: x must be positive");
    const double crude_from = std::max(3.0, 2.0 * (std::abs(l) + 1.0));
    if (x >= crude_from) {
        // integration by parts, one step
        Enclosure xe = Enclosure::point(x);
        Enclosure lead = exp_enc(-xe) * pow_enc(xe, -l);
        if (l >= 0.0) {
            double frac = std::max(0.0, 1.0 - l / x);
            return Enclosure{step_down(lead.lo * frac), lead.hi};
        }
        return Enclosure{lead.lo, step_up(2.0 * lead.hi)};
    }
    // Taylor sandwich on [x, C]: truncations of e^-v alternate around it for v >= 0
    const double C = std::max(crude_from, 2.0 * x);
    const int K = 48;  // T_47 <= e^-v <= T_48
    Enclosure lo_sum = Enclosure::point(0.0), hi_sum = Enclosure::point(0.0);
    Enclosure inv_fact = Enclosure::point(1.0);
    Enclosure xC = Enclosure::of(0.0, 0.0);
    for (int k = 0; k <= K + 1; ++k) {
        if (k > 0) inv_fact = Enclosure{step_down(inv_fact.lo / k), step_up(inv_fact.hi / k)};
        double ex = static_cast<double>(k) - l;
        Enclosure piece;
        if (std::abs(ex + 1.0) < 1e-12) {
            piece = log_point(C) - log_point(x);
        } else {
            Enclosure cp = pow_enc(Enclosure::point(C), ex + 1.0);
            Enclosure xp = pow_enc(Enclosure::point(x), ex + 1.0);
            piece = scale(1.0 / (ex + 1.0), cp - xp);
        }
        Enclosure term = inv_fact * piece;
        if (k % 2 == 1) term = -term;
        if (k <= K) hi_sum = hi_sum + term;
        if (k <= K + 1) lo_sum = lo_sum + term;
        (void)xC;
    }
    // remainder of the integral beyond C (crude branch applies there)
    Enclosure rest = exp_power_integral(C, l);
    double lo = std::max(0.0, step_down(lo_sum.lo + rest.lo));
    double hi = step_up(hi_sum.hi + rest.hi);
    if (lo > hi) lo = hi;  // sandwich can cross by rounding on tiny values
    return Enclosure{lo, hi};
}

Enclosure TermLaw::log_r(std::uint64_t e) const {
    const double ed = static_cast<double>(e);
    switch (ratio) {
        case RatioKind::Lueroth:
            return -(log_point(ed) + log_point(ed + 1.0));
        case RatioKind::GenLueroth:
            return log_point(4.0) - (log_point(ed) + log_point(ed + 1.0) + log_point(ed + 2.0));
        case RatioKind::PowerLaw:
            return log_point(a) - scale(p, log_point(ed));
        case RatioKind::LogPower:
            return log_point(a) - log_point(ed + 2.0) - scale(2.0, log_enc(log_point(ed + 2.0)));
        case RatioKind::GaussSup:
            return scale(-2.0, log_point(ed));
        case RatioKind::GaussInf:
            return scale(-2.0, log_point(ed + 1.0));
        case RatioKind::FiniteList:
            if (e < 1 || e > log_r_list.size()) throw std::invalid_argument("log_r: symbol out of range");
            return log_r_list[e - 1];
    }
    throw std::logic_error("unreachable");
}

Enclosure TermLaw::psi_value(std::uint64_t e) const {
    const double ed = static_cast<double>(e);
    switch (psi) {
        case Depth1Law::NegIdentity: return Enclosure::point(-ed);
        case Depth1Law::NegTwoLog: return scale(-2.0, log_point(ed));
        case Depth1Law::Constant: return Enclosure::point(psi_c);
        case Depth1Law::ExplicitList:
            if (e < 1 || e > psi_values.size()) throw std::invalid_argument("psi_value: symbol out of range");
            return Enclosure::point(psi_values[e - 1]);
    }
    throw std::logic_error("unreachable");
}

Enclosure TermLaw::log_term(double t, double beta, std::uint64_t e) const {
    Enclosure v = scale(t, log_r(e));
    if (beta != 0.0) v = v + scale(beta, psi_value(e));
    return v;
}

TermLaw TermLaw::for_system(const SystemSpec& sys, const PotentialSpec& psi) {
    TermLaw law;
    switch (sys.family) {
        case Family::Lueroth: law.ratio = RatioKind::Lueroth; break;
        case Family::GeneralizedLueroth: law.ratio = RatioKind::GenLueroth; break;
        case Family::PowerLaw: law.ratio = RatioKind::PowerLaw; law.a = sys.a; law.p = sys.p; break;
        case Family::LogPower: law.ratio = RatioKind::LogPower; law.a = sys.a; break;
        case Family::FiniteSelfSimilar: {
            law.ratio = RatioKind::FiniteList;
            auto m = *sys.max_symbol();
            for (std::uint64_t e = 1; e <= m; ++e) law.log_r_list.push_back(sys.log_ratio(e));
            break;
        }
        case Family::Gauss:
            throw std::invalid_argument("TermLaw::for_system: Gauss needs gauss_bound laws");
    }
    law.psi = psi.law;
    law.psi_c = psi.c;
    law.psi_values = psi.values;
    return law;
}

TermLaw TermLaw::gauss_bound(bool sup, const PotentialSpec& psi) {
    TermLaw law;
    law.ratio = sup ? RatioKind::GaussSup : RatioKind::GaussInf;
    law.psi = psi.law;
    law.psi_c = psi.c;
    law.psi_values = psi.values;
    return law;
}

TailBound tail_bound(const TermLaw& law, double t, double beta, std::uint64_t N) {
    TailBound tb;
    if (law.ratio == RatioKind::FiniteList) {
        tb.kind = TailBound::Kind::Empty;
        return tb;
    }
    if (law.psi == Depth1Law::NegIdentity && beta != 0.0) {
        // exponential factor e^{-beta e} dominates the polynomial ratio part
        const double kappa = ratio_log_lipschitz(law.ratio, law.p);
        if (beta < 0.0) {
            tb.kind = TailBound::Kind::Divergent;
            return tb;
        }
        const double e0 = 2.0 * std::abs(t) * kappa / beta;
        if (static_cast<double>(N) < e0) {
            tb.kind = TailBound::Kind::Unknown;
            tb.grow_to = static_cast<std::uint64_t>(std::ceil(e0)) + 1;
            return tb;
        }
        // log(w_{e+1}/w_e) <= |t| kappa/e - beta <= -beta/2 for e > N
        const double q = exp_up(-beta / 2.0);
        Enclosure w1 = exp_enc(law.log_term(t, beta, N + 1));
        tb.kind = TailBound::Kind::Enclosed;
        tb.sum = Enclosure{w1.lo, step_up(w1.hi / step_down(1.0 - q))};
        return tb;
    }

    PolyModel m = poly_model(law, t, beta, N);
    const double M0 = static_cast<double>(N + 1) + m.shift;  // first tail index in m-coords

    if (m.l == 0.0) {
        if (m.s.lo > 1.0) {
            Enclosure upper = power_integral(M0 - 1.0, m.s);
            Enclosure lower = power_integral(M0, m.s);
            tb.kind = TailBound::Kind::Enclosed;
            tb.sum = m.C * Enclosure{lower.lo, upper.hi};
            return tb;
        }
        if (m.s.hi <= 1.0) {
            tb.kind = TailBound::Kind::Divergent;  // terms >= C_lo / m
            return tb;
        }
        tb.kind = TailBound::Kind::Unknown;  // s straddles 1 after rounding
        return tb;
    }

    // log-power model: convergence iff s > 1, or s == 1 with l > 1
    if (m.s.hi <= 1.0) {
        if (m.s.hi < 1.0 || m.l <= 1.0) {
            tb.kind = TailBound::Kind::Divergent;
            return tb;
        }
        // s == 1, l > 1: integral has the closed form log^{1-l}(M)/(l-1)
        if (m.s.lo == m.s.hi && m.s.lo == 1.0 && certifies_decreasing(M0 - 1.0, m.s, m.l)) {
            Enclosure up = pow_enc(log_point(M0 - 1.0), 1.0 - m.l);
            Enclosure lo = pow_enc(log_point(M0), 1.0 - m.l);
            tb.kind = TailBound::Kind::Enclosed;
            tb.sum = m.C * scale(1.0 / (m.l - 1.0), Enclosure{lo.lo, up.hi});
            return tb;
        }
        tb.kind = TailBound::Kind::Unknown;
        return tb;
    }
    if (m.s.lo > 1.0) {
        if (!certifies_decreasing(M0 - 1.0, m.s, m.l)) {
            // need log m >= -l/s before the integrand decreases
            double need = std::exp(std::max(1.2, -m.l / m.s.lo)) + 2.0;
            tb.kind = TailBound::Kind::Unknown;
            tb.grow_to = static_cast<std::uint64_t>(need) + 2;
            return tb;
        }
        Enclosure upper = poly_log_integral(M0 - 1.0, m.s, m.l);
        Enclosure lower = poly_log_integral(M0, m.s, m.l);
        tb.kind = TailBound::Kind::Enclosed;
        tb.sum = m.C * Enclosure{std::max(0.0, lower.lo), upper.hi};
        return tb;
    }
    tb.kind = TailBound::Kind::Unknown;
    return tb;
}

SeriesOutcome series_log_sum(const TermLaw& law, std::optional<std::uint64_t> alphabet_max,
                             double t, double beta, double eps, std::uint64_t n_cap) {
    SeriesOutcome out;
    DirectedLogSum lo(-1), hi(+1);
    std::uint64_t limit = alphabet_max.value_or(n_cap);
    const bool infinite = !alphabet_max.has_value();
    std::uint64_t block = 256, e = 0;
    bool have_enclosed = false;
    Enclosure best{0.0, 0.0};

    while (e < limit) {
        std::uint64_t stop = std::min<std::uint64_t>(limit, e + block);
        for (std::uint64_t i = e + 1; i <= stop; ++i) {
            Enclosure lt = law.log_term(t, beta, i);
            lo.add_log(lt.lo);
            hi.add_log(lt.hi);
        }
        e = stop;
        block *= 2;
        if (!infinite && e >= limit) break;
        if (infinite) {
            TailBound tb = tail_bound(law, t, beta, e);
            if (tb.kind == TailBound::Kind::Divergent) {
                out.kind = SeriesOutcome::Kind::PlusInfinity;
                out.lower_log = lo.log_result();
                out.terms = e;
                return out;
            }
            if (tb.kind == TailBound::Kind::Enclosed) {
                Enclosure v{log_add_lo(lo.log_result(), tb.sum.lo), log_add_hi(hi.log_result(), tb.sum.hi)};
                best = v;
                have_enclosed = true;
                if (v.width() <= eps) break;
            }
            if (tb.kind == TailBound::Kind::Unknown && tb.grow_to > e && tb.grow_to <= n_cap)
                block = std::max(block, tb.grow_to - e);
        }
    }

    out.terms = e;
    out.lower_log = lo.log_result();
    if (!infinite) {
        out.kind = SeriesOutcome::Kind::Finite;
        out.log_value = Enclosure{lo.log_result(), hi.log_result()};
        return out;
    }
    if (have_enclosed) {
        out.kind = SeriesOutcome::Kind::Finite;
        out.log_value = best;
        return out;
    }
    out.kind = SeriesOutcome::Kind::Indeterminate;
    return out;
}

}  // namespace mfs::series

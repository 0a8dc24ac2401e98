#include "mfs/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kWordBudget = 1u << 18;  // words per enumeration depth

double log_add_hi(double log_a, double add) {
    if (add <= 0.0) return log_a;
    if (log_a == -kInf) return log_up(add);
    double lt = log_up(add);
    double m = std::max(log_a, lt);
    return step_up(m + log_up(step_up(exp_up(log_a - m) + exp_up(lt - m))));
}

// One depth level of enumerated words: exact cylinder endpoints of the
// zeta-part (L) and the psi-part (C).
struct DepthTable {
    int depth = 0;
    std::uint64_t cap = 0;
    bool complete = false;  // cap covers the whole alphabet
    std::vector<double> l_lo, l_hi, c_lo, c_hi;
};

struct SymbolData {
    std::vector<MoebiusMatrix> mats;      // Gauss only
    std::vector<Enclosure> log_ratio;     // self-similar only
    std::vector<Enclosure> psi_value;
};

void build_table(const SystemSpec& sys, const SymbolData& sd, const Enclosure& hull, DepthTable& tb) {
    const int d = tb.depth;
    const std::uint64_t cap = tb.cap;
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= cap;
    tb.l_lo.reserve(count);
    tb.l_hi.reserve(count);
    tb.c_lo.reserve(count);
    tb.c_hi.reserve(count);

    std::vector<std::uint64_t> word(d, 1);
    const bool gauss = sys.family == Family::Gauss;
    std::vector<MoebiusMatrix> mat_prefix;
    std::vector<Enclosure> log_prefix, psi_prefix;
    if (gauss) mat_prefix.assign(d + 1, MoebiusMatrix::identity());
    log_prefix.assign(d + 1, Enclosure::point(0.0));
    psi_prefix.assign(d + 1, Enclosure::point(0.0));

    auto refresh_from = [&](int pos) {
        for (int i = pos; i < d; ++i) {
            std::uint64_t e = word[i];
            if (gauss)
                mat_prefix[i + 1] = mat_prefix[i] * sd.mats[e - 1];
            else
                log_prefix[i + 1] = log_prefix[i] + sd.log_ratio[e - 1];
            psi_prefix[i + 1] = psi_prefix[i] + sd.psi_value[e - 1];
        }
    };
    refresh_from(0);

    while (true) {
        Enclosure L = gauss ? log_enc(mat_prefix[d].abs_deriv_over(hull)) : log_prefix[d];
        tb.l_lo.push_back(L.lo);
        tb.l_hi.push_back(L.hi);
        tb.c_lo.push_back(psi_prefix[d].lo);
        tb.c_hi.push_back(psi_prefix[d].hi);

        int pos = d - 1;
        while (pos >= 0 && word[pos] == cap) {
            word[pos] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++word[pos];
        refresh_from(pos);
    }
}

struct Candidate {
    double lower = -kInf;
    double upper = kInf;
};

}  // namespace

std::uint64_t depth_symbol_cap(int depth, std::uint64_t symbol_cap) {
    if (depth <= 1) return symbol_cap;
    std::uint64_t c = 1;
    // largest c with c^depth <= budget
    while (true) {
        long double pw = 1.0L;
        for (int i = 0; i < depth; ++i) pw *= static_cast<long double>(c + 1);
        if (pw > static_cast<long double>(kWordBudget)) break;
        ++c;
    }
    return std::min<std::uint64_t>(c, symbol_cap);
}

struct PressureEvaluator::Impl {
    bool self_similar = false;
    std::optional<std::uint64_t> alphabet_max;
    series::TermLaw series_law;          // self-similar weight law
    series::TermLaw gauss_sup, gauss_inf;  // Gauss derivative laws (sup/inf over [0,1])
    SymbolData symbols;
    Enclosure hull{0.0, 1.0};
    std::vector<DepthTable> tables;

    PressureValue eval(double t, double beta, const DepthPolicy& pol, double eps) const;
    Candidate table_bounds(const DepthTable& tb, double t, double beta,
                           const Enclosure* z1_sup_value) const;
};

PressureEvaluator::PressureEvaluator(SystemSpec sys, PotentialSpec psi, DepthPolicy pol)
    : sys_(std::move(sys)), psi_(std::move(psi)), pol_(pol), impl_(new Impl) {
    WeightedPotential norm(0.0, 0.0, sys_, psi_);  // validates psi/alphabet fit
    const PotentialSpec& eff = norm.effective_psi();
    impl_->self_similar = sys_.self_similar();
    impl_->alphabet_max = sys_.max_symbol();
    if (impl_->self_similar) {
        impl_->series_law = series::TermLaw::for_system(sys_, eff);
        return;
    }
    impl_->gauss_sup = series::TermLaw::gauss_bound(true, eff);
    impl_->gauss_inf = series::TermLaw::gauss_bound(false, eff);
    impl_->hull = limit_set_hull(sys_);

    // symbol caps per depth; beyond depth 6 only full-alphabet tables help
    std::uint64_t max_cap = 0;
    std::vector<std::pair<int, std::uint64_t>> depths;
    for (int d = 1; d <= pol_.max_depth; ++d) {
        std::uint64_t cap = depth_symbol_cap(d, pol_.symbol_cap);
        if (impl_->alphabet_max) cap = std::min(cap, *impl_->alphabet_max);
        if (cap < 2) break;
        bool complete = impl_->alphabet_max && cap >= *impl_->alphabet_max;
        if (d > 6 && !complete) continue;
        depths.emplace_back(d, cap);
        max_cap = std::max(max_cap, cap);
    }

    for (std::uint64_t e = 1; e <= max_cap; ++e) {
        impl_->symbols.mats.push_back(MoebiusMatrix::gauss_symbol(static_cast<Symbol>(e)));
        impl_->symbols.psi_value.push_back(eff.value(static_cast<Symbol>(e)));
    }
    for (auto [d, cap] : depths) {
        DepthTable tb;
        tb.depth = d;
        tb.cap = cap;
        tb.complete = impl_->alphabet_max && cap >= *impl_->alphabet_max;
        build_table(sys_, impl_->symbols, impl_->hull, tb);
        impl_->tables.push_back(std::move(tb));
    }
}

PressureEvaluator::~PressureEvaluator() = default;
PressureEvaluator::PressureEvaluator(PressureEvaluator&&) noexcept = default;

Candidate PressureEvaluator::Impl::table_bounds(const DepthTable& tb, double t, double beta,
                                                const Enclosure* z1_sup_value) const {
    DirectedLogSum sum_lo(-1), sum_hi(+1);
    const std::size_t n = tb.l_lo.size();
    for (std::size_t i = 0; i < n; ++i) {
        double zl = t >= 0.0 ? t * tb.l_lo[i] : t * tb.l_hi[i];
        double zh = t >= 0.0 ? t * tb.l_hi[i] : t * tb.l_lo[i];
        double bl = beta >= 0.0 ? beta * tb.c_lo[i] : beta * tb.c_hi[i];
        double bh = beta >= 0.0 ? beta * tb.c_hi[i] : beta * tb.c_lo[i];
        sum_lo.add_log(step_down(step_down(zl) + step_down(bl)));
        sum_hi.add_log(step_up(step_up(zh) + step_up(bh)));
    }
    Candidate c;
    const double d = tb.depth;
    c.lower = step_down(sum_lo.log_result() / d);

    double log_z_hi = sum_hi.log_result();
    if (!tb.complete) {
        if (!z1_sup_value) return c;  // no finite completion available
        // words with at least one symbol beyond the cap: U^d - (partial over cap)^d
        DirectedLogSum part_lo(-1);
        const series::TermLaw& lead = t >= 0.0 ? gauss_sup : gauss_inf;
        for (std::uint64_t e = 1; e <= tb.cap; ++e) part_lo.add_log(lead.log_term(t, beta, e).lo);
        double U_hi = z1_sup_value->hi;           // log-scale upper of the full symbol sum
        double P_lo = part_lo.log_result();       // log-scale lower of the capped sum
        double pow_hi = exp_up(step_up(U_hi * d));
        double pow_lo = exp_down(step_down(P_lo * d));
        double tail_words = std::max(0.0, step_up(pow_hi - pow_lo));
        if (std::isinf(pow_hi)) return c;  // overflow: no usable upper at this depth
        log_z_hi = log_add_hi(log_z_hi, tail_words);
    }
    c.upper = step_up(log_z_hi / d);
    return c;
}

PressureValue PressureEvaluator::Impl::eval(double t, double beta, const DepthPolicy& pol, double eps) const {
    (void)pol;
    if (self_similar) {
        auto out = series::series_log_sum(series_law, alphabet_max, t, beta, eps);
        switch (out.kind) {
            case series::SeriesOutcome::Kind::Finite:
                return PressureValue::finite(out.log_value);
            case series::SeriesOutcome::Kind::PlusInfinity:
                return PressureValue::plus_infinity(out.lower_log);
            case series::SeriesOutcome::Kind::Indeterminate:
                return PressureValue::indeterminate(out.lower_log);
        }
    }

    // Gauss path. Depth-1 symbol series: sup side completes enumeration tails,
    // inf side certifies +infinity (inf-weighted sums are supermultiplicative).
    const series::TermLaw& lead_sup = t >= 0.0 ? gauss_sup : gauss_inf;
    const series::TermLaw& lead_inf = t >= 0.0 ? gauss_inf : gauss_sup;

    std::optional<Enclosure> z1_sup;
    double lower = -kInf, upper = kInf;
    auto sup_out = series::series_log_sum(lead_sup, alphabet_max, t, beta, eps);
    auto inf_out = series::series_log_sum(lead_inf, alphabet_max, t, beta, eps);
    if (inf_out.kind == series::SeriesOutcome::Kind::PlusInfinity)
        return PressureValue::plus_infinity(inf_out.lower_log);
    if (inf_out.kind == series::SeriesOutcome::Kind::Finite)
        lower = std::max(lower, inf_out.log_value.lo);
    else
        lower = std::max(lower, inf_out.lower_log);
    if (sup_out.kind == series::SeriesOutcome::Kind::Finite) {
        z1_sup = sup_out.log_value;
        upper = std::min(upper, sup_out.log_value.hi);
    }

    for (const auto& tb : tables) {
        Candidate c = table_bounds(tb, t, beta, z1_sup ? &*z1_sup : nullptr);
        lower = std::max(lower, c.lower);
        upper = std::min(upper, c.upper);
    }
    if (std::isinf(upper)) return PressureValue::indeterminate(lower);
    if (lower > upper) throw std::logic_error("pressure bounds crossed; bound bug");
    return PressureValue::finite(Enclosure::of(lower, upper));
}

PressureValue PressureEvaluator::eval(double t, double beta, double eps_hint) const {
    WeightedPotential wp(t, beta, sys_, psi_);
    double eps = eps_hint > 0.0 ? eps_hint : pol_.target_width;
    return impl_->eval(wp.zeta_coeff(), wp.psi_coeff(), pol_, eps);
}

Enclosure partition_bounds(const WeightedPotential& wp, int n, std::uint64_t cap) {
    if (n < 1) throw std::invalid_argument("partition_bounds: depth must be >= 1");
    const SystemSpec& sys = wp.system;
    std::uint64_t eff_cap = cap;
    if (auto m = sys.max_symbol()) eff_cap = std::min(eff_cap, *m);
    if (eff_cap < 1) throw std::invalid_argument("partition_bounds: empty capped alphabet");
    long double words = 1.0L;
    for (int i = 0; i < n; ++i) words *= static_cast<long double>(eff_cap);
    if (words > 8e6L) throw std::runtime_error("partition_bounds: enumeration budget exceeded");

    const double t = wp.zeta_coeff();
    const double beta = wp.psi_coeff();
    const PotentialSpec& eff = wp.effective_psi();

    SymbolData sd;
    for (std::uint64_t e = 1; e <= eff_cap; ++e) {
        if (sys.family == Family::Gauss)
            sd.mats.push_back(MoebiusMatrix::gauss_symbol(static_cast<Symbol>(e)));
        else
            sd.log_ratio.push_back(sys.log_ratio(static_cast<Symbol>(e)));
        sd.psi_value.push_back(eff.value(static_cast<Symbol>(e)));
    }
    DepthTable tb;
    tb.depth = n;
    tb.cap = eff_cap;
    tb.complete = sys.max_symbol() && eff_cap >= *sys.max_symbol();
    build_table(sys, sd, limit_set_hull(sys), tb);

    DirectedLogSum sum_lo(-1), sum_hi(+1);
    for (std::size_t i = 0; i < tb.l_lo.size(); ++i) {
        double zl = t >= 0.0 ? t * tb.l_lo[i] : t * tb.l_hi[i];
        double zh = t >= 0.0 ? t * tb.l_hi[i] : t * tb.l_lo[i];
        double bl = beta >= 0.0 ? beta * tb.c_lo[i] : beta * tb.c_hi[i];
        double bh = beta >= 0.0 ? beta * tb.c_hi[i] : beta * tb.c_lo[i];
        sum_lo.add_log(step_down(step_down(zl) + step_down(bl)));
        sum_hi.add_log(step_up(step_up(zh) + step_up(bh)));
    }
    double log_lo = sum_lo.log_result();
    double log_hi = sum_hi.log_result();

    if (!tb.complete) {
        series::TermLaw sup_law = sys.family == Family::Gauss
                                      ? series::TermLaw::gauss_bound(t >= 0.0, eff)
                                      : series::TermLaw::for_system(sys, eff);
        auto sup_out = series::series_log_sum(sup_law, sys.max_symbol(), t, beta, 1e-9);
        if (sup_out.kind == series::SeriesOutcome::Kind::PlusInfinity)
            throw std::runtime_error("partition_bounds: symbol tail diverges");
        if (sup_out.kind == series::SeriesOutcome::Kind::Indeterminate)
            throw std::runtime_error("partition_bounds: symbol tail could not be bounded");
        double pow_hi = exp_up(step_up(sup_out.log_value.hi * n));
        DirectedLogSum part_lo(-1);
        for (std::uint64_t e = 1; e <= eff_cap; ++e) part_lo.add_log(sup_law.log_term(t, beta, e).lo);
        double pow_lo = exp_down(step_down(part_lo.log_result() * n));
        double tail_words = std::max(0.0, step_up(pow_hi - pow_lo));
        log_hi = log_add_hi(log_hi, tail_words);
    }
    return Enclosure::of(step_down(log_lo / n), step_up(log_hi / n));
}

PressureValue exact_series_pressure(const WeightedPotential& wp, double eps) {
    if (!wp.system.self_similar())
        throw std::invalid_argument("exact_series_pressure: system is not self-similar");
    if (!(eps > 0.0)) throw std::invalid_argument("exact_series_pressure: eps must be positive");
    auto law = series::TermLaw::for_system(wp.system, wp.effective_psi());
    auto out = series::series_log_sum(law, wp.system.max_symbol(), wp.zeta_coeff(), wp.psi_coeff(), eps);
    switch (out.kind) {
        case series::SeriesOutcome::Kind::Finite:
            return PressureValue::finite(out.log_value);
        case series::SeriesOutcome::Kind::PlusInfinity:
            return PressureValue::plus_infinity(out.lower_log);
        case series::SeriesOutcome::Kind::Indeterminate:
            return PressureValue::indeterminate(out.lower_log);
    }
    throw std::logic_error("unreachable");
}

PressureValue pressure(const WeightedPotential& wp, const DepthPolicy& pol) {
    if (wp.system.self_similar()) return exact_series_pressure(wp, pol.target_width);
    PressureEvaluator ev(wp.system, wp.psi, pol);
    return ev.eval(wp.t, wp.beta);
}

PressureSign sign_of(const PressureValue& pv) {
    switch (pv.kind) {
        case PressureValue::Kind::PlusInfinity:
            return PressureSign::Positive;
        case PressureValue::Kind::Finite:
            if (pv.enc.hi < 0.0) return PressureSign::Negative;
            if (pv.enc.lo > 0.0) return PressureSign::Positive;
            return PressureSign::ZeroStraddling;
        case PressureValue::Kind::Indeterminate:
            return pv.lower > 0.0 ? PressureSign::Positive : PressureSign::ZeroStraddling;
    }
    return PressureSign::ZeroStraddling;
}

PressureSign pressure_sign(const WeightedPotential& wp, const DepthPolicy& pol) {
    return sign_of(pressure(wp, pol));
}

}  // namespace mfs

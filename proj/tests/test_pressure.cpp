#include "doctest.h"

#include <cmath>
#include <random>

#include "mfs/pressure.hpp"

using namespace mfs;

namespace {

// quadrature oracle for int_x^inf e^-v v^-l dv, independent of the enclosure path
double quad_exp_power(double x, double l) {
    double upper = x + 60.0;
    const int n = 400000;
    double h = (upper - x) / n;
    double acc = 0.0;
    auto f = [&](double v) { return std::exp(-v) * std::pow(v, -l); };
    for (int i = 0; i < n; ++i) {
        double a = x + i * h;
        acc += (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h)) * h / 6.0;
    }
    return acc;
}

SystemSpec random_finite_system(std::mt19937& rng) {
    std::uniform_int_distribution<int> count(2, 6);
    std::uniform_real_distribution<double> ratio(0.05, 0.45);
    int m = count(rng);
    std::vector<double> ratios;
    for (int i = 0; i < m; ++i) ratios.push_back(ratio(rng) / m * 2.0 + 0.02);
    return SystemSpec::finite_self_similar(ratios);
}

PotentialSpec random_psi(std::mt19937& rng, std::size_t nsymbols) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> val(-2.0, 1.0);
    switch (kind(rng)) {
        case 0: return PotentialSpec::neg_identity();
        case 1: return PotentialSpec::constant(val(rng));
        default: {
            std::vector<double> v(nsymbols);
            for (auto& x : v) x = val(rng);
            return PotentialSpec::explicit_list(v);
        }
    }
}

}  // namespace

TEST_SUITE_BEGIN("pressure");

TEST_CASE("exp_power_integral encloses the quadrature oracle") {
    for (double x : {0.2, 0.7, 1.5, 3.5, 8.0}) {
        for (double l : {0.0, 1.3, 2.0, 2.9, -1.0}) {
            Enclosure enc = series::exp_power_integral(x, l);
            double ref = quad_exp_power(x, l);
            CHECK(enc.lo <= ref * (1 + 1e-6) + 1e-12);
            CHECK(enc.hi >= ref * (1 - 1e-6) - 1e-12);
        }
    }
}

TEST_CASE("partition_bounds examples") {
    // Z_3 = (2 * 1/2)^3 = 1 for the two half maps
    WeightedPotential half(1.0, 0.0, SystemSpec::finite_self_similar({0.5, 0.5}),
                           PotentialSpec::constant(0.0));
    Enclosure p3 = partition_bounds(half, 3, 10);
    CHECK(p3.contains(0.0));
    CHECK(p3.width() < 1e-9);

    // sum 1/(n(n+1)) telescopes to 1, so the depth-1 value is log 1 = 0
    WeightedPotential lue(1.0, 0.0, SystemSpec::lueroth(), PotentialSpec::neg_identity());
    Enclosure p1 = partition_bounds(lue, 1, 10000);
    CHECK(p1.contains(0.0));
    CHECK(p1.width() < 1e-3);

    WeightedPotential g2(1.0, 0.0, truncate(SystemSpec::gauss(), 2), PotentialSpec::neg_two_log());
    Enclosure p4 = partition_bounds(g2, 4, 10);
    CHECK(p4.width() <= std::log(4.0) / 4.0 + 1e-9);
    Enclosure p10 = partition_bounds(g2, 10, 10);
    CHECK(p4.intersects(p10));  // both bracket the same pressure limit from above/below

    CHECK_THROWS(partition_bounds(lue, 9, 1000));  // budget
}

TEST_CASE("exact_series_pressure examples") {
    WeightedPotential lue(1.0, 0.0, SystemSpec::lueroth(), PotentialSpec::neg_identity());
    PressureValue pv = exact_series_pressure(lue, 1e-6);
    REQUIRE(pv.finite_kind());
    CHECK(pv.enc.contains(0.0));
    CHECK(pv.enc.width() <= 1e-6);

    WeightedPotential div(2.0, -0.1, SystemSpec::lueroth(), PotentialSpec::neg_identity());
    CHECK(exact_series_pressure(div, 1e-6).kind == PressureValue::Kind::PlusInfinity);

    WeightedPotential closed(1.0, 1.0, SystemSpec::finite_self_similar({0.5, 0.5}),
                             PotentialSpec::constant(-std::log(2.0)));
    PressureValue pc = exact_series_pressure(closed, 1e-9);
    REQUIRE(pc.finite_kind());
    CHECK(pc.enc.contains(-std::log(2.0)));

    WeightedPotential gauss_wp(1.0, 0.0, SystemSpec::gauss(), PotentialSpec::neg_two_log());
    CHECK_THROWS(exact_series_pressure(gauss_wp, 1e-6));
}

TEST_CASE("pressure dispatch and divergence certificates") {
    DepthPolicy pol;
    WeightedPotential bowen(1.0, 0.0, SystemSpec::gauss(), PotentialSpec::neg_two_log());
    PressureValue pv = pressure(bowen, pol);
    REQUIRE(pv.finite_kind());
    CHECK(pv.enc.contains(0.0));  // full continued fractions have zero pressure at t = 1

    WeightedPotential sub(0.2, 0.0, SystemSpec::gauss(), PotentialSpec::neg_two_log());
    CHECK(pressure(sub, pol).kind == PressureValue::Kind::PlusInfinity);

    for (auto sys : {SystemSpec::gauss(), SystemSpec::lueroth()}) {
        WeightedPotential huge(1000.0, 0.0, sys, PotentialSpec::neg_two_log());
        PressureValue ph = pressure(huge, pol);
        REQUIRE(ph.finite_kind());
        CHECK(ph.enc.hi < 0.0);
    }
}

TEST_CASE("pressure_sign examples") {
    DepthPolicy pol;
    WeightedPotential neg(1.5, 0.0, SystemSpec::lueroth(), PotentialSpec::neg_identity());
    CHECK(pressure_sign(neg, pol) == PressureSign::Negative);

    WeightedPotential pos(0.4, 0.0, SystemSpec::lueroth(), PotentialSpec::neg_identity());
    CHECK(pressure_sign(pos, pol) == PressureSign::Positive);

    WeightedPotential zero(1.0, 0.0, SystemSpec::finite_self_similar({0.5, 0.5}),
                           PotentialSpec::constant(0.0));
    CHECK(pressure_sign(zero, pol) == PressureSign::ZeroStraddling);
}

TEST_CASE("anti-monotonicity in t") {
    DepthPolicy pol;
    PressureEvaluator ev(truncate(SystemSpec::gauss(), 3), PotentialSpec::neg_two_log(), pol);
    double prev_lo = 1e300, prev_hi = 1e300;
    for (double t = 0.2; t <= 2.01; t += 0.2) {
        PressureValue pv = ev.eval(t, 0.1);
        REQUIRE(pv.finite_kind());
        CHECK(pv.enc.lo <= prev_lo + 1e-12);
        CHECK(pv.enc.hi <= prev_hi + 1e-12);
        prev_lo = pv.enc.lo;
        prev_hi = pv.enc.hi;
    }
}

TEST_CASE("monotone refinement: more depth never widens") {
    SystemSpec g2 = truncate(SystemSpec::gauss(), 2);
    Enclosure prev{-1e300, 1e300};
    for (int d : {2, 4, 6, 8, 10}) {
        DepthPolicy pol;
        pol.max_depth = d;
        PressureEvaluator ev(g2, PotentialSpec::neg_two_log(), pol);
        PressureValue pv = ev.eval(0.7, 0.0);
        REQUIRE(pv.finite_kind());
        CHECK(pv.enc.lo >= prev.lo - 1e-12);
        CHECK(pv.enc.hi <= prev.hi + 1e-12);
        prev = pv.enc;
    }
}

TEST_CASE("partition bounds agree with the exact series on random finite systems") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> tdist(-1.5, 2.5), bdist(-1.5, 1.5);
    std::uniform_int_distribution<int> ndist(1, 4);
    for (int rep = 0; rep < 20; ++rep) {
        SystemSpec sys = random_finite_system(rng);
        PotentialSpec psi = random_psi(rng, sys.ratios.size());
        WeightedPotential wp(tdist(rng), bdist(rng), sys, psi);
        PressureValue exact = exact_series_pressure(wp, 1e-10);
        REQUIRE(exact.finite_kind());
        int n = ndist(rng);
        Enclosure part = partition_bounds(wp, n, 64);
        // locally constant weights make every depth exact
        CHECK(part.intersects(exact.enc));
        CHECK(part.width() < 1e-8);
    }
}

TEST_CASE("truncation monotonicity and convergence to the full pressure") {
    DepthPolicy pol;
    pol.target_width = 1e-8;
    WeightedPotential full(0.8, 0.3, SystemSpec::lueroth(), PotentialSpec::neg_identity());
    PressureValue pf = pressure(full, pol);
    REQUIRE(pf.finite_kind());
    double prev_mid = -1e300, prev_err = 1e300;
    for (std::uint64_t n : {4u, 8u, 16u, 32u, 64u}) {
        WeightedPotential wn(0.8, 0.3, truncate(SystemSpec::lueroth(), n), PotentialSpec::neg_identity());
        PressureValue pn = pressure(wn, pol);
        REQUIRE(pn.finite_kind());
        double mid = pn.enc.mid();
        CHECK(mid >= prev_mid - 1e-12);             // alphabet growth only adds terms
        CHECK(mid <= pf.enc.mid() + 1e-9);
        double err = std::abs(mid - pf.enc.mid());
        CHECK(err <= prev_err + 1e-12);
        prev_mid = mid;
        prev_err = err;
    }
    CHECK(prev_err < 1e-2);
}

TEST_SUITE_END();

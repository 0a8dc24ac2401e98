#include "doctest.h"

#include <cmath>
#include <vector>

#include "mfs/legendre.hpp"

using namespace mfs;

namespace {

const DepthPolicy kPol;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

FreeEnergyCurve synthetic_line(double intercept, double slope, std::vector<double> betas) {
    FreeEnergyCurve c;
    for (double b : betas) {
        FreeEnergyPoint p;
        p.beta = b;
        p.value = Enclosure::point(intercept + slope * b);
        p.zero_exists = true;
        c.points.push_back(p);
    }
    return c;
}

// plain-double root of sum_n (n(n+1))^{-t} e^{-beta n} = 1, independent of the
// enclosure machinery (test oracle)
double lueroth_t_root(double beta) {
    auto log_sum = [&](double t) {
        double m = -1e300;
        std::vector<double> xs;
        for (int n = 1; n <= 20000; ++n) {
            double x = -t * std::log(double(n) * (n + 1.0)) - beta * n;
            xs.push_back(x);
            m = std::max(m, x);
            if (x < m - 60.0 && n > 100) break;
        }
        double acc = 0.0;
        for (double x : xs) acc += std::exp(x - m);
        return m + std::log(acc);
    };
    double lo = -200.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (log_sum(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE_BEGIN("legendre");

TEST_CASE("conjugate of an affine curve") {
    FreeEnergyCurve line = synthetic_line(1.0, -1.0, linspace(-4.0, 4.0, 17));
    ConjugateValue at1 = conjugate(line, 1.0);
    CHECK_FALSE(at1.neg_infinity);
    CHECK(at1.value == doctest::Approx(1.0).epsilon(1e-12));

    ConjugateValue at15 = conjugate(line, 1.5);  // inf runs off the right grid edge
    CHECK(at15.neg_infinity);
}

TEST_CASE("Lueroth conjugate matches a 10x finer independent grid oracle") {
    FreeEnergyCurve curve = free_energy_curve(SystemSpec::lueroth(), PotentialSpec::neg_identity(),
                                              linspace(0.0, 40.0, 81), 1e-8, kPol, 128.0);
    double mine = conjugate(curve, 1.3).value;

    double oracle = 1e300;
    for (int i = 0; i <= 800; ++i) {
        double beta = 40.0 * i / 800.0;
        oracle = std::min(oracle, lueroth_t_root(beta) + 1.3 * beta);
    }
    CHECK(mine == doctest::Approx(oracle).epsilon(1e-3));
    CHECK(mine > 0.0);
    CHECK(mine < 1.0);
}

TEST_CASE("degenerate spectrum collapses to the dimension point") {
    SystemSpec sys = SystemSpec::finite_self_similar({0.5, 0.5});
    FreeEnergyCurve curve = free_energy_curve(sys, PotentialSpec::geometric_potential(),
                                              linspace(-4.0, 4.0, 17), 1e-8, kPol);
    SpectrumCurve sc = spectrum(curve, {0.8, 1.0, 1.2});
    CHECK(sc.points[1].value == doctest::Approx(1.0).epsilon(1e-6));  // f(1) = t(0) = 1
    CHECK(sc.points[0].neg_infinity);
    CHECK(sc.points[2].neg_infinity);
}

TEST_CASE("truncated Gauss spectrum: interior, unimodal rise toward the peak") {
    DepthPolicy pol;
    pol.max_depth = 4;
    // the slope varies fast on beta > 0, so sample that side densely
    std::vector<double> grid;
    for (double b = -40.0; b < 0.0; b += 4.0) grid.push_back(b);
    for (double b = 0.0; b <= 8.0; b += 0.5) grid.push_back(b);
    FreeEnergyCurve curve = free_energy_curve(truncate(SystemSpec::gauss(), 32),
                                              PotentialSpec::neg_two_log(), grid, 1e-3, pol, 64.0, 4);
    SpectrumCurve sc = spectrum(curve, {0.3, 0.5, 0.7});
    for (const auto& p : sc.points) {
        CHECK(p.region == SpectrumPoint::Region::Interior);
        CHECK(p.value > 0.0);
        CHECK(p.value < 1.0);
    }
    CHECK(sc.points[0].value < sc.points[1].value);
    CHECK(sc.points[1].value < sc.points[2].value);
}

TEST_CASE("generalized Lueroth: truncation conjugates certify f >= 1 beyond alpha_+") {
    // dom(t) cut at 0 from the left pushes alpha_+^n to infinity; beyond the
    // full system's alpha_+ the truncation values stay a valid lower bound
    FreeEnergyCurve c80 = free_energy_curve(truncate(SystemSpec::generalized_lueroth(), 80),
                                            PotentialSpec::neg_identity(),
                                            linspace(-20.0, 10.0, 61), 1e-8, kPol, 256.0);
    for (double alpha : {2.0, 2.2}) {
        ConjugateValue cv = conjugate(c80, alpha);
        CHECK_FALSE(cv.neg_infinity);
        CHECK(cv.value >= 1.0 - 0.05);
    }
}

TEST_CASE("biconjugate gap: affine data, a spike, and a real curve") {
    FreeEnergyCurve line = synthetic_line(1.0, -1.0, linspace(-4.0, 4.0, 17));
    CHECK(biconjugate_gap(line) <= 1e-9);

    FreeEnergyCurve spiked = line;
    spiked.points[8].value = Enclosure::point(spiked.points[8].value.mid() + 0.1);
    CHECK(biconjugate_gap(spiked) == doctest::Approx(0.1).epsilon(1e-6));

    FreeEnergyCurve lue = free_energy_curve(SystemSpec::lueroth(), PotentialSpec::neg_identity(),
                                            linspace(0.0, 20.0, 41), 1e-8, kPol, 128.0);
    double maxw = 0.0;
    for (const auto& p : lue.points) maxw = std::max(maxw, p.value.width());
    CHECK(biconjugate_gap(lue) <= 2.0 * maxw + 1e-7);
}

TEST_CASE("conjugate is concave in alpha and monotone in the curve") {
    FreeEnergyCurve lue = free_energy_curve(SystemSpec::lueroth(), PotentialSpec::neg_identity(),
                                            linspace(0.0, 30.0, 61), 1e-8, kPol, 128.0);
    auto c = [&](double a) { return conjugate(lue, a).value; };
    for (double a = 1.15; a <= 2.0; a += 0.05) {
        double mid = c(a + 0.025);
        CHECK(2.0 * mid >= c(a) + c(a + 0.05) - 1e-6);
    }

    FreeEnergyCurve shifted = lue;
    for (auto& p : shifted.points) p.value = p.value + 0.1;
    for (double a : {1.2, 1.5, 1.9})
        CHECK(conjugate(shifted, a).value >= conjugate(lue, a).value - 1e-12);
}

TEST_CASE("upper-bound region stays nonnegative on the interior closure") {
    DepthPolicy pol;
    FreeEnergyCurve curve =
        free_energy_curve(truncate(SystemSpec::gauss(), 8), PotentialSpec::neg_two_log(),
                          linspace(-40.0, 8.0, 25), 1e-3, pol, 64.0, 4);
    SlopeReport rep = slopes(curve);
    for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double alpha = rep.alpha_minus + frac * (rep.alpha_plus - rep.alpha_minus);
        CHECK(conjugate(curve, alpha).value >= -0.05);
    }
}

TEST_CASE("truncation conjugates converge (Cauchy along doubling n)") {
    double prev = 1e300, prev_inc = 1e300;
    double last = 0.0;
    for (std::uint64_t n : {8u, 16u, 32u, 64u}) {
        FreeEnergyCurve c = free_energy_curve(truncate(SystemSpec::lueroth(), n),
                                              PotentialSpec::neg_identity(),
                                              linspace(0.0, 40.0, 81), 1e-8, kPol, 128.0);
        double v = conjugate(c, 1.3).value;
        if (prev < 1e299) {
            double inc = std::abs(v - prev);
            CHECK(inc <= prev_inc + 1e-9);
            prev_inc = inc;
        }
        prev = v;
        last = v;
    }
    (void)last;
    CHECK(prev_inc < 1e-3);
}

TEST_SUITE_END();

#include "doctest.h"

#include <cmath>
#include <random>

#include "mfs/free_energy.hpp"

using namespace mfs;

namespace {

const DepthPolicy kPol;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("free_energy");

TEST_CASE("equal-ratio closed form t(beta) = 1 - beta") {
    SystemSpec sys = SystemSpec::finite_self_similar({0.5, 0.5});
    PotentialSpec psi = PotentialSpec::constant(-std::log(2.0));
    FreeEnergyPoint p = free_energy_at(sys, psi, 0.25, 1e-4, kPol);
    CHECK_FALSE(p.infinite);
    CHECK(p.value.contains(0.75));
    CHECK(p.value.width() <= 1e-4);
    CHECK(p.zero_exists);

    FreeEnergyCurve curve = free_energy_curve(sys, psi, {-1.0, 0.0, 1.0, 2.0}, 1e-6, kPol);
    double expected[] = {2.0, 1.0, 0.0, -1.0};
    for (int i = 0; i < 4; ++i) CHECK(curve.points[i].value.contains(expected[i]));
    CHECK(curve.convexity_defect <= 1e-9);
}

TEST_CASE("closed-form root containment on random equal-ratio systems") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> rdist(0.1, 0.45), cdist(-1.5, -0.1), bdist(-3.0, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        double r = rdist(rng), c = cdist(rng), beta = bdist(rng);
        int m = 2 + (rep % 3);
        SystemSpec sys = SystemSpec::finite_self_similar(std::vector<double>(m, r));
        // m r^t e^{beta c} = 1  =>  t = (log m + beta c) / log(1/r)
        double root = (std::log(double(m)) + beta * c) / std::log(1.0 / r);
        FreeEnergyPoint p = free_energy_at(sys, PotentialSpec::constant(c), beta, 1e-6, kPol, 4096.0);
        CHECK(p.value.contains(root));
    }
}

TEST_CASE("Bowen anchor: full Gauss dimension enclosure straddles 1") {
    FreeEnergyPoint p =
        free_energy_at(SystemSpec::gauss(), PotentialSpec::neg_two_log(), 0.0, 1e-3, kPol);
    CHECK_FALSE(p.infinite);
    CHECK(p.value.contains(1.0));
    CHECK(p.warning == FreeEnergyPoint::Warning::Widened);  // desk-scale depth cannot reach 1e-3
    CHECK(p.zero_exists);
}

TEST_CASE("Lueroth with negid: domain boundary at 0") {
    SystemSpec sys = SystemSpec::lueroth();
    PotentialSpec psi = PotentialSpec::neg_identity();
    FreeEnergyPoint inf_pt = free_energy_at(sys, psi, -0.5, 1e-4, kPol);
    CHECK(inf_pt.infinite);

    FreeEnergyCurve curve = free_energy_curve(sys, psi, {-0.5, 0.0, 1.0, 5.0}, 1e-6, kPol);
    CHECK(curve.points[0].infinite);
    CHECK_FALSE(curve.points[1].infinite);
    CHECK(curve.points[1].value.contains(1.0));  // sum 1/(n(n+1)) = 1
    CHECK_FALSE(curve.points[2].infinite);
    CHECK_FALSE(curve.points[3].infinite);
    CHECK(curve.dom_lo >= -0.5);
    CHECK(curve.dom_lo <= 0.0);
    CHECK(std::isinf(curve.dom_hi));
    CHECK(curve.infinite_segments_valid);
}

TEST_CASE("irregular log-power family: flat tail with zero_exists = false") {
    SystemSpec sys = SystemSpec::log_power(0.05);
    PotentialSpec psi = PotentialSpec::constant(-1.0);
    FreeEnergyCurve curve =
        free_energy_curve(sys, psi, {-4.0, -3.5, -2.5, -2.0, -1.0, 0.0}, 1e-4, kPol);
    // eta = log(0.05 * sum 1/((e+2) log^2(e+2))) is about -2.96
    CHECK(curve.points[0].zero_exists);   // steep branch: genuine pressure zero
    CHECK(curve.points[0].value.lo > 1.05);
    for (int i = 2; i < 6; ++i) {
        CHECK_FALSE(curve.points[i].zero_exists);  // flat branch: infimum without zero
        CHECK(curve.points[i].value.contains(1.0));
        CHECK(curve.points[i].value.width() <= 1e-4 + 1e-9);
    }
}

TEST_CASE("slopes on a line and the alpha estimates") {
    SystemSpec sys = SystemSpec::finite_self_similar({0.5, 0.5});
    PotentialSpec psi = PotentialSpec::constant(-std::log(2.0));
    FreeEnergyCurve curve = free_energy_curve(sys, psi, linspace(-4.0, 4.0, 17), 1e-8, kPol);
    SlopeReport rep = slopes(curve);
    for (const auto& ps : rep.interior) {
        CHECK(*ps.left == doctest::Approx(-1.0).epsilon(1e-6));
        CHECK(*ps.right == doctest::Approx(-1.0).epsilon(1e-6));
    }
    CHECK(rep.alpha_minus == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.alpha_plus == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(rep.alpha_minus_extrapolated);
    CHECK_FALSE(rep.alpha_plus_extrapolated);
}

TEST_CASE("Lueroth alpha_minus approaches 2/log 6") {
    std::vector<double> grid = {-0.5};  // one point past the domain edge
    for (double b = 0.0; b <= 40.0; b += 2.0) grid.push_back(b);
    FreeEnergyCurve curve = free_energy_curve(SystemSpec::lueroth(), PotentialSpec::neg_identity(),
                                              grid, 1e-8, kPol, 128.0);
    SlopeReport rep = slopes(curve);
    CHECK(rep.alpha_minus == doctest::Approx(2.0 / std::log(6.0)).epsilon(1e-3));
    CHECK(rep.alpha_plus_extrapolated);  // dom(t) is cut at 0 on the left
}

TEST_CASE("sign consistency of returned enclosures") {
    DepthPolicy pol;
    pol.target_width = 1e-9;
    double tol = 1e-5;
    for (double beta : {0.0, 0.7, 2.0}) {
        FreeEnergyPoint p =
            free_energy_at(SystemSpec::lueroth(), PotentialSpec::neg_identity(), beta, tol, pol);
        REQUIRE(p.zero_exists);
        WeightedPotential above(p.value.hi + tol, beta, SystemSpec::lueroth(),
                                PotentialSpec::neg_identity());
        WeightedPotential below(p.value.lo - tol, beta, SystemSpec::lueroth(),
                                PotentialSpec::neg_identity());
        CHECK(pressure_sign(above, pol) == PressureSign::Negative);
        CHECK(pressure_sign(below, pol) == PressureSign::Positive);
    }
}

TEST_CASE("monotone exhaustion: t_n nondecreasing in n") {
    DepthPolicy pol;
    for (double beta : {0.0, 1.0, 3.0}) {
        double prev = -1e300;
        for (std::uint64_t n : {4u, 8u, 16u, 32u}) {
            FreeEnergyPoint p = free_energy_at(truncate(SystemSpec::lueroth(), n),
                                               PotentialSpec::neg_identity(), beta, 1e-7, pol);
            double mid = p.value.mid();
            CHECK(mid >= prev - 1e-6);
            prev = mid;
        }
        FreeEnergyPoint full =
            free_energy_at(SystemSpec::lueroth(), PotentialSpec::neg_identity(), beta, 1e-7, pol);
        CHECK(prev <= full.value.mid() + 1e-6);
    }
}

TEST_CASE("power-law free energy matches a zeta-root oracle") {
    // sum_e (a e^{-p})^t = a^t zeta(p t) = 1; oracle in plain doubles with an
    // integral tail, independent of the enclosure machinery
    auto zeta = [](double s) {
        double acc = 0.0;
        const int n = 200000;
        for (int e = 1; e <= n; ++e) acc += std::pow(double(e), -s);
        acc += std::pow(n + 0.5, 1.0 - s) / (s - 1.0);
        return acc;
    };
    const double a = 0.5, p = 2.0;
    double lo = 0.55, hi = 3.0;
    for (int i = 0; i < 100; ++i) {
        double t = 0.5 * (lo + hi);
        (std::pow(a, t) * zeta(p * t) > 1.0 ? lo : hi) = t;
    }
    double root = 0.5 * (lo + hi);
    FreeEnergyPoint pt = free_energy_at(SystemSpec::power_law(a, p), PotentialSpec::neg_two_log(),
                                        0.0, 1e-7, kPol);
    CHECK(pt.value.mid() == doctest::Approx(root).epsilon(1e-6));
}

TEST_CASE("geometric psi shifts any free energy by exactly -beta") {
    DepthPolicy pol;
    pol.max_depth = 5;
    FreeEnergyEngine engine(SystemSpec::gauss(), PotentialSpec::geometric_potential(), pol);
    FreeEnergyPoint p0 = engine.at(0.0, 1e-3);
    FreeEnergyPoint p1 = engine.at(1.0, 1e-3);
    double tol = p0.value.width() + p1.value.width();
    CHECK(std::abs((p0.value.mid() - 1.0) - p1.value.mid()) <= tol + 1e-9);
}

TEST_CASE("the potential is irrelevant at beta = 0") {
    DepthPolicy pol;
    pol.max_depth = 8;
    SystemSpec g4 = truncate(SystemSpec::gauss(), 4);
    FreeEnergyPoint a = free_energy_at(g4, PotentialSpec::neg_two_log(), 0.0, 1e-3, pol);
    FreeEnergyPoint b = free_energy_at(g4, PotentialSpec::neg_identity(), 0.0, 1e-3, pol);
    FreeEnergyPoint c = free_energy_at(g4, PotentialSpec::constant(2.5), 0.0, 1e-3, pol);
    CHECK(a.value.mid() == doctest::Approx(b.value.mid()).epsilon(1e-9));
    CHECK(a.value.mid() == doctest::Approx(c.value.mid()).epsilon(1e-9));
}

TEST_CASE("curve evaluation is thread independent") {
    SystemSpec sys = truncate(SystemSpec::gauss(), 3);
    PotentialSpec psi = PotentialSpec::neg_two_log();
    DepthPolicy pol;
    pol.max_depth = 5;
    auto grid = linspace(-2.0, 2.0, 5);
    FreeEnergyCurve a = free_energy_curve(sys, psi, grid, 1e-3, pol, 64.0, 1);
    FreeEnergyCurve b = free_energy_curve(sys, psi, grid, 1e-3, pol, 64.0, 4);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].value.lo == b.points[i].value.lo);
        CHECK(a.points[i].value.hi == b.points[i].value.hi);
    }
}

TEST_SUITE_END();

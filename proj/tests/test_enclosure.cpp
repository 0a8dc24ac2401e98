#include "doctest.h"

#include <cmath>
#include <random>

#include "mfs/enclosure.hpp"

using namespace mfs;

TEST_SUITE_BEGIN("enclosure");

TEST_CASE("interval ops contain the exact value") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 5000; ++i) {
        double a = dist(rng), b = dist(rng);
        Enclosure ea = Enclosure::point(a), eb = Enclosure::point(b);
        long double ref;

        ref = static_cast<long double>(a) + b;
        Enclosure s = ea + eb;
        CHECK(s.lo <= static_cast<double>(ref));
        CHECK(s.hi >= static_cast<double>(ref));

        ref = static_cast<long double>(a) * b;
        Enclosure m = ea * eb;
        CHECK(m.lo <= static_cast<double>(ref));
        CHECK(m.hi >= static_cast<double>(ref));

        Enclosure e = exp_enc(Enclosure::point(a));
        long double eref = expl(static_cast<long double>(a));
        CHECK(e.lo <= static_cast<double>(eref));
        CHECK(e.hi >= static_cast<double>(eref));

        double pos = std::abs(a) + 0.1;
        Enclosure l = log_enc(Enclosure::point(pos));
        long double lref = logl(static_cast<long double>(pos));
        CHECK(l.lo <= static_cast<double>(lref));
        CHECK(l.hi >= static_cast<double>(lref));
    }
}

TEST_CASE("scale orders endpoints by the sign of the scalar") {
    Enclosure x = Enclosure::of(2.0, 3.0);
    Enclosure neg = scale(-2.0, x);
    CHECK(neg.lo <= -6.0);
    CHECK(neg.hi >= -4.0);
    CHECK(neg.lo <= neg.hi);
}

TEST_CASE("directed log sums bracket a plain sum") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-700.0, 40.0);
    for (int rep = 0; rep < 50; ++rep) {
        DirectedLogSum lo(-1), hi(+1);
        long double exact = 0.0;
        for (int i = 0; i < 200; ++i) {
            double x = dist(rng);
            lo.add_log(x);
            hi.add_log(x);
            exact += expl(static_cast<long double>(x));
        }
        long double log_exact = logl(exact);
        CHECK(lo.log_result() <= static_cast<double>(log_exact));
        CHECK(hi.log_result() >= static_cast<double>(log_exact));
        CHECK(hi.log_result() - lo.log_result() < 1e-9);
    }
}

TEST_CASE("log sum handles huge spread without overflow") {
    DirectedLogSum hi(+1);
    hi.add_log(-5000.0);
    hi.add_log(5000.0);
    hi.add_log(4000.0);
    CHECK(hi.log_result() == doctest::Approx(5000.0).epsilon(1e-12));
}

TEST_CASE("degenerate and ordering invariants") {
    CHECK_THROWS(Enclosure::of(1.0, 0.0));
    Enclosure p = Enclosure::point(3.5);
    CHECK(p.degenerate());
    CHECK(p.contains(3.5));
    CHECK(Enclosure::hull(2.0, -1.0).lo == -1.0);
}

TEST_SUITE_END();

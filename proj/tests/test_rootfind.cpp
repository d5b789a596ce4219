#include "doctest.h"

#include <cmath>
#include <random>

#include "core/chebpoly.hpp"
#include "core/rootfind.hpp"

using namespace nikmop;

TEST_CASE("single linear root") {
    PrecisionConfig cfg;
    auto r = roots_in_interval_d([](double x) { return x; }, Interval(-1.0, 1.0), 1, cfg);
    REQUIRE(r.size() == 1);
    CHECK(std::fabs(r[0]) < 1e-13);
}

TEST_CASE("monic quadratic x^2 - 1/2") {
    PrecisionConfig cfg;
    auto r = roots_in_interval_d([](double x) { return x * x - 0.5; }, Interval(-1.0, 1.0), 2, cfg);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-13));
    CHECK(r[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
}

TEST_CASE("missing sign change reports the found count") {
    PrecisionConfig cfg;
    try {
        roots_in_interval_d([](double x) { return 1.0 + x * x; }, Interval(-1.0, 1.0), 1, cfg);
        FAIL("expected RootCountMismatch");
    } catch (const RootCountMismatchError& e) {
        CHECK(e.found == 0);
        CHECK(e.expected == 1);
    }
}

TEST_CASE("random simple roots are recovered sorted, separated, interior") {
    PrecisionConfig cfg;
    std::mt19937 rng(99);
    Interval iv(-1.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 1 + static_cast<int>(rng() % 9);
        std::vector<double> roots;
        std::uniform_real_distribution<double> dist(-0.95, 0.95);
        while (static_cast<int>(roots.size()) < n) {
            double c = dist(rng);
            bool ok = true;
            for (double r : roots) ok = ok && std::fabs(r - c) > 0.02;
            if (ok) roots.push_back(c);
        }
        std::sort(roots.begin(), roots.end());
        auto p = ChebPoly<double>::from_roots(iv, roots);
        auto found = roots_in_interval_d([&](double x) { return p(x); }, iv, n, cfg);
        REQUIRE(static_cast<int>(found.size()) == n);
        for (int i = 0; i < n; ++i) {
            CHECK(found[i] == doctest::Approx(roots[i]).epsilon(1e-10));
            CHECK(found[i] > iv.a);
            CHECK(found[i] < iv.b);
            if (i) CHECK(found[i] - found[i - 1] > cfg.root_tol);
        }
    }
}

TEST_CASE("grid point landing exactly on a zero is still counted once") {
    PrecisionConfig cfg;
    // 8*1+64 = 72 panels on [-1,1] puts a grid node at 0 exactly
    auto r = roots_in_interval_d([](double x) { return x * (1.0 + 0.5 * x * x); }, Interval(-1.0, 1.0), 1, cfg);
    REQUIRE(r.size() == 1);
    CHECK(std::fabs(r[0]) < 1e-12);
}

TEST_CASE("binary128 root polish") {
    PrecisionConfig cfg = PrecisionConfig::for_bits(113);
    auto f = [](f128 x) { return x * x - f128(2); };
    auto r = roots_in_interval<f128>(f, Interval(1.0, 2.0), 1, cfg);
    REQUIRE(r.size() == 1);
    CHECK(to_double(fabsq(r[0] - sqrtq(f128(2)))) < 1e-30);
}

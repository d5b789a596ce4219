#include "doctest.h"

#include <cmath>
#include <random>

#include "core/orthopoly.hpp"
#include "core/rootfind.hpp"

using namespace nikmop;

TEST_CASE("Lebesgue on [-1,1], N=2: monic x^2 - 1/3 with norm^2 = 8/45") {
    PrecisionConfig cfg;
    auto mu = VaryingMeasure<double>::plain(MeasureSpec::lebesgue(Interval(-1.0, 1.0)));
    auto r = monic_orthogonal(mu, 2, cfg);
    // x^2 - 1/3 = T_2/2 + 1/6
    REQUIRE(r.monic.degree() == 2);
    CHECK(r.monic.coeffs()[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(r.monic.coeffs()[1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(r.monic.coeffs()[2] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r.norm * r.norm == doctest::Approx(8.0 / 45.0).epsilon(1e-13));
    CHECK(r.measure_sign == 1);
}

TEST_CASE("arcsine weight: monic orthogonal is the scaled Chebyshev 2^{1-k} T_k") {
    PrecisionConfig cfg;
    auto mu = VaryingMeasure<double>::plain(MeasureSpec::arcsine(Interval(-1.0, 1.0)));
    for (int k = 1; k <= 6; ++k) {
        auto r = monic_orthogonal(mu, k, cfg);
        for (int j = 0; j < k; ++j) CHECK(std::fabs(r.monic.coeffs()[j]) < 1e-13);
        CHECK(r.monic.coeffs()[k] == doctest::Approx(std::pow(2.0, 1 - k)).epsilon(1e-13));
    }
}

TEST_CASE("degree zero returns the unit polynomial with the mass norm") {
    PrecisionConfig cfg;
    auto mu = VaryingMeasure<double>::plain(MeasureSpec::arcsine(Interval(-1.0, 1.0)));
    auto r = monic_orthogonal(mu, 0, cfg);
    CHECK(r.monic.degree() == 0);
    CHECK(r.monic(0.37) == doctest::Approx(1.0));
    CHECK(r.norm == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("orthonormal evaluation: Chebyshev and Legendre values") {
    PrecisionConfig cfg;
    auto arc = VaryingMeasure<double>::plain(MeasureSpec::arcsine(Interval(-1.0, 1.0)));
    auto r0 = monic_orthogonal(arc, 0, cfg);
    CHECK(orthonormal_eval(r0, 0.2) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-13));
    for (int k = 1; k <= 4; ++k) {
        auto rk = monic_orthogonal(arc, k, cfg);
        for (double x : {-0.9, -0.3, 0.1, 0.77}) {
            double tk = std::cos(k * std::acos(x));
            CHECK(orthonormal_eval(rk, x) == doctest::Approx(std::sqrt(2.0 / M_PI) * tk).epsilon(1e-12));
        }
    }
    auto leb = VaryingMeasure<double>::plain(MeasureSpec::lebesgue(Interval(-1.0, 1.0)));
    auto r1 = monic_orthogonal(leb, 1, cfg);
    CHECK(orthonormal_eval(r1, 1.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));
}

TEST_CASE("orthogonality residuals stay below tolerance for a generic weight") {
    PrecisionConfig cfg;
    MeasureSpec base(Interval(-1.0, 1.0), WeightExpr::rational(Poly({2.0, 1.0}), Poly({1.0})));
    auto mu = VaryingMeasure<double>::plain(base);
    auto r = monic_orthogonal(mu, 8, cfg);
    // independent verification at doubled order
    auto d = discretize<double>(base, 2 * cfg.quad_order);
    auto V = cheb_vandermonde(base.interval, d.x, 8);
    for (int nu = 0; nu < 8; ++nu) {
        double resid = 0.0, scale = 0.0;
        for (size_t i = 0; i < d.size(); ++i) {
            double t = d.w[i] * V(static_cast<int>(i), nu) * r.monic(d.x[i]);
            resid += t;
            scale += std::fabs(t);
        }
        CHECK(std::fabs(resid) / scale < 1e-10);
    }
}

TEST_CASE("zeros of consecutive-degree orthogonal polynomials interlace") {
    PrecisionConfig cfg;
    MeasureSpec base(Interval(-1.0, 1.0), WeightExpr::abs_poly(Poly({0.0, 1.0}), 1.0));
    auto mu = VaryingMeasure<double>::plain(base);
    auto r5 = monic_orthogonal(mu, 5, cfg);
    auto r6 = monic_orthogonal(mu, 6, cfg);
    auto z5 = roots_in_interval_d([&](double x) { return r5.monic(x); }, base.interval, 5, cfg);
    auto z6 = roots_in_interval_d([&](double x) { return r6.monic(x); }, base.interval, 6, cfg);
    for (int i = 0; i < 5; ++i) {
        CHECK(z6[i] < z5[i]);
        CHECK(z5[i] < z6[i + 1]);
    }
}

TEST_CASE("monic polynomial ignores a global sign flip of the measure") {
    PrecisionConfig cfg;
    MeasureSpec base = MeasureSpec::lebesgue(Interval(-1.0, 1.0));
    VaryingMeasure<double> plus(base, [](double x) { return 2.0 + x; });
    VaryingMeasure<double> minus(base, [](double x) { return -(2.0 + x); });
    CHECK(plus.sign == 1);
    CHECK(minus.sign == -1);
    auto rp = monic_orthogonal(plus, 4, cfg);
    auto rm = monic_orthogonal(minus, 4, cfg);
    for (int j = 0; j <= 4; ++j) CHECK(rp.monic.coeffs()[j] == doctest::Approx(rm.monic.coeffs()[j]).epsilon(1e-13));
    CHECK(rp.measure_sign == 1);
    CHECK(rm.measure_sign == -1);
}

TEST_CASE("sign-changing varying factor is rejected") {
    CHECK_THROWS_AS(VaryingMeasure<double>(MeasureSpec::lebesgue(Interval(-1.0, 1.0)), [](double x) { return x; }),
                    ValidationError);
}

TEST_CASE("binary128 path reaches extended residuals") {
    PrecisionConfig cfg = PrecisionConfig::for_bits(113);
    auto mu = VaryingMeasure<f128>::plain(MeasureSpec::lebesgue(Interval(-1.0, 1.0)));
    auto r = monic_orthogonal(mu, 10, cfg);
    auto d = discretize<f128>(mu.base, 2 * cfg.quad_order);
    auto V = cheb_vandermonde(mu.base.interval, d.x, 10);
    for (int nu = 0; nu < 10; ++nu) {
        f128 resid = 0, scale = 0;
        for (size_t i = 0; i < d.size(); ++i) {
            f128 t = d.w[i] * V(static_cast<int>(i), nu) * r.monic(d.x[i]);
            resid = resid + t;
            scale = scale + fabsq(t);
        }
        CHECK(to_double(fabsq(resid) / scale) < 1e-25);
    }
}

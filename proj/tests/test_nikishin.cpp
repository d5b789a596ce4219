#include "doctest.h"

#include <cmath>

#include "core/nikishin.hpp"

using namespace nikmop;

namespace {

NikishinPair default_system() {
    return NikishinPair(MeasureSpec::lebesgue(Interval(-1.0, 1.0)), MeasureSpec::lebesgue(Interval(2.0, 3.0)));
}

// Brute-force oracle, fully independent of the solver machinery: monomial
// moments from a dense Gauss-Legendre rule.
struct BruteMoments {
    std::vector<double> x1, w1, x2, w2;

    BruteMoments() {
        const auto& r = gauss_legendre_rule(800);
        for (int i = 0; i < 800; ++i) {
            x1.push_back(r.x[i]);
            w1.push_back(r.w[i]); // Lebesgue on [-1,1]
            x2.push_back(2.5 + 0.5 * r.x[i]);
            w2.push_back(0.5 * r.w[i]); // Lebesgue on [2,3]
        }
    }

    double shat(double x) const {
        double s = 0.0;
        for (size_t j = 0; j < x2.size(); ++j) s += w2[j] / (x - x2[j]);
        return s;
    }
    double m(int k) const {
        double s = 0.0;
        for (size_t i = 0; i < x1.size(); ++i) s += w1[i] * std::pow(x1[i], k);
        return s;
    }
    double mu(int k) const {
        double s = 0.0;
        for (size_t i = 0; i < x1.size(); ++i) s += w1[i] * shat(x1[i]) * std::pow(x1[i], k);
        return s;
    }
};

} // namespace

TEST_CASE("system construction and overlap rejection") {
    CHECK_NOTHROW(default_system());
    CHECK_THROWS_AS(NikishinPair(MeasureSpec::lebesgue(Interval(-1.0, 1.0)),
                                 MeasureSpec::lebesgue(Interval(0.5, 2.0))),
                    OverlappingSupportsError);
}

TEST_CASE("inner Cauchy transform is negative on the left interval with the right tail") {
    auto sys = default_system();
    // closed form on Delta_1: integral_2^3 dt/(x-t) = log((2-x)/(3-x))
    for (double x : {-0.9, -0.3, 0.2, 0.8}) {
        double want = std::log((2.0 - x) / (3.0 - x));
        CHECK(sys.s2_hat(x) == doctest::Approx(want).epsilon(1e-10));
        CHECK(sys.s2_hat(x) < 0.0);
        CHECK(sys.s2_density(x) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("cauchy transform closed forms") {
    PrecisionConfig cfg;
    MeasureSpec leb23 = MeasureSpec::lebesgue(Interval(2.0, 3.0));
    auto v0 = cauchy_transform<double>(leb23, {0.0, 0.0}, cfg);
    CHECK(v0.re == doctest::Approx(-std::log(1.5)).epsilon(1e-13));
    CHECK(std::fabs(v0.im) < 1e-15);

    // arcsine probability measure: hat = 1/sqrt(z^2-1) on the right axis
    MeasureSpec arc(Interval(-1.0, 1.0), WeightExpr::constant(1.0 / M_PI) * WeightExpr::jacobi(-0.5, -0.5));
    for (double z : {1.5, 2.0, 5.0}) {
        auto v = cauchy_transform<double>(arc, {z, 0.0}, cfg);
        CHECK(v.re == doctest::Approx(1.0 / std::sqrt(z * z - 1.0)).epsilon(1e-12));
    }

    // dominant term: z * hat(z) -> total mass
    auto far = cauchy_transform<double>(leb23, {-1e7, 0.0}, cfg);
    CHECK(-1e7 * far.re == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(cauchy_transform<double>(leb23, {2.5, 0.0}, cfg), EvalOnSupportError);
}

TEST_CASE("trivial multiple orthogonal polynomials") {
    PrecisionConfig cfg;
    auto sys = default_system();
    auto q00 = mop_Q<double>(sys, MultiIndex(0, 0), false, cfg);
    CHECK(q00.degree() == 0);
    CHECK(q00(0.123) == doctest::Approx(1.0));

    // n = (1,0): x - m1/m0 = x for symmetric Lebesgue
    auto q10 = mop_Q<double>(sys, MultiIndex(1, 0), false, cfg);
    CHECK(q10.degree() == 1);
    CHECK(q10(0.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(q10(0.5) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("n=(1,1) against the brute-force moment oracle") {
    PrecisionConfig cfg;
    auto sys = default_system();
    auto Q = mop_Q<double>(sys, MultiIndex(1, 1), false, cfg);
    BruteMoments bm;
    // monic x^2 + b x + c from the two orthogonality conditions
    double a11 = bm.m(1), a12 = bm.m(0), r1 = -bm.m(2);
    double a21 = bm.mu(1), a22 = bm.mu(0), r2 = -bm.mu(2);
    double det = a11 * a22 - a12 * a21;
    double b = (r1 * a22 - a12 * r2) / det;
    double c = (a11 * r2 - r1 * a21) / det;
    for (double x : {-0.7, 0.0, 0.4, 0.9}) {
        CHECK(Q(x) == doctest::Approx(x * x + b * x + c).epsilon(1e-9));
    }
}

TEST_CASE("multi-index class guard") {
    CHECK_THROWS_AS(MultiIndex(0, 2), ValidationError);
    CHECK_NOTHROW(MultiIndex(0, 1));
    CHECK_NOTHROW(MultiIndex(3, 4));
    CHECK_THROWS_AS(MultiIndex(-1, 0), ValidationError);
}

TEST_CASE("bundle: second-kind decay and zero counts") {
    PrecisionConfig cfg;
    auto sys = default_system();
    auto B = mop_bundle<double>(sys, MultiIndex(2, 2), false, cfg);

    // psi1(z) = O(z^{-n1-1}): z^2 psi1 stays bounded, z psi1 -> 0
    auto far = B.psi1({1e5, 0.0});
    CHECK(std::fabs(1e5 * far.re) < 1e-4);

    // psi1 for n=(1,1) changes sign exactly once on Delta_2
    auto B11 = mop_bundle<double>(sys, MultiIndex(1, 1), false, cfg);
    CHECK(B11.Q2.degree() == 1);

    // for n=(0,0), psi1 is sigma1hat
    auto B00 = mop_bundle<double>(sys, MultiIndex(0, 0), false, cfg);
    auto p = B00.psi1({4.0, 0.0});
    auto want = cauchy_transform<double>(MeasureSpec::lebesgue(Interval(-1.0, 1.0)), {4.0, 0.0}, cfg);
    CHECK(p.re == doctest::Approx(want.re).epsilon(1e-12));
}

TEST_CASE("bundle invariants: K0, h1, orthonormality, epsilon signs") {
    PrecisionConfig cfg;
    auto sys = default_system();
    for (auto n : {MultiIndex(1, 1), MultiIndex(2, 2), MultiIndex(3, 2)}) {
        auto B = mop_bundle<double>(sys, n, false, cfg);
        CHECK(B.K[0] == 1.0);
        auto h1 = B.h(1, {0.0, 2.0});
        CHECK(h1.re == 1.0);
        CHECK(h1.im == 0.0);
        // orthonormality: kappa_1^2 * |I_1| = 1 by construction; re-verify by
        // independent quadrature of q1^2 dsigma1/|Q2|
        auto d = discretize<double>(sys.sigma(1), 2 * cfg.quad_order);
        double s = 0.0;
        for (size_t i = 0; i < d.size(); ++i) {
            double q1 = B.kappa[1] * B.Q1(d.x[i]);
            s += d.w[i] * q1 * q1 / std::fabs(B.Q2(d.x[i]));
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        // eps1 = (-1)^{N2} for Delta_2 right of Delta_1
        CHECK(B.eps[1] == (n.N(2) % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("operational uniqueness: bundle polynomials solve their own varying-measure problems") {
    PrecisionConfig cfg;
    auto sys = default_system();
    auto B = mop_bundle<double>(sys, MultiIndex(3, 3), false, cfg);

    // k=1: monic OP of degree N1 for dsigma1 / Q2
    VaryingMeasure<double> vm1(sys.sigma(1), [&](double x) { return 1.0 / B.Q2(x); });
    auto r1 = monic_orthogonal(vm1, 6, cfg);
    for (int j = 0; j <= 6; ++j)
        CHECK(std::fabs(r1.monic.coeffs()[j] - B.Q1.coeffs()[j]) < 1e-9 * std::max(1.0, std::fabs(B.Q1.coeffs()[j])));

    // k=2: monic OP of degree N2 for H2 dsigma2 / Q1
    VaryingMeasure<double> vm2(sys.sigma(2), [&](double x) { return B.H2_real(x) / B.Q1(x); });
    auto r2 = monic_orthogonal(vm2, 3, cfg);
    for (int j = 0; j <= 3; ++j)
        CHECK(std::fabs(r2.monic.coeffs()[j] - B.Q2.coeffs()[j]) < 1e-9 * std::max(1.0, std::fabs(B.Q2.coeffs()[j])));
}

TEST_CASE("constant perturbations rescale every bundle object exactly") {
    PrecisionConfig cfg;
    double c1 = 2.0, c2 = 3.0;
    NikishinPair sys(MeasureSpec::lebesgue(Interval(-1.0, 1.0)), MeasureSpec::lebesgue(Interval(2.0, 3.0)),
                     WeightExpr::constant(c1), WeightExpr::constant(c2));
    MultiIndex n(3, 2);
    auto B = mop_bundle<double>(sys, n, false, cfg);
    auto Bt = mop_bundle<double>(sys, n, true, cfg);

    for (int j = 0; j <= n.N(1); ++j) CHECK(std::fabs(B.Q1.coeffs()[j] - Bt.Q1.coeffs()[j]) < 1e-12);
    for (int j = 0; j <= n.N(2); ++j) CHECK(std::fabs(B.Q2.coeffs()[j] - Bt.Q2.coeffs()[j]) < 1e-12);

    for (auto z : {CplxD{1.5, 0.0}, CplxD{0.0, 1.0}, CplxD{4.0, 0.5}}) {
        auto r1 = Bt.psi1(z) / B.psi1(z);
        CHECK(r1.re == doctest::Approx(c1).epsilon(1e-10));
        CHECK(std::fabs(r1.im) < 1e-10);
    }
    for (auto z : {CplxD{1.5, 0.0}, CplxD{0.0, 1.0}}) {
        auto r2 = Bt.psi2(z) / B.psi2(z);
        CHECK(r2.re == doctest::Approx(c1 * c2).epsilon(1e-10));
    }
    CHECK(Bt.kappa[1] / B.kappa[1] == doctest::Approx(1.0 / std::sqrt(c1)).epsilon(1e-11));
    CHECK(Bt.kappa[2] / B.kappa[2] == doctest::Approx(1.0 / std::sqrt(c2)).epsilon(1e-11));
}

TEST_CASE("perturbed bundle with the generic desk-scale weights") {
    PrecisionConfig cfg;
    NikishinPair sys(MeasureSpec::lebesgue(Interval(-1.0, 1.0)), MeasureSpec::lebesgue(Interval(2.0, 3.0)),
                     WeightExpr::rational(Poly({2.0, 1.0}), Poly({1.0})), WeightExpr::exp_poly(Poly({0.0, 0.5})));
    auto B = mop_bundle<double>(sys, MultiIndex(4, 4), true, cfg);
    CHECK(B.Q1.degree() == 8);
    CHECK(B.Q2.degree() == 4);
    // eps sign equality with the unperturbed bundle
    auto Bu = mop_bundle<double>(sys, MultiIndex(4, 4), false, cfg);
    CHECK(B.eps[1] == Bu.eps[1]);
    CHECK(B.eps[2] == Bu.eps[2]);
}

TEST_CASE("binary128 bundle at |n| = 14") {
    PrecisionConfig cfg = PrecisionConfig::auto_for_index(14);
    REQUIRE(cfg.extended());
    auto sys = default_system();
    auto B = mop_bundle<f128>(sys, MultiIndex(7, 7), false, cfg);
    CHECK(B.Q1.degree() == 14);
    CHECK(B.Q2.degree() == 7);
    CHECK(to_double(B.K[1]) > 0.0);
    CHECK(to_double(B.K[2]) > 0.0);
}

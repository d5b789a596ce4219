#pragma once

// Nikishin systems of two measures on disjoint intervals, their multiple
// orthogonal polynomials, second-kind functions, and the normalization
// bundle (H, K, kappa, h, eps) attached to a multi-index.
//
// Numerical layout: everything on Delta_1 is discretized against the first
// generating measure, everything on Delta_2 against the second; the inner
// Cauchy transform couples the two. H-functions are evaluated through the
// integral recursion, which involves no cancellation off Delta_{k-1}; the
// polynomial-quotient route is retained as an independent consistency check.

#include <array>
#include <optional>

#include "chebpoly.hpp"
#include "gridfn.hpp"
#include "orthopoly.hpp"
#include "rootfind.hpp"

namespace nikmop {

struct MultiIndex {
    int n1;
    int n2;

    MultiIndex(int a, int b) : n1(a), n2(b) {
        if (n1 < 0 || n2 < 0) throw ValidationError("multi-index entries must be nonnegative");
        if (n2 > n1 + 1) throw ValidationError("multi-index outside the admissible class (n2 <= n1 + 1)");
    }

    int total() const { return n1 + n2; }
    // N_k = sum_{j>=k} n_j
    int N(int k) const { return k == 1 ? n1 + n2 : (k == 2 ? n2 : 0); }

    bool operator==(const MultiIndex& o) const { return n1 == o.n1 && n2 == o.n2; }
};

class NikishinPair {
public:
    NikishinPair(MeasureSpec s1, MeasureSpec s2, std::optional<WeightExpr> rho1 = std::nullopt,
                 std::optional<WeightExpr> rho2 = std::nullopt)
        : sigma1_(std::move(s1)), sigma2_(std::move(s2)), rho1_(std::move(rho1)), rho2_(std::move(rho2)) {
        if (sigma1_.interval.overlaps(sigma2_.interval))
            throw OverlappingSupportsError("generating measures must live on disjoint intervals");
        if (rho1_) rho1_->validate(sigma1_.interval);
        if (rho2_) rho2_->validate(sigma2_.interval);
        // tabulate the inner Cauchy transform at Chebyshev points of Delta_1
        auto d2 = discretize<double>(sigma2_, 192);
        shat_tab_ = GridFn::sample(sigma1_.interval, 129, [&](double x) {
            double s = 0.0;
            for (size_t j = 0; j < d2.size(); ++j) s += d2.w[j] / (x - d2.x[j]);
            return s;
        });
    }

    const MeasureSpec& sigma(int k) const { return k == 1 ? sigma1_ : sigma2_; }
    const Interval& delta(int k) const { return sigma(k).interval; }
    bool has_perturbation() const { return rho1_.has_value() || rho2_.has_value(); }
    const WeightExpr& rho(int k) const {
        static const WeightExpr unit = WeightExpr::one();
        if (k == 1) return rho1_ ? *rho1_ : unit;
        return rho2_ ? *rho2_ : unit;
    }

    MeasureSpec effective(int k, bool perturbed) const {
        const MeasureSpec& base = sigma(k);
        if (!perturbed) return base;
        return base.with_extra_weight(rho(k));
    }

    // x -> sigma2hat(x) * w1(x) on Delta_1 (density of the second measure of
    // the unperturbed system w.r.t. Lebesgue)
    double s2_density(double x) const { return shat_tab_(x) * sigma1_.weight.eval(sigma1_.interval, x); }
    double s2_hat(double x) const { return shat_tab_(x); }

private:
    MeasureSpec sigma1_, sigma2_;
    std::optional<WeightExpr> rho1_, rho2_;
    GridFn shat_tab_;
};

template <class T>
inline Cplx<T> cauchy_transform(const MeasureSpec& mu, Cplx<T> z, const PrecisionConfig& cfg) {
    if (dist_to_interval(mu.interval, to_double(z.re), to_double(z.im)) < cfg.root_tol)
        throw EvalOnSupportError("Cauchy transform evaluated on the support");
    auto d = discretize<T>(mu, cfg.quad_order);
    Cplx<T> s;
    for (size_t j = 0; j < d.size(); ++j) s = s + Cplx<T>(d.w[j]) / (z - Cplx<T>(d.x[j]));
    return s;
}

// Monic multiple orthogonal polynomial of degree |n| for the (possibly
// perturbed) system: orthogonal to degrees < n_1 against s_1 and < n_2
// against s_2, imposed on Chebyshev test polynomials of Delta_1.
template <class T>
inline ChebPoly<T> mop_Q(const NikishinPair& sys, const MultiIndex& n, bool use_perturbation,
                         const PrecisionConfig& cfg) {
    const Interval& iv1 = sys.delta(1);
    const int N1 = n.N(1);
    T lead = ChebPoly<T>::monic_lead_coeff(iv1, N1);
    if (N1 == 0) return ChebPoly<T>(iv1, {T(1)}, true);

    MeasureSpec m1 = sys.effective(1, use_perturbation);
    MeasureSpec m2 = sys.effective(2, use_perturbation);

    auto assemble = [&](int order, Matrix<T>& A, std::vector<T>& rhs) {
        auto d1 = discretize<T>(m1, order);
        auto d2 = discretize<T>(m2, order);
        std::vector<T> shat(d1.size(), T(0));
        for (size_t i = 0; i < d1.size(); ++i)
            for (size_t j = 0; j < d2.size(); ++j) shat[i] = shat[i] + d2.w[j] / (d1.x[i] - d2.x[j]);
        auto V = cheb_vandermonde(iv1, d1.x, N1);
        A = Matrix<T>(N1, N1);
        rhs.assign(N1, T(0));
        for (size_t i = 0; i < d1.size(); ++i) {
            for (int row = 0; row < N1; ++row) {
                int k = row < n.n1 ? 1 : 2;
                int nu = row < n.n1 ? row : row - n.n1;
                T wv = d1.w[i] * V(static_cast<int>(i), nu);
                if (k == 2) wv = wv * shat[i];
                for (int j = 0; j < N1; ++j) A(row, j) = A(row, j) + wv * V(static_cast<int>(i), j);
                rhs[row] = rhs[row] - wv * lead * V(static_cast<int>(i), N1);
            }
        }
    };

    Matrix<T> A;
    std::vector<T> rhs;
    assemble(cfg.quad_order, A, rhs);
    auto c = solve_refined(A, rhs);

    std::vector<T> coeffs(N1 + 1);
    for (int j = 0; j < N1; ++j) coeffs[j] = c[j];
    coeffs[N1] = lead;
    ChebPoly<T> Q(iv1, coeffs, true);

    // orthogonality residuals re-checked node by node on doubled-order data,
    // scaled by the absolute integrand mass
    {
        auto d1 = discretize<T>(m1, 2 * cfg.quad_order);
        auto d2 = discretize<T>(m2, 2 * cfg.quad_order);
        std::vector<T> shat(d1.size(), T(0));
        for (size_t i = 0; i < d1.size(); ++i)
            for (size_t j = 0; j < d2.size(); ++j) shat[i] = shat[i] + d2.w[j] / (d1.x[i] - d2.x[j]);
        auto V = cheb_vandermonde(iv1, d1.x, N1);
        for (int row = 0; row < N1; ++row) {
            int nu = row < n.n1 ? row : row - n.n1;
            bool second = row >= n.n1;
            T resid = T(0), scale = T(0);
            for (size_t i = 0; i < d1.size(); ++i) {
                T term = d1.w[i] * V(static_cast<int>(i), nu) * Q(d1.x[i]);
                if (second) term = term * shat[i];
                resid = resid + term;
                scale = scale + fabs(term);
            }
            if (scale == T(0)) scale = T(1);
            if (!(fabs(resid) <= T(cfg.residual_tol) * scale))
                throw SingularGramError("multiple-orthogonality residual exceeds tolerance");
        }
    }
    return Q;
}

// All objects attached to one (system, multi-index) pair.
template <class T>
class MopBundle {
public:
    MultiIndex index;
    bool perturbed;
    ChebPoly<T> Q1, Q2;
    std::array<T, 3> K{};     // K[0]=1, K[1], K[2]
    std::array<T, 3> kappa{}; // kappa[1], kappa[2]
    std::array<int, 3> eps{}; // eps[1], eps[2]

    MopBundle(const NikishinPair& sys, const MultiIndex& n, bool use_perturbation, const PrecisionConfig& cfg)
        : index(n), perturbed(use_perturbation), iv1_(sys.delta(1)), iv2_(sys.delta(2)),
          guard_(std::max(cfg.root_tol, 1e-12 * (sys.delta(1).length() + sys.delta(2).length()))) {
        Q1 = mop_Q<T>(sys, n, use_perturbation, cfg);

        MeasureSpec m1 = sys.effective(1, use_perturbation);
        MeasureSpec m2 = sys.effective(2, use_perturbation);
        d1_ = discretize<T>(m1, 2 * cfg.quad_order);
        d2_ = discretize<T>(m2, 2 * cfg.quad_order);

        // zero confinement of Q1 (certifies count and simplicity)
        roots_in_interval<T>([&](T x) { return Q1(x); }, iv1_, n.N(1), cfg);

        // kernel of Psi_1
        psi1_ker_.resize(d1_.size());
        T ker_abs = T(0);
        for (size_t i = 0; i < d1_.size(); ++i) {
            psi1_ker_[i] = d1_.w[i] * Q1(d1_.x[i]);
            ker_abs = ker_abs + fabs(psi1_ker_[i]);
        }

        // Q2 from the zeros of Psi_1 on Delta_2. Psi_1 there is exponentially
        // smaller than its integrand, so the achievable |Psi_1(r)| is the
        // quadrature rounding floor, not a relative tolerance.
        double gap0 = iv2_.a > iv1_.b ? iv2_.a - iv1_.b : iv1_.a - iv2_.b;
        T psi1_noise = real_eps<T>() * ker_abs / T(gap0);
        auto zeros =
            roots_in_interval<T>([&](T x) { return psi1_real(x); }, iv2_, n.N(2), cfg, psi1_noise);
        Q2 = ChebPoly<T>::from_roots(iv2_, zeros);

        // kernel of Psi_2 and of the H recursions
        psi2_ker_.resize(d2_.size());
        h2_ker_.resize(d1_.size());
        for (size_t i = 0; i < d1_.size(); ++i) {
            T q1 = Q1(d1_.x[i]);
            h2_ker_[i] = d1_.w[i] * q1 * q1 / Q2(d1_.x[i]);
        }
        h3_ker_.resize(d2_.size());
        for (size_t j = 0; j < d2_.size(); ++j) {
            psi2_ker_[j] = d2_.w[j] * psi1_real(d2_.x[j]);
            T q2 = Q2(d2_.x[j]);
            h3_ker_[j] = d2_.w[j] * q2 * q2 * H2_real(d2_.x[j]) / Q1(d2_.x[j]);
        }

        // normalization constants: K_k = |I_k|^{-1/2}, eps_k = sign(I_k)
        T I1 = T(0);
        for (size_t i = 0; i < d1_.size(); ++i) I1 = I1 + h2_ker_[i]; // = integral Q1^2 dm1 / Q2
        T I2 = T(0);
        for (size_t j = 0; j < d2_.size(); ++j) I2 = I2 + h3_ker_[j]; // = integral Q2^2 H2 dm2 / Q1
        K[0] = T(1);
        K[1] = T(1) / sqrt(fabs(I1));
        K[2] = T(1) / sqrt(fabs(I2));
        eps[1] = I1 > T(0) ? 1 : -1;
        eps[2] = I2 > T(0) ? 1 : -1;
        kappa[1] = K[1] / K[0];
        kappa[2] = K[2] / K[1];

        // quotient route vs recursion route for the H functions; the probe
        // contour stays clear of both intervals. The H functions decay
        // exponentially in |n| while the summation noise floor is absolute,
        // so the comparison carries a rounding-floor allowance next to the
        // relative tolerance.
        double gap = iv2_.a > iv1_.b ? iv2_.a - iv1_.b : iv1_.a - iv2_.b;
        double off = std::min(0.35, 0.4 * gap);
        T eps = real_eps<T>();
        for (int q = 0; q < 4; ++q) {
            double ang = 0.4 + 1.5 * q;
            {
                CplxD zc{iv1_.mid() + (iv1_.half() + off) * std::cos(ang), (off + 0.1) * std::sin(ang) + 0.03};
                Cplx<T> z{T(zc.re), T(zc.im)};
                Cplx<T> a = H2(z), b = H2_quotient(z);
                T floor = eps * (sum_abs(h2_ker_, d1_, z) + abs(Q1(z) / Q2(z)) * sum_abs(psi1_ker_, d1_, z));
                if (!(abs(a - b) <= T(1e-8) * abs(a) + T(64) * floor))
                    throw NotConvergedError("H2 quotient/recursion mismatch; precision exhausted");
            }
            {
                CplxD zc{iv2_.mid() + (iv2_.half() + off) * std::cos(ang), (off + 0.1) * std::sin(ang) + 0.03};
                Cplx<T> z{T(zc.re), T(zc.im)};
                Cplx<T> a = H3(z), b = H3_quotient(z);
                T floor = eps * (sum_abs(h3_ker_, d2_, z) + abs(Q2(z)) * sum_abs(psi2_ker_, d2_, z));
                if (!(abs(a - b) <= T(1e-8) * abs(a) + T(64) * floor))
                    throw NotConvergedError("H3 quotient/recursion mismatch; precision exhausted");
            }
        }
    }

    // second-kind functions
    Cplx<T> psi1(Cplx<T> z) const {
        check_off(1, z);
        Cplx<T> s;
        for (size_t i = 0; i < d1_.size(); ++i) s = s + Cplx<T>(psi1_ker_[i]) / (z - Cplx<T>(d1_.x[i]));
        return s;
    }
    Cplx<T> psi2(Cplx<T> z) const {
        check_off(2, z);
        Cplx<T> s;
        for (size_t j = 0; j < d2_.size(); ++j) s = s + Cplx<T>(psi2_ker_[j]) / (z - Cplx<T>(d2_.x[j]));
        return s;
    }
    T psi1_real(T x) const {
        T s = T(0);
        for (size_t i = 0; i < d1_.size(); ++i) s = s + psi1_ker_[i] / (x - d1_.x[i]);
        return s;
    }

    // H_{k} by the integral recursion (H_1 == 1)
    Cplx<T> H2(Cplx<T> z) const {
        check_off(1, z);
        Cplx<T> s;
        for (size_t i = 0; i < d1_.size(); ++i) s = s + Cplx<T>(h2_ker_[i]) / (z - Cplx<T>(d1_.x[i]));
        return s;
    }
    T H2_real(T x) const {
        T s = T(0);
        for (size_t i = 0; i < d1_.size(); ++i) s = s + h2_ker_[i] / (x - d1_.x[i]);
        return s;
    }
    Cplx<T> H3(Cplx<T> z) const {
        check_off(2, z);
        Cplx<T> s;
        for (size_t j = 0; j < d2_.size(); ++j) s = s + Cplx<T>(h3_ker_[j]) / (z - Cplx<T>(d2_.x[j]));
        return s;
    }

    // H_k by the polynomial quotient (independent route, cancellation-prone)
    Cplx<T> H2_quotient(Cplx<T> z) const { return Q1(z) * psi1(z) / Q2(z); }
    Cplx<T> H3_quotient(Cplx<T> z) const { return Q2(z) * psi2(z); }

    // h_k = K_{k-1}^2 H_k
    Cplx<T> h(int k, Cplx<T> z) const {
        if (k == 1) return Cplx<T>(T(1));
        Cplx<T> Hk = (k == 2) ? H2(z) : H3(z);
        return (K[k - 1] * K[k - 1]) * Hk;
    }

    const Interval& delta(int k) const { return k == 1 ? iv1_ : iv2_; }
    const DiscreteMeasure<T>& disc(int k) const { return k == 1 ? d1_ : d2_; }

private:
    static T sum_abs(const std::vector<T>& ker, const DiscreteMeasure<T>& d, Cplx<T> z) {
        T s = T(0);
        for (size_t i = 0; i < ker.size(); ++i) s = s + fabs(ker[i]) / abs(z - Cplx<T>(d.x[i]));
        return s;
    }

    void check_off(int k, Cplx<T> z) const {
        const Interval& iv = k == 1 ? iv1_ : iv2_;
        if (dist_to_interval(iv, to_double(z.re), to_double(z.im)) < guard_)
            throw EvalOnSupportError("evaluation point lies on the support interval");
    }

    Interval iv1_, iv2_;
    double guard_;
    DiscreteMeasure<T> d1_, d2_;
    std::vector<T> psi1_ker_, psi2_ker_, h2_ker_, h3_ker_;
};

template <class T>
inline MopBundle<T> mop_bundle(const NikishinPair& sys, const MultiIndex& n, bool use_perturbation,
                               const PrecisionConfig& cfg) {
    return MopBundle<T>(sys, n, use_perturbation, cfg);
}

} // namespace nikmop

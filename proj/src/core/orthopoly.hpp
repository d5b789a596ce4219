#pragma once

// Monic and orthonormal polynomials for a possibly signed, constant-sign
// varying measure extra(x) * dmu(x) on an interval. The Gram system is set up
// and solved in the Chebyshev basis of the host interval; orthogonality is
// re-verified after the solve against a doubled-order rule.

#include <functional>
#include <vector>

#include "chebpoly.hpp"
#include "linsolve.hpp"
#include "measure.hpp"

namespace nikmop {

template <class T>
struct VaryingMeasure {
    MeasureSpec base;
    std::function<T(T)> extra_weight; // continuous, zero-free, constant sign on base.interval
    int sign;                         // sign of extra_weight * density

    VaryingMeasure(MeasureSpec b, std::function<T(T)> extra, int check_points = 96)
        : base(std::move(b)), extra_weight(std::move(extra)), sign(0) {
        auto pts = lobatto_points<T>(base.interval, check_points);
        for (T x : pts) {
            T v = extra_weight(x);
            if (!isfinite(v) || v == T(0))
                throw NonPositiveSampleError("varying-measure factor vanishes or is not finite on the interval");
            int s = v > T(0) ? 1 : -1;
            if (sign == 0)
                sign = s;
            else if (sign != s)
                throw ValidationError("varying-measure factor changes sign on the interval");
        }
    }

    static VaryingMeasure plain(MeasureSpec b) {
        return VaryingMeasure(std::move(b), [](T) { return T(1); }, 8);
    }
};

template <class T>
struct OrthoResult {
    ChebPoly<T> monic;
    T norm;             // | integral monic^2 dmu |^{1/2}
    T orthonormal_lead; // 1/norm
    int measure_sign;
};

template <class T>
inline Matrix<T> cheb_vandermonde(const Interval& iv, const std::vector<T>& x, int max_deg) {
    Matrix<T> V(static_cast<int>(x.size()), max_deg + 1);
    T mid = T(iv.mid()), h = T(iv.half());
    for (int i = 0; i < V.n; ++i) {
        T u = (x[i] - mid) / h;
        V(i, 0) = T(1);
        if (max_deg >= 1) V(i, 1) = u;
        for (int j = 2; j <= max_deg; ++j) V(i, j) = T(2) * u * V(i, j - 1) - V(i, j - 2);
    }
    return V;
}

template <class T>
inline OrthoResult<T> monic_orthogonal(const VaryingMeasure<T>& mu, int N, const PrecisionConfig& cfg) {
    const Interval& iv = mu.base.interval;
    auto disc = discretize<T>(mu.base, cfg.quad_order);
    auto disc2 = discretize<T>(mu.base, 2 * cfg.quad_order);
    std::vector<T> W(disc.size()), W2(disc2.size());
    for (size_t i = 0; i < disc.size(); ++i) W[i] = disc.w[i] * mu.extra_weight(disc.x[i]);
    for (size_t i = 0; i < disc2.size(); ++i) W2[i] = disc2.w[i] * mu.extra_weight(disc2.x[i]);

    T lead = ChebPoly<T>::monic_lead_coeff(iv, N);
    std::vector<T> coeffs(N + 1, T(0));
    coeffs[N] = lead;

    if (N > 0) {
        auto V = cheb_vandermonde(iv, disc.x, N);
        Matrix<T> A(N, N);
        std::vector<T> rhs(N, T(0));
        for (size_t i = 0; i < disc.size(); ++i) {
            for (int nu = 0; nu < N; ++nu) {
                T wv = W[i] * V(static_cast<int>(i), nu);
                for (int j = 0; j < N; ++j) A(nu, j) = A(nu, j) + wv * V(static_cast<int>(i), j);
                rhs[nu] = rhs[nu] - wv * lead * V(static_cast<int>(i), N);
            }
        }
        auto c = solve_refined(A, rhs);
        for (int j = 0; j < N; ++j) coeffs[j] = c[j];
    }

    ChebPoly<T> P(iv, coeffs, true);

    // independent orthogonality check on the doubled rule
    if (N > 0) {
        auto V2 = cheb_vandermonde(iv, disc2.x, N);
        for (int nu = 0; nu < N; ++nu) {
            T resid = T(0), scale = T(0);
            for (size_t i = 0; i < disc2.size(); ++i) {
                T term = W2[i] * V2(static_cast<int>(i), nu) * P(disc2.x[i]);
                resid = resid + term;
                scale = scale + fabs(term);
            }
            if (scale == T(0)) scale = T(1);
            if (!(fabs(resid) <= T(cfg.residual_tol) * scale))
                throw SingularGramError("orthogonality residual exceeds tolerance; working precision exhausted");
        }
    }

    T nrm2 = T(0);
    for (size_t i = 0; i < disc2.size(); ++i) {
        T pv = P(disc2.x[i]);
        nrm2 = nrm2 + W2[i] * pv * pv;
    }
    if (!isfinite(nrm2) || nrm2 == T(0)) throw SingularGramError("squared norm vanished");

    OrthoResult<T> out{std::move(P), sqrt(fabs(nrm2)), T(0), nrm2 > T(0) ? 1 : -1};
    out.orthonormal_lead = T(1) / out.norm;
    return out;
}

// orthonormal polynomial value, positive-leading convention
template <class T>
inline Cplx<T> orthonormal_eval(const OrthoResult<T>& r, Cplx<T> z) {
    return r.monic(z) / r.norm;
}
template <class T>
inline T orthonormal_eval(const OrthoResult<T>& r, T x) {
    return r.monic(x) / r.norm;
}

} // namespace nikmop

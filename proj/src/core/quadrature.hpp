#pragma once

// Gauss rules on [-1,1]. Nodes are eigenvalues of the Jacobi matrix (implicit
// QL, no eigenvectors), weights come from the orthonormal recurrence via
// w_i = 1/sum_k p_k(x_i)^2. Gauss-Legendre is the alpha=beta=0 case of
// Gauss-Jacobi with weight (1-x)^alpha (1+x)^beta.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "real.hpp"

namespace nikmop {

template <class T>
struct QuadRule {
    std::vector<T> x; // strictly increasing nodes in (-1,1)
    std::vector<T> w; // positive weights
};

// Eigenvalues of a symmetric tridiagonal matrix, QL with implicit shifts.
template <class T>
inline std::vector<T> sym_tridiag_eigenvalues(std::vector<T> d, std::vector<T> e) {
    const int n = static_cast<int>(d.size());
    e.resize(n, T(0));
    const T eps = real_eps<T>();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                T dd = fabs(d[m]) + fabs(d[m + 1]);
                if (fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 120) throw NotConvergedError("tridiagonal QL iteration stalled");
                T g = (d[l + 1] - d[l]) / (T(2) * e[l]);
                T r = hypot(g, T(1));
                T sg = g >= T(0) ? fabs(r) : -fabs(r);
                g = d[m] - d[l] + e[l] / (g + sg);
                T s = T(1), c = T(1), p = T(0);
                for (int i = m - 1; i >= l; --i) {
                    T f = s * e[i];
                    T b = c * e[i];
                    r = hypot(f, g);
                    e[i + 1] = r;
                    if (r == T(0)) {
                        d[i + 1] = d[i + 1] - p;
                        e[m] = T(0);
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + T(2) * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == T(0) && m - 1 >= l) continue;
                d[l] = d[l] - p;
                e[l] = g;
                e[m] = T(0);
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

// Recurrence x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1} for the
// orthonormal Jacobi polynomials, plus the total mass mu0.
template <class T>
struct JacobiRecurrence {
    std::vector<T> a;
    std::vector<T> b; // b[k] = b_k, b[0] unused
    T mu0;
};

template <class T>
inline JacobiRecurrence<T> jacobi_recurrence(int n, double alpha_d, double beta_d) {
    const T al = T(alpha_d), be = T(beta_d);
    JacobiRecurrence<T> rec;
    rec.a.resize(n);
    rec.b.resize(n + 1, T(0));
    rec.mu0 = exp((al + be + T(1)) * log(T(2)) + lgamma(al + T(1)) + lgamma(be + T(1)) - lgamma(al + be + T(2)));
    if (n == 0) return rec;
    rec.a[0] = (be - al) / (al + be + T(2));
    for (int k = 1; k < n; ++k) {
        T s = T(2 * k) + al + be;
        rec.a[k] = (be * be - al * al) / (s * (s + T(2)));
    }
    // k=1 needs its own form: the generic one is 0/0 when alpha+beta = -1.
    if (n >= 1)
        rec.b[1] = sqrt(T(4) * (al + T(1)) * (be + T(1)) / ((al + be + T(2)) * (al + be + T(2)) * (al + be + T(3))));
    for (int k = 2; k <= n; ++k) {
        T s = T(2 * k) + al + be;
        rec.b[k] = sqrt(T(4 * k) * (T(k) + al) * (T(k) + be) * (T(k) + al + be) / (s * s * (s + T(1)) * (s - T(1))));
    }
    return rec;
}

namespace detail {

// Orthonormal value/derivative column at x, lengths n+1.
template <class T>
inline void jacobi_column(const JacobiRecurrence<T>& rec, int n, T x, std::vector<T>& p, std::vector<T>& dp) {
    p.assign(n + 1, T(0));
    dp.assign(n + 1, T(0));
    p[0] = T(1) / sqrt(rec.mu0);
    if (n == 0) return;
    p[1] = (x - rec.a[0]) * p[0] / rec.b[1];
    dp[1] = p[0] / rec.b[1];
    for (int k = 1; k < n; ++k) {
        p[k + 1] = ((x - rec.a[k]) * p[k] - rec.b[k] * p[k - 1]) / rec.b[k + 1];
        dp[k + 1] = ((x - rec.a[k]) * dp[k] + p[k] - rec.b[k] * dp[k - 1]) / rec.b[k + 1];
    }
}

} // namespace detail

template <class T>
inline QuadRule<T> make_gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw Error(ErrCode::BadArgument, "quadrature order must be >= 1");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw Error(ErrCode::BadArgument, "Jacobi exponents must exceed -1");
    auto rec = jacobi_recurrence<T>(n, alpha, beta);
    std::vector<T> diag(rec.a.begin(), rec.a.end());
    std::vector<T> off(n > 1 ? std::vector<T>(rec.b.begin() + 1, rec.b.begin() + n) : std::vector<T>{});
    QuadRule<T> rule;
    rule.x = sym_tridiag_eigenvalues(diag, off);
    rule.w.resize(n);
    std::vector<T> p, dp;
    for (int i = 0; i < n; ++i) {
        // Two Newton polish steps on p_n restore full working precision after QL.
        for (int it = 0; it < 2; ++it) {
            detail::jacobi_column(rec, n, rule.x[i], p, dp);
            if (dp[n] != T(0)) rule.x[i] = rule.x[i] - p[n] / dp[n];
        }
        detail::jacobi_column(rec, n, rule.x[i], p, dp);
        T s = T(0);
        for (int k = 0; k < n; ++k) s = s + p[k] * p[k];
        rule.w[i] = T(1) / s;
    }
    return rule;
}

template <class T>
inline const QuadRule<T>& gauss_jacobi(int n, double alpha, double beta) {
    static std::map<std::tuple<int, double, double>, std::unique_ptr<QuadRule<T>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(n, alpha, beta);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<QuadRule<T>>(make_gauss_jacobi<T>(n, alpha, beta))).first;
    return *it->second;
}

template <class T>
inline const QuadRule<T>& gauss_legendre(int n) {
    return gauss_jacobi<T>(n, 0.0, 0.0);
}

inline const QuadRule<double>& gauss_legendre_rule(int n) { return gauss_legendre<double>(n); }

} // namespace nikmop

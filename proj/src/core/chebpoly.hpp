#pragma once

// Polynomials in the Chebyshev basis of a host interval. This is the carrier
// for every degree-bearing polynomial in the solvers: monomial (Hankel-type)
// representations lose all accuracy well before the degrees we need.

#include <vector>

#include "complexx.hpp"
#include "interval.hpp"
#include "real.hpp"

namespace nikmop {

template <class T>
class ChebPoly {
public:
    ChebPoly() : iv_(-1.0, 1.0), c_{T(0)} {}

    ChebPoly(Interval iv, std::vector<T> coeffs, bool monic = false)
        : iv_(iv), c_(std::move(coeffs)), monic_(monic) {
        if (c_.empty()) c_.push_back(T(0));
    }

    static ChebPoly constant(Interval iv, T value) { return ChebPoly(iv, {value}, false); }

    // The monic polynomial with the given simple roots, assembled by repeated
    // multiplication with (x - r) directly in the Chebyshev basis.
    static ChebPoly from_roots(Interval iv, const std::vector<T>& roots) {
        ChebPoly p(iv, {T(1)}, true);
        for (T r : roots) p = p.times_linear(r);
        p.monic_ = true;
        return p;
    }

    // Interpolant of degree n through values at the n+1 Chebyshev-Lobatto
    // points x_k = mid + half*cos(k*pi/n), k = 0..n (decreasing in x).
    static ChebPoly from_lobatto_values(Interval iv, const std::vector<T>& vals, bool monic = false) {
        int n = static_cast<int>(vals.size()) - 1;
        std::vector<T> c(n + 1, T(0));
        if (n == 0) {
            c[0] = vals[0];
            return ChebPoly(iv, std::move(c), monic);
        }
        const T pi = real_pi<T>();
        for (int j = 0; j <= n; ++j) {
            T s = (vals[0] + (j % 2 == 0 ? vals[n] : -vals[n])) / T(2);
            for (int k = 1; k < n; ++k) s = s + vals[k] * cos(pi * T(j) * T(k) / T(n));
            c[j] = s * T(2) / T(n);
        }
        c[0] = c[0] / T(2);
        c[n] = c[n] / T(2);
        return ChebPoly(iv, std::move(c), monic);
    }

    const Interval& interval() const { return iv_; }
    const std::vector<T>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool monic() const { return monic_; }
    void set_monic(bool m) { monic_ = m; }

    // Chebyshev coefficient of T_deg for a monic polynomial of this degree on
    // this interval: x^N has leading Chebyshev coefficient 2^{1-N} h^N (N>=1).
    static T monic_lead_coeff(const Interval& iv, int deg) {
        if (deg == 0) return T(1);
        T h = T(iv.half());
        T v = T(2);
        for (int k = 0; k < deg; ++k) v = v * (h / T(2));
        return v;
    }

    T lead() const { return c_.back(); }

    T operator()(T x) const {
        T u = (T(2) * x - (T(iv_.a) + T(iv_.b))) / (T(iv_.b) - T(iv_.a));
        return clenshaw(u);
    }

    Cplx<T> operator()(Cplx<T> z) const {
        Cplx<T> u = (T(2) * z - Cplx<T>(T(iv_.a) + T(iv_.b))) / Cplx<T>(T(iv_.b) - T(iv_.a));
        return clenshaw_c(u);
    }

    ChebPoly derivative() const {
        int n = degree();
        if (n == 0) return ChebPoly(iv_, {T(0)});
        std::vector<T> d(n, T(0));
        std::vector<T> w(n + 2, T(0)); // d-recurrence workspace, w[j] = d_j
        for (int j = n - 1; j >= 0; --j) w[j] = w[j + 2] + T(2 * (j + 1)) * c_[j + 1];
        w[0] = w[0] / T(2);
        T scale = T(2) / (T(iv_.b) - T(iv_.a));
        for (int j = 0; j < n; ++j) d[j] = w[j] * scale;
        return ChebPoly(iv_, std::move(d));
    }

    // Multiply by (x - r); uses x*T_j = mid*T_j + h*(T_{j+1}+T_{j-1})/2.
    ChebPoly times_linear(T r) const {
        int n = degree();
        std::vector<T> out(n + 2, T(0));
        T mid = (T(iv_.a) + T(iv_.b)) / T(2);
        T h = (T(iv_.b) - T(iv_.a)) / T(2);
        for (int j = 0; j <= n; ++j) {
            out[j] = out[j] + (mid - r) * c_[j];
            if (j == 0) {
                out[1] = out[1] + h * c_[0];
            } else {
                out[j + 1] = out[j + 1] + h / T(2) * c_[j];
                out[j - 1] = out[j - 1] + h / T(2) * c_[j];
            }
        }
        return ChebPoly(iv_, std::move(out));
    }

    ChebPoly scaled(T s) const {
        std::vector<T> out(c_);
        for (T& v : out) v = v * s;
        return ChebPoly(iv_, std::move(out));
    }

    template <class U>
    ChebPoly<U> cast() const {
        std::vector<U> out(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) out[k] = U(c_[k]);
        ChebPoly<U> p(iv_, std::move(out), monic_);
        return p;
    }

private:
    T clenshaw(T u) const {
        T b1 = T(0), b2 = T(0);
        for (int j = degree(); j >= 1; --j) {
            T b0 = T(2) * u * b1 - b2 + c_[j];
            b2 = b1;
            b1 = b0;
        }
        return u * b1 - b2 + c_[0];
    }

    Cplx<T> clenshaw_c(Cplx<T> u) const {
        Cplx<T> b1, b2;
        for (int j = degree(); j >= 1; --j) {
            Cplx<T> b0 = T(2) * (u * b1) - b2 + c_[j];
            b2 = b1;
            b1 = b0;
        }
        return u * b1 - b2 + c_[0];
    }

    Interval iv_;
    std::vector<T> c_;
    bool monic_ = false;
};

// Chebyshev-Lobatto points of iv, decreasing in x (x_k = mid + h cos(k pi/n)).
template <class T>
inline std::vector<T> lobatto_points(const Interval& iv, int n_points) {
    std::vector<T> x(n_points);
    const T pi = real_pi<T>();
    T mid = T(iv.mid()), h = T(iv.half());
    if (n_points == 1) {
        x[0] = mid;
        return x;
    }
    for (int k = 0; k < n_points; ++k) x[k] = mid + h * cos(pi * T(k) / T(n_points - 1));
    return x;
}

} // namespace nikmop

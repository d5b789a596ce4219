#pragma once

// Minimal complex type usable with both double and f128. std::complex is not
// specified for __float128, and we only need field operations plus
// sqrt/log/exp/pow with principal branches.

#include "real.hpp"

namespace nikmop {

template <class T>
struct Cplx {
    T re{};
    T im{};

    Cplx() = default;
    Cplx(T r) : re(r), im(T(0)) {}
    Cplx(T r, T i) : re(r), im(i) {}

    template <class U>
    static Cplx from(const Cplx<U>& z) {
        return Cplx(T(z.re), T(z.im));
    }
};

template <class T> inline Cplx<T> operator+(Cplx<T> a, Cplx<T> b) { return {a.re + b.re, a.im + b.im}; }
template <class T> inline Cplx<T> operator-(Cplx<T> a, Cplx<T> b) { return {a.re - b.re, a.im - b.im}; }
template <class T> inline Cplx<T> operator-(Cplx<T> a) { return {-a.re, -a.im}; }
template <class T> inline Cplx<T> operator*(Cplx<T> a, Cplx<T> b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T> inline Cplx<T> operator*(T s, Cplx<T> a) { return {s * a.re, s * a.im}; }
template <class T> inline Cplx<T> operator*(Cplx<T> a, T s) { return {s * a.re, s * a.im}; }
template <class T> inline Cplx<T> operator+(Cplx<T> a, T s) { return {a.re + s, a.im}; }
template <class T> inline Cplx<T> operator+(T s, Cplx<T> a) { return {a.re + s, a.im}; }
template <class T> inline Cplx<T> operator-(Cplx<T> a, T s) { return {a.re - s, a.im}; }
template <class T> inline Cplx<T> operator-(T s, Cplx<T> a) { return {s - a.re, -a.im}; }

// Smith's algorithm; avoids overflow for well-scaled operands.
template <class T>
inline Cplx<T> operator/(Cplx<T> a, Cplx<T> b) {
    if (fabs(b.re) >= fabs(b.im)) {
        T r = b.im / b.re;
        T d = b.re + b.im * r;
        return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    T r = b.re / b.im;
    T d = b.im + b.re * r;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}
template <class T> inline Cplx<T> operator/(Cplx<T> a, T s) { return {a.re / s, a.im / s}; }
template <class T> inline Cplx<T> operator/(T s, Cplx<T> a) { return Cplx<T>(s) / a; }

template <class T> inline Cplx<T> conj(Cplx<T> z) { return {z.re, -z.im}; }
template <class T> inline T abs(Cplx<T> z) { return hypot(z.re, z.im); }
template <class T> inline T norm2(Cplx<T> z) { return z.re * z.re + z.im * z.im; }

template <class T>
inline Cplx<T> sqrt(Cplx<T> z) {
    if (z.re == T(0) && z.im == T(0)) return {T(0), T(0)};
    T r = abs(z);
    T w = sqrt((r + fabs(z.re)) / T(2));
    if (z.re >= T(0)) return {w, z.im / (T(2) * w)};
    T iw = fabs(z.im) / (T(2) * w);
    return {iw, z.im >= T(0) ? w : -w};
}

template <class T>
inline Cplx<T> log(Cplx<T> z) {
    return {log(abs(z)), atan2(z.im, z.re)};
}

template <class T>
inline Cplx<T> exp(Cplx<T> z) {
    T m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

template <class T>
inline Cplx<T> pow(Cplx<T> z, T p) {
    return exp(p * log(z));
}

using CplxD = Cplx<double>;

} // namespace nikmop

#pragma once

// Scalar layer. All numerical kernels are templated on the working real type,
// which is either `double` (53-bit) or `f128` (113-bit, via libquadmath).
// Unqualified math calls inside namespace nikmop resolve to the overloads
// below for f128 and to the std versions for double.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include <quadmath.h>

namespace nikmop {

using f128 = __float128;

using std::atan2;
using std::cos;
using std::exp;
using std::fabs;
using std::floor;
using std::hypot;
using std::isfinite;
using std::lgamma;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

inline f128 sqrt(f128 x) { return sqrtq(x); }
inline f128 fabs(f128 x) { return fabsq(x); }
inline f128 log(f128 x) { return logq(x); }
inline f128 exp(f128 x) { return expq(x); }
inline f128 cos(f128 x) { return cosq(x); }
inline f128 sin(f128 x) { return sinq(x); }
inline f128 atan2(f128 y, f128 x) { return atan2q(y, x); }
inline f128 pow(f128 x, f128 y) { return powq(x, y); }
inline f128 hypot(f128 x, f128 y) { return hypotq(x, y); }
inline f128 lgamma(f128 x) { return lgammaq(x); }
inline f128 floor(f128 x) { return floorq(x); }
inline bool isfinite(f128 x) { return finiteq(x) != 0; }

template <class T>
struct RealTraits;

template <>
struct RealTraits<double> {
    static constexpr int mantissa_bits = 53;
    static double eps() { return std::numeric_limits<double>::epsilon(); }
    static double pi() { return 3.14159265358979323846264338327950288; }
};

template <>
struct RealTraits<f128> {
    static constexpr int mantissa_bits = 113;
    static f128 eps() { return FLT128_EPSILON; }
    static f128 pi() { return M_PIq; }
};

template <class T>
inline T real_eps() {
    return RealTraits<T>::eps();
}
template <class T>
inline T real_pi() {
    return RealTraits<T>::pi();
}

inline double to_double(double x) { return x; }
inline double to_double(f128 x) { return static_cast<double>(x); }

// Decimal round trip: 17 digits for double, 36 for binary128. Used by the
// result cache, which must reproduce values bit-identically.
inline std::string real_to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
inline std::string real_to_string(f128 x) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.36Qe", x);
    return buf;
}

inline void real_from_string(const std::string& s, double& out) { out = std::strtod(s.c_str(), nullptr); }
inline void real_from_string(const std::string& s, f128& out) { out = strtoflt128(s.c_str(), nullptr); }

} // namespace nikmop

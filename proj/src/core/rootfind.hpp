#pragma once

// Root localization on an interval for continuous real functions with a known
// simple-zero count: sign-change scan on a refined uniform grid, panel count
// doubled until the count stabilizes twice (capped at 2^16), then bisection
// and a secant polish per bracket.

#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "measure.hpp"
#include "real.hpp"

namespace nikmop {

// noise_floor: absolute evaluation noise of f (e.g. the quadrature rounding
// floor when f is itself an integral); a computed |f(r)| at or below a small
// multiple of it is accepted as a root certificate.
template <class T>
inline std::vector<T> roots_in_interval(const std::function<T(T)>& f, const Interval& iv, int expected,
                                        const PrecisionConfig& cfg, T noise_floor = T(0)) {
    if (expected < 0) throw Error(ErrCode::BadArgument, "expected root count must be >= 0");
    if (expected == 0) return {};

    const T a = T(iv.a), b = T(iv.b);
    const T root_tol = T(cfg.root_tol);

    int panels = 8 * expected + 64;
    int stable = 0;
    int count = -1;
    std::vector<std::pair<T, T>> brackets;
    std::vector<std::pair<T, T>> bracket_vals;

    while (true) {
        brackets.clear();
        bracket_vals.clear();
        T xp = a;
        T fp = f(xp);
        for (int k = 1; k <= panels; ++k) {
            T xk = a + (b - a) * T(k) / T(panels);
            if (k == panels) xk = b;
            T fk = f(xk);
            if ((fp < T(0) && fk > T(0)) || (fp > T(0) && fk < T(0))) {
                brackets.emplace_back(xp, xk);
                bracket_vals.emplace_back(fp, fk);
            } else if (fk == T(0) && k < panels) {
                // grid hit a zero exactly; bracket it against neighbors
                T xr = a + (b - a) * T(k) + T(0.5) * (b - a) / T(panels);
                T eps_step = (b - a) / T(4 * panels);
                brackets.emplace_back(xk - eps_step, xk + eps_step);
                bracket_vals.emplace_back(f(xk - eps_step), f(xk + eps_step));
                (void)xr;
            }
            xp = xk;
            fp = fk;
        }
        int found = static_cast<int>(brackets.size());
        if (found == count)
            ++stable;
        else
            stable = 0;
        count = found;
        if (stable >= 2) break;
        if (panels >= (1 << 16)) break;
        panels *= 2;
    }

    if (count != expected)
        throw RootCountMismatchError(count, expected,
                                     "sign-change scan found " + std::to_string(count) + " roots, expected " +
                                         std::to_string(expected));

    std::vector<T> roots;
    roots.reserve(expected);
    for (size_t i = 0; i < brackets.size(); ++i) {
        T lo = brackets[i].first, hi = brackets[i].second;
        T flo = bracket_vals[i].first, fhi = bracket_vals[i].second;
        // |f| scale near the root: bracket values plus the secant slope
        // extrapolated over the whole interval
        T slope = fabs(fhi - flo) / (hi - lo);
        T scale = fabs(flo) > fabs(fhi) ? fabs(flo) : fabs(fhi);
        if (slope * (b - a) > scale) scale = slope * (b - a);
        if (scale == T(0)) scale = T(1);
        // bisection to a narrow bracket, then secant for the remaining digits
        for (int it = 0; it < RealTraits<T>::mantissa_bits + 16; ++it) {
            T mid = (lo + hi) / T(2);
            if (mid == lo || mid == hi) break;
            T fm = f(mid);
            if (fm == T(0)) {
                lo = hi = mid;
                break;
            }
            if ((flo < T(0)) != (fm < T(0))) {
                hi = mid;
                fhi = fm;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        T r = (lo + hi) / T(2);
        // secant polish
        T x0 = lo, x1 = hi, f0 = flo, f1 = fhi;
        for (int it = 0; it < 12 && f1 != f0; ++it) {
            T x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if (!(x2 > a && x2 < b)) break;
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = f(x1);
            if (fabs(f1) <= root_tol * scale) break;
        }
        if (fabs(f1) < fabs(f(r))) r = x1;
        T fr = fabs(f(r));
        if (!(fr <= root_tol * scale) && !(fr <= T(64) * noise_floor))
            throw NotConvergedError("root polish did not reach tolerance");
        roots.push_back(r);
    }
    return roots;
}

inline std::vector<double> roots_in_interval_d(const std::function<double(double)>& f, const Interval& iv,
                                               int expected, const PrecisionConfig& cfg) {
    return roots_in_interval<double>(f, iv, expected, cfg);
}

} // namespace nikmop

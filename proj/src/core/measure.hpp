#pragma once

// Measures dmu = w(x) dx on an interval and their discretizations. A measure
// is discretized panel by panel: the interval is split at interior zeros of
// abs-factors, and each panel gets a Gauss-Jacobi rule whose endpoint
// exponents absorb the algebraic singularities exactly; the remaining smooth
// part of the weight multiplies the rule weights.

#include <cmath>
#include <functional>
#include <vector>

#include "chebpoly.hpp"
#include "complexx.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "weight.hpp"

namespace nikmop {

struct PrecisionConfig {
    int mantissa_bits = 53;   // 53 or 113 (quadmath binary128)
    int quad_order = 160;     // per-panel Gauss order
    double residual_tol = 1e-12;
    double root_tol = 1e-13;

    static PrecisionConfig for_bits(int bits) {
        PrecisionConfig cfg;
        cfg.mantissa_bits = bits;
        if (bits > 53) {
            cfg.quad_order = 192;
            cfg.residual_tol = 1e-28;
            cfg.root_tol = 1e-30;
        }
        return cfg;
    }

    // Ladder: 53-bit up to |n| = 12, binary128 beyond.
    static PrecisionConfig auto_for_index(int total_degree) {
        PrecisionConfig cfg = for_bits(total_degree <= 12 ? 53 : 113);
        cfg.quad_order = std::max(cfg.quad_order, 4 * total_degree + 16);
        return cfg;
    }

    bool extended() const { return mantissa_bits > 53; }

    void validate(int max_degree) const {
        if (!(residual_tol > 0.0) || !(root_tol > 0.0)) throw ValidationError("tolerances must be positive");
        if (quad_order < 4 * max_degree + 16)
            throw ValidationError("quad_order must be at least 4*max_degree + 16");
        if (mantissa_bits != 53 && mantissa_bits < 113)
            throw ValidationError("mantissa_bits must be 53 or an extended precision >= 113");
    }
};

struct MeasureSpec {
    Interval interval;
    WeightExpr weight;

    MeasureSpec(Interval iv, WeightExpr w) : interval(iv), weight(std::move(w)) { weight.validate(interval); }

    static MeasureSpec lebesgue(Interval iv) { return MeasureSpec(iv, WeightExpr::one()); }
    static MeasureSpec arcsine(Interval iv) { return MeasureSpec(iv, WeightExpr::jacobi(-0.5, -0.5)); }

    MeasureSpec with_extra_weight(const WeightExpr& rho) const { return MeasureSpec(interval, weight * rho); }
};

// Discrete proxy sum W_i f(x_i) for integrals against the measure.
template <class T>
struct DiscreteMeasure {
    std::vector<T> x;
    std::vector<T> w;

    size_t size() const { return x.size(); }

    template <class F>
    auto sum(F&& f) const -> decltype(f(T())) {
        using R = decltype(f(T()));
        R s{};
        for (size_t i = 0; i < x.size(); ++i) s = s + w[i] * f(x[i]);
        return s;
    }

    T total_abs() const {
        T s = T(0);
        for (T v : w) s = s + fabs(v);
        return s;
    }
};

template <class T>
inline DiscreteMeasure<T> discretize(const MeasureSpec& mu, int order) {
    const Interval& iv = mu.interval;
    std::vector<T> refined;
    auto sing = mu.weight.interior_singularities<T>(iv, &refined);

    struct ZeroRef {
        const Poly* poly;
        int multiplicity;
        double gamma;
        T root;
    };
    // Panel boundary: location, total exponent, and every abs-factor zero
    // sitting there (distinct factors may share a zero).
    struct Cut {
        T x;
        double exponent = 0.0;
        std::vector<ZeroRef> zeros;
    };
    std::vector<Cut> cuts;
    Cut left{T(iv.a), 0.0, {}}, right{T(iv.b), 0.0, {}};
    mu.weight.edge_exponents(right.exponent, left.exponent);

    for (size_t i = 0; i < sing.size(); ++i) {
        ZeroRef zr{sing[i].poly, sing[i].multiplicity, sing[i].gamma, refined[i]};
        if (sing[i].x <= iv.a) {
            left.exponent += sing[i].exponent;
            left.zeros.push_back(zr);
        } else if (sing[i].x >= iv.b) {
            right.exponent += sing[i].exponent;
            right.zeros.push_back(zr);
        } else {
            bool merged = false;
            for (auto& cut : cuts) {
                if (fabs(cut.x - refined[i]) < T(1e-13 * iv.length())) {
                    cut.exponent += sing[i].exponent;
                    cut.zeros.push_back(zr);
                    merged = true;
                    break;
                }
            }
            if (!merged) cuts.push_back(Cut{refined[i], sing[i].exponent, {zr}});
        }
    }
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.x < b.x; });
    cuts.insert(cuts.begin(), left);
    cuts.push_back(right);

    DiscreteMeasure<T> out;
    const int npanels = static_cast<int>(cuts.size()) - 1;
    for (int p = 0; p < npanels; ++p) {
        const Cut& lo = cuts[p];
        const Cut& hi = cuts[p + 1];
        double lam_c = lo.exponent;
        double lam_d = hi.exponent;
        bool lo_is_a = (p == 0), hi_is_b = (p == npanels - 1);

        const QuadRule<T>& rule = gauss_jacobi<T>(order, lam_d, lam_c);
        T mid = (lo.x + hi.x) / T(2), h = (hi.x - lo.x) / T(2);
        T scale = pow(h, T(lam_c + lam_d + 1.0));

        for (int i = 0; i < order; ++i) {
            T x = mid + h * rule.x[i];
            // smooth remainder of the weight: the panel's singular endpoint
            // behavior divided out factor by factor
            T s = T(1);
            for (const auto& f : mu.weight.factors()) {
                if (auto cf = std::get_if<ConstantFactor>(&f)) {
                    s = s * T(cf->value);
                } else if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
                    if (!hi_is_b && j->alpha != 0.0) s = s * pow(T(iv.b) - x, T(j->alpha));
                    if (!lo_is_a && j->beta != 0.0) s = s * pow(x - T(iv.a), T(j->beta));
                } else if (auto a = std::get_if<AbsPolyFactor>(&f)) {
                    T v = fabs(a->p.eval(x));
                    for (const Cut* end : {&lo, &hi}) {
                        for (const ZeroRef& zr : end->zeros) {
                            if (zr.poly != &a->p) continue;
                            for (int m = 0; m < zr.multiplicity; ++m) v = v / fabs(x - zr.root);
                        }
                    }
                    s = s * pow(v, T(a->gamma));
                } else if (auto e = std::get_if<ExpPolyFactor>(&f)) {
                    s = s * exp(e->p.eval(x));
                } else if (auto r = std::get_if<RationalFactor>(&f)) {
                    s = s * (r->num.eval(x) / r->den.eval(x));
                }
            }
            out.x.push_back(x);
            out.w.push_back(scale * rule.w[i] * s);
        }
    }
    return out;
}

// integral of f against mu with a doubled-order consistency check
template <class T, class F>
inline T integrate(F&& f, const MeasureSpec& mu, const PrecisionConfig& cfg) {
    auto d1 = discretize<T>(mu, cfg.quad_order);
    auto d2 = discretize<T>(mu, 2 * cfg.quad_order);
    T i1 = T(0), i2 = T(0), a2 = T(0);
    for (size_t i = 0; i < d1.size(); ++i) {
        T v = f(d1.x[i]);
        if (!isfinite(v)) throw NonFiniteError("integrand is not finite at a quadrature node");
        i1 = i1 + d1.w[i] * v;
    }
    for (size_t i = 0; i < d2.size(); ++i) {
        T v = f(d2.x[i]);
        if (!isfinite(v)) throw NonFiniteError("integrand is not finite at a quadrature node");
        i2 = i2 + d2.w[i] * v;
        a2 = a2 + fabs(d2.w[i] * v);
    }
    T scale = fabs(i2) > a2 ? fabs(i2) : a2;
    if (scale == T(0)) scale = T(1);
    if (fabs(i2 - i1) > T(10.0 * cfg.residual_tol) * scale)
        throw NotConvergedError("quadrature did not converge under order doubling");
    return i2;
}

inline double integrate_d(const std::function<double(double)>& f, const MeasureSpec& mu, const PrecisionConfig& cfg) {
    return integrate<double>(f, mu, cfg);
}

namespace detail {

// integral_0^pi log|x(theta) - c| dtheta = pi log(h * max(|v|,1) / 2) where
// v = chat + sqrt(chat^2 - 1) on the unit-scaled interval; for c on the
// interval both branches are unimodular and the value is pi log(h/2).
inline double log_dist_integral(const Interval& iv, std::complex<double> c) {
    std::complex<double> chat = (c - iv.mid()) / iv.half();
    std::complex<double> s = std::sqrt(chat * chat - 1.0);
    double m = std::max(std::abs(chat + s), std::abs(chat - s));
    m = std::max(m, 1.0);
    return M_PI * std::log(iv.half() * m / 2.0);
}

} // namespace detail

// integral_I log w(x) dx / sqrt((b-x)(x-a)); closed forms per factor, with an
// exact Chebyshev-weight Gauss rule for the exp-poly part.
inline double log_equilibrium_integral(const WeightExpr& w, const Interval& iv) {
    double total = 0.0;
    for (const auto& f : w.factors()) {
        if (auto c = std::get_if<ConstantFactor>(&f)) {
            total += M_PI * std::log(c->value);
        } else if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
            total += (j->alpha + j->beta) * M_PI * std::log(iv.half() / 2.0);
        } else if (auto a = std::get_if<AbsPolyFactor>(&f)) {
            double s = M_PI * std::log(std::fabs(a->p.lead()));
            for (const auto& r : poly_roots(a->p)) s += detail::log_dist_integral(iv, r);
            total += a->gamma * s;
        } else if (auto e = std::get_if<ExpPolyFactor>(&f)) {
            int n = std::max(16, e->p.degree() + 2);
            const auto& rule = gauss_jacobi<double>(n, -0.5, -0.5);
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += rule.w[i] * e->p.eval(iv.mid() + iv.half() * rule.x[i]);
            total += s;
        } else if (auto r = std::get_if<RationalFactor>(&f)) {
            double s = M_PI * (std::log(std::fabs(r->num.lead())) - std::log(std::fabs(r->den.lead())));
            for (const auto& z : poly_roots(r->num)) s += detail::log_dist_integral(iv, z);
            for (const auto& z : poly_roots(r->den)) s -= detail::log_dist_integral(iv, z);
            total += s;
        }
    }
    return total;
}

} // namespace nikmop

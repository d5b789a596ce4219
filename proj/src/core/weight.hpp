#pragma once

// Weight expressions: ordered products of the five factor classes
//   const(c)            c > 0
//   jacobi(alpha,beta)  (b-x)^alpha (x-a)^beta on the host interval
//   abs(p)^gamma        |p(x)|^gamma, p a real polynomial, gamma > 0
//   exp(p)              exp(p(x))
//   rat(num,den)        num/den, both zero-free on the host interval
// The factor structure is what lets the quadrature and Szego layers treat
// algebraic and logarithmic endpoint/interior singularities exactly.

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "interval.hpp"
#include "poly.hpp"
#include "real.hpp"

namespace nikmop {

struct ConstantFactor {
    double value;
};
struct JacobiEdgeFactor {
    double alpha;
    double beta;
};
struct AbsPolyFactor {
    Poly p;
    double gamma;
};
struct ExpPolyFactor {
    Poly p;
};
struct RationalFactor {
    Poly num;
    Poly den;
};

using WeightFactor = std::variant<ConstantFactor, JacobiEdgeFactor, AbsPolyFactor, ExpPolyFactor, RationalFactor>;

// A real zero of an abs-factor polynomial lying on (or at the edge of) the
// host interval, with the exponent it contributes to the weight there.
struct SingularPoint {
    double x;
    double exponent;     // multiplicity * gamma
    int multiplicity;    // of the polynomial zero
    const Poly* poly;    // owning abs-factor polynomial
    double gamma;
};

class WeightExpr {
public:
    WeightExpr() = default;
    explicit WeightExpr(std::vector<WeightFactor> fs) : factors_(std::move(fs)) {}

    static WeightExpr constant(double c) { return WeightExpr({ConstantFactor{c}}); }
    static WeightExpr one() { return constant(1.0); }
    static WeightExpr jacobi(double alpha, double beta) { return WeightExpr({JacobiEdgeFactor{alpha, beta}}); }
    static WeightExpr abs_poly(Poly p, double gamma) { return WeightExpr({AbsPolyFactor{std::move(p), gamma}}); }
    static WeightExpr exp_poly(Poly p) { return WeightExpr({ExpPolyFactor{std::move(p)}}); }
    static WeightExpr rational(Poly num, Poly den) { return WeightExpr({RationalFactor{std::move(num), std::move(den)}}); }

    const std::vector<WeightFactor>& factors() const { return factors_; }
    bool trivially_one() const;

    WeightExpr operator*(const WeightExpr& o) const {
        std::vector<WeightFactor> fs(factors_);
        fs.insert(fs.end(), o.factors_.begin(), o.factors_.end());
        return WeightExpr(std::move(fs));
    }

    void validate(const Interval& iv) const;

    // Full product value. Zero exactly at abs-factor roots and, for positive
    // edge exponents, at the endpoints.
    template <class T>
    T eval(const Interval& iv, T x) const {
        T v = T(1);
        for (const auto& f : factors_) {
            if (auto c = std::get_if<ConstantFactor>(&f)) {
                v = v * T(c->value);
            } else if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
                T bx = T(iv.b) - x, xa = x - T(iv.a);
                if (j->alpha != 0.0) v = v * pow(bx, T(j->alpha));
                if (j->beta != 0.0) v = v * pow(xa, T(j->beta));
            } else if (auto a = std::get_if<AbsPolyFactor>(&f)) {
                v = v * pow(fabs(a->p.eval(x)), T(a->gamma));
            } else if (auto e = std::get_if<ExpPolyFactor>(&f)) {
                v = v * exp(e->p.eval(x));
            } else if (auto r = std::get_if<RationalFactor>(&f)) {
                v = v * (r->num.eval(x) / r->den.eval(x));
            }
        }
        return v;
    }

    // Real roots of abs-factor polynomials inside the host interval, grouped
    // into multiplicity clusters, refined to T precision by Newton.
    template <class T>
    std::vector<SingularPoint> interior_singularities(const Interval& iv, std::vector<T>* refined = nullptr) const;

    // Sum of Jacobi-edge exponents (alpha_total at b, beta_total at a).
    void edge_exponents(double& alpha_total, double& beta_total) const;

    std::string canonical_text() const;

private:
    std::vector<WeightFactor> factors_;
};

inline bool WeightExpr::trivially_one() const {
    for (const auto& f : factors_) {
        if (auto c = std::get_if<ConstantFactor>(&f)) {
            if (c->value != 1.0) return false;
        } else if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
            if (j->alpha != 0.0 || j->beta != 0.0) return false;
        } else {
            return false;
        }
    }
    return true;
}

inline void WeightExpr::edge_exponents(double& alpha_total, double& beta_total) const {
    alpha_total = beta_total = 0.0;
    for (const auto& f : factors_) {
        if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
            alpha_total += j->alpha;
            beta_total += j->beta;
        }
    }
}

namespace detail {

// Cluster the real roots of p lying in [iv.a - pad, iv.b + pad] into
// multiplicity groups.
inline std::vector<std::pair<double, int>> clustered_real_roots(const Poly& p, const Interval& iv, double pad) {
    std::vector<double> reals;
    for (const auto& r : poly_roots(p)) {
        if (r.imag() != 0.0) continue;
        double x = r.real();
        if (x >= iv.a - pad && x <= iv.b + pad) reals.push_back(x);
    }
    std::sort(reals.begin(), reals.end());
    std::vector<std::pair<double, int>> out;
    const double tol = 1e-8 * (1.0 + iv.length());
    for (size_t i = 0; i < reals.size();) {
        size_t j = i + 1;
        double sum = reals[i];
        while (j < reals.size() && reals[j] - reals[i] < tol) sum += reals[j++];
        out.emplace_back(sum / static_cast<double>(j - i), static_cast<int>(j - i));
        i = j;
    }
    return out;
}

template <class T>
inline T refine_poly_root(const Poly& p, double x0, int multiplicity) {
    T x = T(x0);
    Poly dp = p.derivative();
    for (int it = 0; it < 8; ++it) {
        T f = p.eval(x);
        T d = dp.eval(x);
        if (d == T(0)) break;
        x = x - T(multiplicity) * f / d;
    }
    return x;
}

} // namespace detail

template <class T>
inline std::vector<SingularPoint> WeightExpr::interior_singularities(const Interval& iv, std::vector<T>* refined) const {
    std::vector<SingularPoint> pts;
    if (refined) refined->clear();
    for (const auto& f : factors_) {
        auto a = std::get_if<AbsPolyFactor>(&f);
        if (!a) continue;
        double pad = 1e-12 * iv.length();
        for (const auto& [x, mult] : detail::clustered_real_roots(a->p, iv, pad)) {
            SingularPoint sp;
            sp.x = std::clamp(x, iv.a, iv.b);
            sp.exponent = mult * a->gamma;
            sp.multiplicity = mult;
            sp.poly = &a->p;
            sp.gamma = a->gamma;
            pts.push_back(sp);
            if (refined) refined->push_back(detail::refine_poly_root<T>(a->p, sp.x, mult));
        }
    }
    return pts;
}

inline void WeightExpr::validate(const Interval& iv) const {
    for (const auto& f : factors_) {
        if (auto c = std::get_if<ConstantFactor>(&f)) {
            if (!(c->value > 0.0)) throw ValidationError("const() factor must be positive");
        } else if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
            if (!(j->alpha > -1.0) || !(j->beta > -1.0))
                throw ValidationError("jacobi() exponents must exceed -1");
        } else if (auto a = std::get_if<AbsPolyFactor>(&f)) {
            if (!(a->gamma > 0.0)) throw ValidationError("abs() exponent must be positive");
            if (a->p.is_zero()) throw ValidationError("abs() polynomial must be nonzero");
        } else if (auto r = std::get_if<RationalFactor>(&f)) {
            if (r->num.is_zero() || r->den.is_zero()) throw ValidationError("rat() polynomials must be nonzero");
            for (const Poly* q : {&r->num, &r->den}) {
                for (const auto& z : poly_roots(*q)) {
                    if (z.imag() == 0.0 && iv.contains(z.real()))
                        throw ValidationError("rat() polynomial has a zero inside the host interval");
                }
            }
            // positivity of the ratio on a sample grid
            for (int k = 0; k <= 32; ++k) {
                double x = iv.a + iv.length() * k / 32.0;
                if (!(r->num.eval(x) / r->den.eval(x) > 0.0))
                    throw ValidationError("rat() factor is not positive on the host interval");
            }
        }
    }
    // overall nonnegativity spot check
    for (int k = 1; k < 64; ++k) {
        double x = iv.a + iv.length() * k / 64.0;
        double v = eval(iv, x);
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("weight is not finite and nonnegative on the interval");
    }
}

inline std::string WeightExpr::canonical_text() const {
    std::string s;
    bool first = true;
    for (const auto& f : factors_) {
        if (!first) s += " * ";
        first = false;
        if (auto c = std::get_if<ConstantFactor>(&f)) {
            s += "const(" + real_to_string(c->value) + ")";
        } else if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
            s += "jacobi(" + real_to_string(j->alpha) + "," + real_to_string(j->beta) + ")";
        } else if (auto a = std::get_if<AbsPolyFactor>(&f)) {
            s += "abs(" + poly_to_text(a->p) + ")^" + real_to_string(a->gamma);
        } else if (auto e = std::get_if<ExpPolyFactor>(&f)) {
            s += "exp(" + poly_to_text(e->p) + ")";
        } else if (auto r = std::get_if<RationalFactor>(&f)) {
            s += "rat(" + poly_to_text(r->num) + "," + poly_to_text(r->den) + ")";
        }
    }
    if (s.empty()) s = "const(1)";
    return s;
}

} // namespace nikmop

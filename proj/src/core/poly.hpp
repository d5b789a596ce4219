#pragma once

// Dense real polynomials in the monomial basis. Only used for the small,
// config-supplied polynomials inside weight expressions (perturbation
// factors, rational weights); everything degree-bearing in the solvers lives
// in the Chebyshev basis (see chebpoly.hpp).

#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "real.hpp"

namespace nikmop {

struct Poly {
    std::vector<double> c; // c[k] multiplies x^k

    Poly() : c{0.0} {}
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.push_back(0.0);
        trim();
    }

    void trim() {
        while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.size() == 1 && c[0] == 0.0; }
    double lead() const { return c.back(); }

    template <class T>
    T eval(T x) const {
        T r = T(c.back());
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) r = r * x + T(c[k]);
        return r;
    }

    std::complex<double> eval_c(std::complex<double> x) const {
        std::complex<double> r = c.back();
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) r = r * x + c[k];
        return r;
    }

    Poly derivative() const {
        if (degree() == 0) return Poly();
        std::vector<double> d(c.size() - 1);
        for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
        return Poly(std::move(d));
    }

    Poly operator*(const Poly& o) const {
        std::vector<double> r(c.size() + o.c.size() - 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        return Poly(std::move(r));
    }

    Poly operator+(const Poly& o) const {
        std::vector<double> r(std::max(c.size(), o.c.size()), 0.0);
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
        return Poly(std::move(r));
    }

    Poly scaled(double s) const {
        std::vector<double> r(c);
        for (double& v : r) v *= s;
        return Poly(std::move(r));
    }

    // Synthetic division by (x - r); remainder discarded (caller guarantees r
    // is a root to working precision).
    Poly deflated(double r) const {
        std::vector<double> q(c.size() - 1);
        double carry = c.back();
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
            q[k] = carry;
            carry = c[k] + carry * r;
        }
        return Poly(std::move(q));
    }
};

// All complex roots by the Durand-Kerner (Weierstrass) iteration, refined by
// Newton. Intended for the low-degree polynomials of the weight grammar.
inline std::vector<std::complex<double>> poly_roots(const Poly& p_in) {
    Poly p = p_in;
    p.trim();
    int n = p.degree();
    std::vector<std::complex<double>> roots;
    if (n <= 0 || p.is_zero()) return roots;

    std::vector<double> monic(p.c);
    for (double& v : monic) v /= p.lead();

    double radius = 1.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, 2.0 * std::pow(std::fabs(monic[k]), 1.0 / (n - k)));

    roots.resize(n);
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * M_PI * (k + 0.25) / n;
        roots[k] = std::polar(0.7 * radius, ang);
    }

    auto eval_monic = [&](std::complex<double> x) {
        std::complex<double> r = 1.0;
        for (int k = n - 1; k >= 0; --k) r = r * x + monic[k];
        return r;
    };

    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            std::complex<double> step = eval_monic(roots[i]) / denom;
            roots[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14 * radius) break;
    }

    Poly dp = p_in.derivative();
    for (auto& r : roots) {
        for (int it = 0; it < 5; ++it) {
            std::complex<double> d = dp.eval_c(r);
            if (std::abs(d) == 0.0) break;
            r -= p_in.eval_c(r) / d;
        }
        if (std::fabs(r.imag()) < 1e-11 * (1.0 + std::fabs(r.real()))) r = {r.real(), 0.0};
    }
    return roots;
}

inline std::string poly_to_text(const Poly& p) {
    std::string s = "poly(";
    for (size_t k = 0; k < p.c.size(); ++k) {
        if (k) s += ",";
        s += real_to_string(p.c[k]);
    }
    return s + ")";
}

} // namespace nikmop

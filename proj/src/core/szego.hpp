#pragma once

// Szego-type functions on an interval [a,b]:
//
//   G(rho; z) = exp( R(z)/(2 pi) * integral_a^b log rho(x) / (x - z)
//                                  dx / sqrt((b-x)(x-a)) ),
//
// R(z) = sqrt((z-b)(z-a)) positive for z > b. The cosine substitution
// collapses the equilibrium density to dtheta. Constant factors and
// |x - c|^g factors with c on the interval (this covers Jacobi edge factors
// and interior zeros of abs-factors) are evaluated in closed form through
// the conformal map v = zhat + sqrt(zhat^2 - 1); everything smooth goes
// through a periodic trapezoid rule in theta.

#include <functional>
#include <utility>
#include <vector>

#include "complexx.hpp"
#include "gridfn.hpp"
#include "measure.hpp"

namespace nikmop {

class SzegoFn {
public:
    // weight = expr * exp(extra_log); extra_log must be smooth on the interval
    static SzegoFn build(Interval iv, const WeightExpr& w, std::function<double(double)> extra_log,
                         int min_samples = 256) {
        SzegoFn s(iv);
        for (const auto& f : w.factors()) {
            if (auto c = std::get_if<ConstantFactor>(&f)) {
                s.log_const_ += std::log(c->value);
            } else if (auto j = std::get_if<JacobiEdgeFactor>(&f)) {
                if (j->alpha != 0.0) s.closed_.push_back({1.0, j->alpha});
                if (j->beta != 0.0) s.closed_.push_back({-1.0, j->beta});
            } else if (auto a = std::get_if<AbsPolyFactor>(&f)) {
                s.log_const_ += a->gamma * std::log(std::fabs(a->p.lead()));
                for (const auto& r : poly_roots(a->p)) {
                    double chat_re = (r.real() - iv.mid()) / iv.half();
                    if (r.imag() == 0.0 && std::fabs(chat_re) <= 1.0 + 1e-12) {
                        s.closed_.push_back({std::clamp(chat_re, -1.0, 1.0), a->gamma});
                    } else {
                        s.smooth_roots_.push_back({{r.real(), r.imag()}, a->gamma});
                    }
                }
            } else if (auto e = std::get_if<ExpPolyFactor>(&f)) {
                s.smooth_polys_.push_back(e->p);
            } else if (auto r = std::get_if<RationalFactor>(&f)) {
                s.smooth_ratios_.push_back({r->num, r->den});
            }
        }
        s.extra_log_ = std::move(extra_log);
        s.init_samples(min_samples);
        return s;
    }

    static SzegoFn from_weight(Interval iv, const WeightExpr& w) { return build(iv, w, nullptr); }

    // grid-sampled positive weight (values at Lobatto points of iv)
    static SzegoFn from_values(Interval iv, const std::vector<double>& values) {
        for (double v : values)
            if (!(v > 0.0)) throw NonPositiveWeightError("grid-sampled Szego weight has a nonpositive sample");
        std::vector<double> logs(values.size());
        for (size_t k = 0; k < values.size(); ++k) logs[k] = std::log(values[k]);
        GridFn g(iv, std::move(logs));
        SzegoFn s(iv);
        s.extra_log_ = [g](double x) { return g(x); };
        s.init_samples(std::max<int>(256, 2 * static_cast<int>(values.size())));
        return s;
    }

    const Interval& interval() const { return iv_; }

    CplxD eval(CplxD z) const {
        if (dist_to_interval(iv_, z.re, z.im) < 1e-12 * iv_.length())
            throw EvalOnSupportError("Szego function evaluated on its interval");
        return eval_unchecked(z, /*subtract=*/false);
    }

    double eval_real(double x) const {
        CplxD v = eval({x, 0.0});
        return v.re;
    }

    double eval_infinity() const {
        double total = M_PI * log_const_;
        for (const auto& [chat, g] : closed_) total += g * M_PI * std::log(iv_.half() / 2.0);
        total += smooth_mass_;
        return std::exp(-total / (2.0 * M_PI));
    }

    // value of the represented weight at an interior continuity point
    double weight_value(double x) const {
        double chx = (x - iv_.mid()) / iv_.half();
        double v = std::exp(log_const_);
        for (const auto& [chat, g] : closed_) v *= std::pow(iv_.half() * std::fabs(chx - chat), g);
        if (has_smooth_part()) v *= std::exp(smooth_log(x));
        return v;
    }

    // (lim_{y->0+} |G(x+iy)|^2, 1/rho(x)) by Richardson extrapolation over a
    // geometric y-ladder; test oracle, not a production evaluator.
    std::pair<double, double> boundary_modulus_check(double x) const {
        if (!(x > iv_.a && x < iv_.b)) throw Error(ErrCode::BadArgument, "boundary check needs an interior point");
        double rho_x = weight_value(x);
        if (!(rho_x > 0.0)) throw Error(ErrCode::BadArgument, "boundary check needs a positive continuity point");

        const int J = 7;
        std::vector<double> y(J), g(J);
        for (int j = 0; j < J; ++j) {
            y[j] = iv_.half() * std::pow(2.0, -(j + 2));
            CplxD v = eval_unchecked({x, y[j]}, /*subtract=*/true, 8192);
            g[j] = norm2(v);
        }
        // Neville extrapolation to y = 0
        std::vector<double> t(g);
        double prev = t[J - 1];
        for (int m = 1; m < J; ++m) {
            for (int j = J - 1; j >= m; --j) t[j] = t[j] + (t[j] - t[j - 1]) / (y[j - m] / y[j] - 1.0);
            if (m >= 2) {
                double cur = t[J - 1];
                if (std::fabs(cur - prev) < 1e-9 * (1.0 + std::fabs(cur))) return {cur, 1.0 / rho_x};
                prev = cur;
            }
        }
        double cur = t[J - 1];
        if (!(std::fabs(cur - prev) < 1e-6 * (1.0 + std::fabs(cur))))
            throw NotConvergedError("boundary-modulus ladder did not stabilize");
        return {cur, 1.0 / rho_x};
    }

private:
    explicit SzegoFn(Interval iv) : iv_(iv) {}

    bool has_smooth_part() const {
        return extra_log_ || !smooth_roots_.empty() || !smooth_polys_.empty() || !smooth_ratios_.empty();
    }

    double smooth_log(double x) const {
        double s = 0.0;
        for (const auto& [c, g] : smooth_roots_) {
            double dx = x - c.re;
            s += 0.5 * g * std::log(dx * dx + c.im * c.im);
        }
        for (const auto& p : smooth_polys_) s += p.eval(x);
        for (const auto& [num, den] : smooth_ratios_) s += std::log(num.eval(x) / den.eval(x));
        if (extra_log_) s += extra_log_(x);
        return s;
    }

    void init_samples(int min_samples) {
        if (!has_smooth_part()) {
            smooth_mass_ = 0.0;
            return;
        }
        int M = min_samples;
        double prev_mass = 0.0;
        for (int pass = 0;; ++pass) {
            theta_.resize(M + 1);
            lam_.resize(M + 1);
            for (int k = 0; k <= M; ++k) {
                theta_[k] = M_PI * k / M;
                lam_[k] = smooth_log(iv_.mid() + iv_.half() * std::cos(theta_[k]));
            }
            double mass = 0.5 * (lam_[0] + lam_[M]);
            for (int k = 1; k < M; ++k) mass += lam_[k];
            mass *= M_PI / M;
            if (pass > 0 && std::fabs(mass - prev_mass) < 1e-14 * (1.0 + std::fabs(mass))) {
                smooth_mass_ = mass;
                return;
            }
            prev_mass = mass;
            if (M >= 16384) {
                smooth_mass_ = mass;
                return;
            }
            M *= 2;
        }
    }

    // v = zhat + sqrt(zhat-1) sqrt(zhat+1) (principal square roots): the
    // exterior conformal coordinate, |v| > 1 off the interval.
    CplxD exterior_coord(CplxD zhat) const {
        CplxD s = sqrt(zhat - 1.0) * sqrt(zhat + 1.0);
        return zhat + s;
    }

    CplxD eval_unchecked(CplxD z, bool subtract, int m_override = 0) const {
        double h = iv_.half();
        CplxD zhat = (z - iv_.mid()) / h;
        CplxD R = h * (sqrt(zhat - 1.0) * sqrt(zhat + 1.0));
        CplxD v = zhat + R / h;

        // closed-form factors, all in log space
        CplxD logG{-0.5 * log_const_, 0.0};
        double log2h = 0.5 * std::log(2.0 / h);
        for (const auto& [chat, g] : closed_) {
            double s = std::sqrt(std::max(0.0, 1.0 - chat * chat));
            CplxD u0{chat, s};
            if (s == 0.0) {
                // edge factor: both half-factors coincide
                CplxD w = v / (v - u0);
                logG = logG + g * (CplxD{log2h, 0.0} + log(w));
            } else {
                CplxD w1 = v / (v - u0);
                CplxD w2 = v / (v - conj(u0));
                logG = logG + g * (CplxD{log2h, 0.0} + 0.5 * (log(w1) + log(w2)));
            }
        }

        if (has_smooth_part()) {
            const int M = (m_override > 0) ? m_override : static_cast<int>(theta_.size()) - 1;
            const bool stored = (m_override == 0);
            double lam0 = 0.0;
            if (subtract) lam0 = smooth_log(std::clamp(z.re, iv_.a, iv_.b));
            CplxD acc{0.0, 0.0};
            for (int k = 0; k <= M; ++k) {
                double th = stored ? theta_[k] : M_PI * k / M;
                double xk = iv_.mid() + h * std::cos(th);
                double lk = stored ? lam_[k] : smooth_log(xk);
                CplxD term = CplxD{lk - lam0, 0.0} / (CplxD{xk, 0.0} - z);
                if (k == 0 || k == M) term = 0.5 * term;
                acc = acc + term;
            }
            acc = (M_PI / M) * acc;
            if (subtract) acc = acc + CplxD{lam0, 0.0} * (CplxD{-M_PI, 0.0} / R);
            logG = logG + (1.0 / (2.0 * M_PI)) * (R * acc);
        } else if (subtract) {
            // nothing to subtract; keep the closed-form value
        }
        return exp(logG);
    }

    Interval iv_;
    std::vector<std::pair<double, double>> closed_; // (chat on [-1,1], exponent)
    double log_const_ = 0.0;
    std::vector<std::pair<CplxD, double>> smooth_roots_; // off-interval abs-factor roots
    std::vector<Poly> smooth_polys_;
    std::vector<std::pair<Poly, Poly>> smooth_ratios_;
    std::function<double(double)> extra_log_;
    std::vector<double> theta_, lam_;
    double smooth_mass_ = 0.0;
};

// Operation-level wrappers
inline SzegoFn szego_function(const Interval& iv, const WeightExpr& rho, const PrecisionConfig&) {
    return SzegoFn::from_weight(iv, rho);
}

} // namespace nikmop

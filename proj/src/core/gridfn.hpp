#pragma once

// Positive continuous functions represented by samples at Chebyshev-Lobatto
// points with barycentric interpolation. Double precision only: these carry
// the fixed-point iterates and the smooth parts of Szego weights.

#include <vector>

#include "chebpoly.hpp"
#include "errors.hpp"
#include "interval.hpp"

namespace nikmop {

class GridFn {
public:
    GridFn() : iv_(-1.0, 1.0) {}

    GridFn(Interval iv, std::vector<double> samples) : iv_(iv), v_(std::move(samples)) {
        if (v_.size() < 2) throw Error(ErrCode::BadArgument, "grid needs at least 2 samples");
        x_ = lobatto_points<double>(iv_, static_cast<int>(v_.size()));
    }

    template <class F>
    static GridFn sample(Interval iv, int n_points, F&& f) {
        auto x = lobatto_points<double>(iv, n_points);
        std::vector<double> v(n_points);
        for (int k = 0; k < n_points; ++k) v[k] = f(x[k]);
        return GridFn(iv, std::move(v));
    }

    const Interval& interval() const { return iv_; }
    int size() const { return static_cast<int>(v_.size()); }
    const std::vector<double>& samples() const { return v_; }
    const std::vector<double>& nodes() const { return x_; }

    double operator()(double x) const {
        const int n = size() - 1;
        double num = 0.0, den = 0.0;
        for (int k = 0; k <= n; ++k) {
            double dx = x - x_[k];
            if (dx == 0.0) return v_[k];
            double w = (k == 0 || k == n) ? 0.5 : 1.0;
            if (k % 2) w = -w;
            w /= dx;
            num += w * v_[k];
            den += w;
        }
        return num / den;
    }

    bool all_positive() const {
        for (double s : v_) {
            if (!(s > 0.0)) return false;
        }
        return true;
    }

    // positivity of the interpolant checked at a denser grid
    bool positive_on_interval(int oversample = 4) const {
        if (!all_positive()) return false;
        auto dense = lobatto_points<double>(iv_, oversample * size());
        for (double x : dense) {
            if (!((*this)(x) > 0.0)) return false;
        }
        return true;
    }

private:
    Interval iv_;
    std::vector<double> v_;
    std::vector<double> x_;
};

} // namespace nikmop

#pragma once

// Dense LU with full pivoting plus one pass of iterative refinement. Sizes
// here are tiny (Gram systems up to ~50x50); robustness and a trustworthy
// singularity signal matter more than speed.

#include <vector>

#include "errors.hpp"
#include "real.hpp"

namespace nikmop {

template <class T>
struct Matrix {
    int n = 0, m = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols, T(0)) {}
    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
    T operator()(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }
};

template <class T>
class FullPivLU {
public:
    explicit FullPivLU(Matrix<T> A) : lu_(std::move(A)), n_(lu_.n), rowp_(n_), colp_(n_) {
        if (lu_.n != lu_.m) throw Error(ErrCode::BadArgument, "LU needs a square matrix");
        T anorm = T(0);
        for (const T& v : lu_.a) anorm = anorm > fabs(v) ? anorm : fabs(v);
        for (int i = 0; i < n_; ++i) rowp_[i] = colp_[i] = i;
        for (int k = 0; k < n_; ++k) {
            int pr = k, pc = k;
            T best = T(0);
            for (int i = k; i < n_; ++i)
                for (int j = k; j < n_; ++j)
                    if (fabs(lu_(i, j)) > best) {
                        best = fabs(lu_(i, j));
                        pr = i;
                        pc = j;
                    }
            if (!(best > anorm * real_eps<T>() * T(n_)) || best == T(0))
                throw SingularGramError("pivot collapsed in full-pivot LU");
            swap_rows(k, pr);
            swap_cols(k, pc);
            for (int i = k + 1; i < n_; ++i) {
                lu_(i, k) = lu_(i, k) / lu_(k, k);
                for (int j = k + 1; j < n_; ++j) lu_(i, j) = lu_(i, j) - lu_(i, k) * lu_(k, j);
            }
        }
    }

    std::vector<T> solve(const std::vector<T>& b) const {
        std::vector<T> y(n_);
        for (int i = 0; i < n_; ++i) y[i] = b[rowp_[i]];
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j) y[i] = y[i] - lu_(i, j) * y[j];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < n_; ++j) y[i] = y[i] - lu_(i, j) * y[j];
            y[i] = y[i] / lu_(i, i);
        }
        std::vector<T> x(n_);
        for (int j = 0; j < n_; ++j) x[colp_[j]] = y[j];
        return x;
    }

private:
    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < n_; ++k) std::swap(lu_(i, k), lu_(j, k));
        std::swap(rowp_[i], rowp_[j]);
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < n_; ++k) std::swap(lu_(k, i), lu_(k, j));
        std::swap(colp_[i], colp_[j]);
    }

    Matrix<T> lu_;
    int n_;
    std::vector<int> rowp_, colp_;
};

// Solve A x = b with one refinement sweep; returns the final residual
// relative to |A||x| + |b| through *rel_residual if requested.
template <class T>
inline std::vector<T> solve_refined(const Matrix<T>& A, const std::vector<T>& b, T* rel_residual = nullptr) {
    FullPivLU<T> lu(A);
    std::vector<T> x = lu.solve(b);
    std::vector<T> r(b.size());
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < A.n; ++i) {
            T s = b[i];
            for (int j = 0; j < A.m; ++j) s = s - A(i, j) * x[j];
            r[i] = s;
        }
        auto dx = lu.solve(r);
        for (size_t i = 0; i < x.size(); ++i) x[i] = x[i] + dx[i];
    }
    if (rel_residual) {
        T worst = T(0);
        for (int i = 0; i < A.n; ++i) {
            T s = b[i], scale = fabs(b[i]);
            for (int j = 0; j < A.m; ++j) {
                s = s - A(i, j) * x[j];
                scale = scale + fabs(A(i, j) * x[j]);
            }
            if (scale == T(0)) scale = T(1);
            T rr = fabs(s) / scale;
            if (rr > worst) worst = rr;
        }
        *rel_residual = worst;
    }
    return x;
}

} // namespace nikmop

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Dense two-phase primal simplex for small equality-form LPs:
//   minimize c.x  subject to  A x = b, x >= 0.
// Bland's least-index rule for both entering and leaving variables, so the
// method is deterministic and cannot cycle. Intended for the exact-cover
// relaxations solved by the scheduler (hundreds of rows, thousands of
// columns); returns a vertex (basic) solution so integrality of the
// relaxation is observable directly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "lsas/errors.hpp"

namespace lsas {

struct SimplexResult {
    std::vector<double> x;   // primal vertex, size = number of columns of A
    double objective = 0.0;  // c.x at the vertex
};

namespace detail {

class dense_tableau {
  public:
    // A is row-major m x n; b_i may be negative (rows are flipped on entry).
    dense_tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  std::size_t n)
        : m_(A.size()), n_(n), width_(n + A.size() + 1), t_((A.size() + 1) * (n + A.size() + 1)),
          basis_(A.size()) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (A[i].size() != n_) throw parameter_error("simplex: ragged constraint matrix");
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            double* row = row_ptr(i);
            for (std::size_t j = 0; j < n_; ++j) row[j] = sign * A[i][j];
            row[n_ + i] = 1.0;  // artificial
            row[width_ - 1] = sign * b[i];
            basis_[i] = n_ + i;
        }
    }

    std::size_t rows() const { return m_; }
    double* row_ptr(std::size_t i) { return t_.data() + i * width_; }
    double* cost_row() { return t_.data() + m_ * width_; }
    double rhs(std::size_t i) { return row_ptr(i)[width_ - 1]; }

    // Phase 1: minimize the sum of artificials. Returns the residual.
    double phase1() {
        double* r = cost_row();
        std::fill(r, r + width_, 0.0);
        // Reduced costs for the all-artificial basis: r_j = -sum_i a_ij.
        for (std::size_t i = 0; i < m_; ++i) {
            const double* row = row_ptr(i);
            for (std::size_t j = 0; j < width_; ++j) r[j] -= row[j];
        }
        for (std::size_t i = 0; i < m_; ++i) r[n_ + i] = 0.0;
        iterate(width_ - 1);
        return -r[width_ - 1];  // phase-1 objective value
    }

    // Remove artificials still basic at level zero (pivot out or drop the
    // redundant row), then install the real cost vector and re-optimize.
    void phase2(const std::vector<double>& c) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            double* row = row_ptr(i);
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (std::abs(row[j]) > 1e-9) { enter = j; break; }
            if (enter < n_) {
                pivot(i, enter);
            } else {
                drop_row(i);
                --i;
            }
        }
        double* r = cost_row();
        std::fill(r, r + width_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) r[j] = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double rb = r[basis_[i]];
            if (rb == 0.0) continue;
            const double* row = row_ptr(i);
            for (std::size_t j = 0; j < width_; ++j) r[j] -= rb * row[j];
        }
        iterate(n_);  // artificials may not re-enter
    }

    SimplexResult extract(const std::vector<double>& c) const {
        SimplexResult res;
        res.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) res.x[basis_[i]] = t_[i * width_ + width_ - 1];
        }
        for (std::size_t j = 0; j < n_; ++j) res.objective += c[j] * res.x[j];
        return res;
    }

  private:
    static constexpr double kEnterTol = 1e-9;
    static constexpr double kPivotTol = 1e-11;

    void iterate(std::size_t num_cols) {
        const std::size_t max_iter = 2000 * (m_ + n_) + 10000;
        for (std::size_t it = 0; it < max_iter; ++it) {
            const double* r = cost_row();
            std::size_t enter = width_;
            for (std::size_t j = 0; j < num_cols; ++j) {
                if (r[j] < -kEnterTol) { enter = j; break; }  // Bland: least index
            }
            if (enter == width_) return;  // optimal
            std::size_t leave = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = t_[i * width_ + enter];
                if (a <= kPivotTol) continue;
                const double ratio = t_[i * width_ + width_ - 1] / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave == m_ || basis_[i] < basis_[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave == m_) throw internal_error("simplex: unbounded direction");
            pivot(leave, enter);
        }
        throw internal_error("simplex: iteration limit exceeded");
    }

    void pivot(std::size_t i, std::size_t enter) {
        double* prow = row_ptr(i);
        const double p = prow[enter];
        for (std::size_t j = 0; j < width_; ++j) prow[j] /= p;
        prow[enter] = 1.0;
        for (std::size_t k = 0; k <= m_; ++k) {
            if (k == i) continue;
            double* row = t_.data() + k * width_;
            const double f = row[enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) row[j] -= f * prow[j];
            row[enter] = 0.0;
        }
        basis_[i] = enter;
    }

    void drop_row(std::size_t i) {
        double* dst = row_ptr(i);
        double* last = row_ptr(m_ - 1);
        double* cost = cost_row();
        if (i != m_ - 1) {
            std::copy(last, last + width_, dst);
            basis_[i] = basis_[m_ - 1];
        }
        std::copy(cost, cost + width_, last);  // shift cost row up
        --m_;
        basis_.resize(m_);
        t_.resize((m_ + 1) * width_);
    }

    std::size_t m_, n_, width_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

// Solves min c.x s.t. A x = b, x >= 0. Returns std::nullopt when infeasible
// (phase-1 residual above tolerance); throws internal_error on an unbounded
// direction or a pivot-limit blowout, neither of which a well-posed cover
// instance can produce.
inline std::optional<SimplexResult> solve_equality_lp(const std::vector<std::vector<double>>& A,
                                                      const std::vector<double>& b,
                                                      const std::vector<double>& c) {
    if (A.empty()) return SimplexResult{};
    if (A.size() != b.size()) throw parameter_error("simplex: |b| != rows of A");
    const std::size_t n = c.size();
    detail::dense_tableau tab(A, b, n);
    if (tab.phase1() > 1e-7) return std::nullopt;
    tab.phase2(c);
    return tab.extract(c);
}

}  // namespace lsas

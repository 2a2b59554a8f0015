// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors

#include <cmath>
#include <optional>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "lsas/rng.hpp"
#include "lsas/simplex.hpp"

using namespace lsas;

namespace {

using Matrix = std::vector<std::vector<double>>;

double residual(const Matrix& A, const std::vector<double>& b, const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        double s = -b[i];
        for (std::size_t j = 0; j < x.size(); ++j) s += A[i][j] * x[j];
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

}  // namespace

TEST_CASE("known optima on tiny equality programs") {
    // min -x1 - 2 x2 s.t. x1 + x2 = 1: put everything on x2.
    {
        const auto res = solve_equality_lp({{1, 1}}, {1}, {-1, -2});
        REQUIRE(res.has_value());
        CHECK(res->objective == Catch::Approx(-2.0).margin(1e-9));
        CHECK(res->x[0] == Catch::Approx(0.0).margin(1e-9));
        CHECK(res->x[1] == Catch::Approx(1.0).margin(1e-9));
    }
    // Transport-like system with a unique optimum at a vertex:
    // x1+x2 = 2, x2+x3 = 1, min x1 + 3 x2 + x3 -> x = (2, 0, 1), obj 3.
    {
        const auto res = solve_equality_lp({{1, 1, 0}, {0, 1, 1}}, {2, 1}, {1, 3, 1});
        REQUIRE(res.has_value());
        CHECK(res->objective == Catch::Approx(3.0).margin(1e-9));
        CHECK(res->x[0] == Catch::Approx(2.0).margin(1e-9));
        CHECK(res->x[1] == Catch::Approx(0.0).margin(1e-9));
        CHECK(res->x[2] == Catch::Approx(1.0).margin(1e-9));
    }
    // Negative right-hand sides are handled by row flipping:
    // -x1 = -3 -> x1 = 3.
    {
        const auto res = solve_equality_lp({{-1, 0}, {0, 1}}, {-3, 2}, {1, 1});
        REQUIRE(res.has_value());
        CHECK(res->x[0] == Catch::Approx(3.0).margin(1e-9));
        CHECK(res->x[1] == Catch::Approx(2.0).margin(1e-9));
    }
}

TEST_CASE("infeasible systems return nothing") {
    // x1 = 1 and x1 = 2 cannot hold together.
    CHECK_FALSE(solve_equality_lp({{1}, {1}}, {1, 2}, {0}).has_value());
    // x1 + x2 = -1 with x >= 0 is empty.
    CHECK_FALSE(solve_equality_lp({{1, 1}}, {-1}, {1, 1}).has_value());
}

TEST_CASE("redundant rows are dropped, not fatal") {
    // Second row is the first row doubled.
    const auto res = solve_equality_lp({{1, 1}, {2, 2}}, {1, 2}, {2, 1});
    REQUIRE(res.has_value());
    CHECK(res->objective == Catch::Approx(1.0).margin(1e-9));
    CHECK(res->x[1] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("unbounded directions are reported as internal errors") {
    // x1 - x2 = 0, min -x1: x1 = x2 = t grows without bound.
    CHECK_THROWS_AS(solve_equality_lp({{1, -1}}, {0}, {-1, 0}), internal_error);
}

TEST_CASE("degenerate vertices do not cycle under the least-index rule") {
    // A classic highly-degenerate basis: several rows share rhs 0.
    const Matrix A{{1, 1, 1, 0, 0}, {1, -1, 0, 1, 0}, {2, 0, 1, 1, 1}};
    const std::vector<double> b{0, 0, 0};
    const auto res = solve_equality_lp(A, b, {-1, -1, 0, 0, 0});
    REQUIRE(res.has_value());
    CHECK(res->objective == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("random feasible systems are solved to a feasible vertex") {
    rng::Stream s(404, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + s.next_below(6);
        const std::size_t n = m + s.next_below(8);
        Matrix A(m, std::vector<double>(n));
        for (auto& row : A)
            for (auto& v : row) v = std::floor(5.0 * s.next_unit()) - 1.0;  // in {-1..3}
        // Make feasibility certain: b = A x0 for a random nonnegative x0.
        std::vector<double> x0(n);
        for (auto& v : x0) v = 2.0 * s.next_unit();
        std::vector<double> b(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) b[i] += A[i][j] * x0[j];
        std::vector<double> c(n);
        for (auto& v : c) v = s.next_unit();  // nonnegative costs: bounded below

        const auto res = solve_equality_lp(A, b, c);
        REQUIRE(res.has_value());
        CHECK(residual(A, b, res->x) < 1e-7);
        double obj0 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(res->x[j] >= -1e-9);
            obj0 += c[j] * x0[j];
        }
        // Optimal is no worse than the known feasible point.
        CHECK(res->objective <= obj0 + 1e-7);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(solve_equality_lp({{1, 2}, {1}}, {1, 1}, {0, 0}), parameter_error);
    CHECK_THROWS_AS(solve_equality_lp({{1}}, {1, 2}, {0}), parameter_error);
    const auto empty = solve_equality_lp({}, {}, {});
    REQUIRE(empty.has_value());
    CHECK(empty->x.empty());
}

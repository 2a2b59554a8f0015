// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "lsas/energy.hpp"
#include "lsas/rng.hpp"

using namespace lsas;

namespace {

// Independent maximizer: golden-section search on rate_at over [0, a/b].
double golden_section_u(const CoefficientSet& co) {
    if (co.a <= 0.0 || co.b <= 0.0) return 0.0;
    double lo = 0.0, hi = co.a / co.b;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = rate_at(co, x1), f2 = rate_at(co, x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = rate_at(co, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = rate_at(co, x1);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("coefficients reproduce the pinned ZF operating point") {
    const CoefficientSet co = coefficients(ReceiverKind::ZF, 64, 100, 20, 20, 100.0);
    CHECK(co.a == Catch::Approx(88000.0).epsilon(1e-15));
    CHECK(co.b == Catch::Approx(17600.0).epsilon(1e-15));
    CHECK(co.c == Catch::Approx(2080.0).epsilon(1e-15));
    CHECK(co.d == Catch::Approx(1200.0).epsilon(1e-15));
    CHECK(co.e == 0.0);

    CHECK(optimal_training_energy(co) == Catch::Approx(1.6829674600850553).epsilon(1e-14));
    CHECK(sinr_at(co, optimal_training_energy(co)) ==
          Catch::Approx(23.966287837505047).epsilon(1e-13));
    CHECK(rate_at(co, optimal_training_energy(co)) ==
          Catch::Approx(4.6419094220985935).epsilon(1e-13));

    const CoefficientSet unit = coefficients(ReceiverKind::ZF, 64, 100, 20, 20, 1.0);
    CHECK(optimal_training_energy(unit) == Catch::Approx(0.022075922005612647).epsilon(1e-13));
    CHECK(sinr_at(unit, optimal_training_energy(unit)) ==
          Catch::Approx(0.085772954502029153).epsilon(1e-13));
}

TEST_CASE("balanced frames split the product evenly between the phases") {
    // When N = L + K the optimum is exactly u* = x/(2L) for ZF: with E = 3
    // per unit gain, L = K = 20, N = 40 this is 0.075.
    const CoefficientSet co = coefficients(ReceiverKind::ZF, 64, 40, 20, 20, 3.0);
    CHECK(optimal_training_energy(co) == Catch::Approx(0.075).epsilon(1e-13));
    CHECK(rate_at(co, 0.075) == Catch::Approx(1.161887682376894).epsilon(1e-13));
}

TEST_CASE("closed-form split matches golden-section search in achieved rate") {
    rng::Stream s(2026, 9);
    int checked = 0;
    while (checked < 500) {
        const int N = 3 + static_cast<int>(s.next_below(198));
        const int L = 1 + static_cast<int>(s.next_below(static_cast<std::uint64_t>(N - 1)));
        const int K = 1 + static_cast<int>(s.next_below(40));
        const ReceiverKind r = s.next_below(2) ? ReceiverKind::MRC : ReceiverKind::ZF;
        const int M = r == ReceiverKind::ZF ? K + 1 + static_cast<int>(s.next_below(64))
                                            : 2 + static_cast<int>(s.next_below(64));
        const double x = std::exp(3.0 * s.next_normal());
        const CoefficientSet co = coefficients(r, M, N, K, L, x);
        const double u_closed = optimal_training_energy(co);
        REQUIRE(u_closed >= 0.0);
        REQUIRE(u_closed <= co.a / co.b + 1e-15);
        const double rate_closed = rate_at(co, u_closed);
        const double rate_golden = rate_at(co, golden_section_u(co));
        INFO("r=" << to_string(r) << " M=" << M << " N=" << N << " K=" << K << " L=" << L
                  << " x=" << x);
        CHECK(rate_closed >= rate_golden - 1e-6 * std::max(rate_golden, 1e-30));
        CHECK(std::abs(rate_closed - rate_golden) <= 1e-6 * std::max(rate_golden, 1e-30));
        ++checked;
    }
}

TEST_CASE("maximizer is continuous through the degenerate discriminant") {
    // Perturb d so that b*d - a*e crosses zero; u* must move smoothly through
    // the a/(2b) midpoint.
    CoefficientSet co = coefficients(ReceiverKind::MRC, 32, 100, 30, 10, 5.0);
    const double d0 = co.a * co.e / co.b;  // makes the discriminant vanish
    co.d = d0;
    const double mid = optimal_training_energy(co);
    CHECK(mid == Catch::Approx(0.5 * co.a / co.b).epsilon(1e-12));
    co.d = d0 * (1.0 + 1e-9);
    const double up = optimal_training_energy(co);
    co.d = d0 * (1.0 - 1e-9);
    const double dn = optimal_training_energy(co);
    CHECK(std::abs(up - mid) < 1e-6 * mid);
    CHECK(std::abs(dn - mid) < 1e-6 * mid);
}

TEST_CASE("degenerate products yield zero rate, not errors") {
    const CoefficientSet co = coefficients(ReceiverKind::ZF, 16, 50, 4, 10, 0.0);
    CHECK(optimal_training_energy(co) == 0.0);
    CHECK(sinr_at(co, 0.0) == 0.0);
    CHECK(group_sinr_value(ReceiverKind::ZF, 16, 50, 4, 10, 0.0) == 0.0);
    // ZF with K = M: zero spatial degrees of freedom, zero rate.
    CHECK(group_rate_value(ReceiverKind::ZF, 8, 50, 8, 10, 5.0) == 0.0);
}

TEST_CASE("coefficient construction validates its inputs") {
    CHECK_THROWS_AS(coefficients(ReceiverKind::ZF, 16, 50, 4, 0, 1.0), parameter_error);
    CHECK_THROWS_AS(coefficients(ReceiverKind::ZF, 16, 50, 4, 50, 1.0), parameter_error);
    CHECK_THROWS_AS(coefficients(ReceiverKind::ZF, 16, 50, 0, 10, 1.0), parameter_error);
    CHECK_THROWS_AS(coefficients(ReceiverKind::ZF, 16, 50, 4, 10, -1.0), parameter_error);
    CHECK_THROWS_AS(coefficients(ReceiverKind::ZF, 3, 50, 4, 10, 1.0), infeasible_group_error);
    CHECK_THROWS_AS(coefficients(ReceiverKind::MRC, 1, 50, 4, 10, 1.0), parameter_error);
}

TEST_CASE("group allocations satisfy power control and the energy budget") {
    rng::Stream s(77, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const int N = 10 + static_cast<int>(s.next_below(90));
        const int L = 1 + static_cast<int>(s.next_below(static_cast<std::uint64_t>(N - 1)));
        const int K = 1 + static_cast<int>(s.next_below(8));
        const ReceiverKind r = trial % 2 ? ReceiverKind::MRC : ReceiverKind::ZF;
        const int M = r == ReceiverKind::ZF ? K + 1 + static_cast<int>(s.next_below(16))
                                            : 2 + static_cast<int>(s.next_below(16));
        UserSet group;
        for (int j = 0; j < K; ++j)
            group.push_back({j + 1, std::exp(s.next_normal()), std::exp(s.next_normal())});

        const GroupRateResult res = group_rate(r, M, N, L, group);
        REQUIRE(res.allocations.size() == group.size());
        double min_product = group[0].product();
        for (const auto& u : group) min_product = std::min(min_product, u.product());

        double train_product = -1.0;
        for (std::size_t j = 0; j < group.size(); ++j) {
            const double tp = res.allocations[j].train_energy * group[j].gain;
            if (train_product < 0.0)
                train_product = tp;
            else
                CHECK(tp == Catch::Approx(train_product).epsilon(1e-12));
            // Nobody exceeds their personal budget (violation <= 0 is slack);
            // the worst member uses all of theirs.
            const double violation =
                res.allocations[j].budget_violation(L, N, group[j].energy_budget);
            CHECK(violation <= 1e-9 * std::max(1.0, group[j].energy_budget));
        }
        // The binding member's spend equals the budget: L*u* + (N-L)*w = x.
        const double spent = L * res.u_star + (N - L) * (res.allocations[0].data_energy *
                                                          group[0].gain);
        CHECK(spent == Catch::Approx(min_product).epsilon(1e-9));
        CHECK(res.common_rate == Catch::Approx(std::log2(1.0 + res.sinr)).epsilon(1e-15));
        CHECK(res.common_rate ==
              Catch::Approx(group_rate_value(r, M, N, K, L, min_product)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(group_rate(ReceiverKind::ZF, 8, 50, 10, {}), parameter_error);
}

TEST_CASE("rate is monotone in the worst product") {
    double prev = -1.0;
    for (double x : {0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
        const double r = group_rate_value(ReceiverKind::ZF, 64, 100, 10, 20, x);
        CHECK(r > prev);
        prev = r;
    }
}

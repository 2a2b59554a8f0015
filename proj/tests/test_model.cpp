// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "lsas/model.hpp"

using namespace lsas;

TEST_CASE("orthogonal pilots: unit columns, identity Gram") {
    const PilotMatrix p = wbe_pilot_matrix(8, 5);
    REQUIRE(p.rows() == 8);
    REQUIRE(p.cols() == 5);
    const Eigen::MatrixXcd gram = p.psi.adjoint() * p.psi;
    CHECK((gram - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-12);
    REQUIRE(p.gram_eigenvalues.size() == 5);
    for (double lam : p.gram_eigenvalues) CHECK(lam == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("overloaded pilots meet the Welch bound with equality") {
    // K > L: Psi Psi^H = (K/L) I_L, so the nonzero spectrum of Psi^H Psi is
    // K/L with multiplicity L.
    const PilotMatrix p = wbe_pilot_matrix(3, 5, std::vector<int>{1, 2, 4});
    REQUIRE(p.gram_eigenvalues.size() == 3);
    for (double lam : p.gram_eigenvalues) CHECK(lam == Catch::Approx(5.0 / 3.0).margin(1e-12));
    const Eigen::MatrixXcd small = p.psi * p.psi.adjoint();
    CHECK((small - (5.0 / 3.0) * Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-12);
    for (int k = 0; k < 5; ++k) CHECK(p.psi.col(k).norm() == Catch::Approx(1.0).margin(1e-12));

    // Default tones are 1..L and satisfy the same property.
    const PilotMatrix q = wbe_pilot_matrix(4, 9);
    for (double lam : q.gram_eigenvalues) CHECK(lam == Catch::Approx(9.0 / 4.0).margin(1e-12));

    CHECK_THROWS_AS(wbe_pilot_matrix(3, 5, std::vector<int>{1, 2}), parameter_error);
    CHECK_THROWS_AS(wbe_pilot_matrix(3, 5, std::vector<int>{0, 2, 4}), parameter_error);
    CHECK_THROWS_AS(wbe_pilot_matrix(3, 5, std::vector<int>{1, 4, 4}), parameter_error);
    CHECK_THROWS_AS(wbe_pilot_matrix(0, 5), parameter_error);
}

TEST_CASE("error variance: eigenvalue form equals the closed form for WBE pilots") {
    for (int L : {1, 3, 5, 10, 20}) {
        for (int K : {1, 2, 5, 8, 15}) {
            for (double p : {0.0, 0.1, 1.0, 30.0}) {
                const PilotMatrix pm = wbe_pilot_matrix(L, K);
                const double a = estimation_error_variance(L, K, p, pm.gram_eigenvalues);
                const double b = wbe_error_variance(L, K, p);
                INFO("L=" << L << " K=" << K << " p=" << p);
                CHECK(a == Catch::Approx(b).epsilon(1e-12));
            }
        }
    }
    // Orthogonal special case 1/(1 + L*pbar): L=5, pbar=1 gives exactly 1/6.
    CHECK(wbe_error_variance(5, 3, 1.0) == Catch::Approx(1.0 / 6.0).epsilon(1e-15));
    // No training energy estimates nothing: variance 1.
    CHECK(wbe_error_variance(7, 4, 0.0) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("error variance rejects eigenvalues that are not a unit-column Gram spectrum") {
    CHECK_THROWS_AS(estimation_error_variance(4, 3, 1.0, std::vector<double>{2.0, 2.0, 2.0}),
                    parameter_error);
    CHECK_THROWS_AS(estimation_error_variance(4, 3, 1.0, std::vector<double>{3.0}),
                    parameter_error);
    CHECK_THROWS_AS(estimation_error_variance(4, 3, -1.0, std::vector<double>{1.0, 1.0, 1.0}),
                    parameter_error);
}

namespace {

// Group of K unit-gain users, total energy E split evenly across symbols of
// each phase: p_tr = E/(2L), p_dt = E/(2(N-L)).
std::pair<UserSet, std::vector<EnergyAllocation>> even_split_group(int K, int N, int L, double E) {
    UserSet group;
    std::vector<EnergyAllocation> alloc;
    for (int j = 0; j < K; ++j) {
        group.push_back({j + 1, E, 1.0});
        alloc.push_back({E / (2.0 * L), E / (2.0 * (N - L))});
    }
    return {group, alloc};
}

}  // namespace

TEST_CASE("SINR approximation reproduces pinned operating points") {
    const int N = 100, L = 10, K = 5;

    // ZF, M = 64, E = 10 dB: gamma = 295/113, rate = log2(408/113).
    {
        auto [group, alloc] = even_split_group(K, N, L, 10.0);
        const double pbar = alloc[0].train_energy;  // beta = 1
        const double g = sinr_approx(ReceiverKind::ZF, 64, L, group, alloc, pbar, 0);
        CHECK(g == Catch::Approx(295.0 / 113.0).epsilon(1e-12));
        CHECK(rate_approx(ReceiverKind::ZF, 64, L, group, alloc, pbar, 0) ==
              Catch::Approx(1.8522463795563078).epsilon(1e-12));
    }
    // MRC, M = 64, E = 20 dB.
    {
        auto [group, alloc] = even_split_group(K, N, L, 100.0);
        const double pbar = alloc[0].train_energy;
        const double g = sinr_approx(ReceiverKind::MRC, 64, L, group, alloc, pbar, 0);
        CHECK(g == Catch::Approx(10.613207547169811).epsilon(1e-12));
        // log2(1 + 1125/106) = 3.53769459192125816...
        CHECK(rate_approx(ReceiverKind::MRC, 64, L, group, alloc, pbar, 0) ==
              Catch::Approx(3.5376945919212582).epsilon(1e-12));
    }
    // MRC, M = 32, E = 20 dB.
    {
        auto [group, alloc] = even_split_group(K, N, L, 100.0);
        const double pbar = alloc[0].train_energy;
        CHECK(rate_approx(ReceiverKind::MRC, 32, L, group, alloc, pbar, 0) ==
              Catch::Approx(2.637465).margin(5e-7));
    }
}

TEST_CASE("SINR approximation is invariant to the long-term gains under power control") {
    // Scaling beta_j while holding p_j * beta_j fixed must not change anything.
    const int N = 100, L = 10, K = 4, M = 32;
    auto [group, alloc] = even_split_group(K, N, L, 10.0);
    const double pbar = alloc[0].train_energy;
    const double base = sinr_approx(ReceiverKind::ZF, M, L, group, alloc, pbar, 2);

    UserSet scaled = group;
    std::vector<EnergyAllocation> salloc = alloc;
    const double factors[] = {0.3, 2.0, 11.0, 0.125};
    for (int j = 0; j < K; ++j) {
        scaled[static_cast<std::size_t>(j)].gain *= factors[j];
        salloc[static_cast<std::size_t>(j)].train_energy /= factors[j];
        salloc[static_cast<std::size_t>(j)].data_energy /= factors[j];
    }
    CHECK(sinr_approx(ReceiverKind::ZF, M, L, scaled, salloc, pbar, 2) ==
          Catch::Approx(base).epsilon(1e-12));
}

TEST_CASE("receiver dimension rules") {
    const int N = 100, L = 10;
    auto [group, alloc] = even_split_group(4, N, L, 10.0);
    const double pbar = alloc[0].train_energy;
    // ZF with K = M is admissible but has zero spatial gain -> SINR 0.
    CHECK(sinr_approx(ReceiverKind::ZF, 4, L, group, alloc, pbar, 0) == 0.0);
    // K > M is not admissible for ZF.
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::ZF, 3, L, group, alloc, pbar, 0),
                    infeasible_group_error);
    // The (M-K+1)-gain variant shifts the boundary by one.
    CHECK(sinr_approx(ReceiverKind::ZF, 3, L, group, alloc, pbar, 0, true) == 0.0);
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::ZF, 2, L, group, alloc, pbar, 0, true),
                    infeasible_group_error);
    // MRC needs at least two antennas.
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::MRC, 1, L, group, alloc, pbar, 0), parameter_error);
    CHECK_NOTHROW(sinr_approx(ReceiverKind::MRC, 2, L, group, alloc, pbar, 0));
}

TEST_CASE("SINR approximation validates its inputs") {
    const int N = 100, L = 10;
    auto [group, alloc] = even_split_group(3, N, L, 10.0);
    const double pbar = alloc[0].train_energy;
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::ZF, 16, L, {}, {}, pbar, 0), parameter_error);
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::ZF, 16, L, group, alloc, pbar, 3), parameter_error);
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::ZF, 16, 0, group, alloc, pbar, 0), parameter_error);
    auto bad = alloc;
    bad[1].train_energy *= 2.0;  // violates p_j^tr * beta_j == pbar
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::ZF, 16, L, group, bad, pbar, 0), parameter_error);
    std::vector<EnergyAllocation> short_alloc(alloc.begin(), alloc.begin() + 2);
    CHECK_THROWS_AS(sinr_approx(ReceiverKind::ZF, 16, L, group, short_alloc, pbar, 0),
                    parameter_error);
}

TEST_CASE("rate is zero for users outside the group") {
    const int N = 100, L = 10;
    auto [group, alloc] = even_split_group(3, N, L, 10.0);
    const double pbar = alloc[0].train_energy;
    CHECK(rate_approx(ReceiverKind::ZF, 16, L, group, alloc, pbar, 5) == 0.0);
    CHECK(rate_approx(ReceiverKind::ZF, 16, L, group, alloc, pbar, -1) == 0.0);
}

TEST_CASE("energy budget accounting matches the per-frame constraint") {
    // (L/N) p_tr + (1 - L/N) p_dt <= E/N, reported as a signed violation.
    EnergyAllocation a{2.0, 0.5};
    const int L = 10, N = 100;
    // Used energy: 10*2 + 90*0.5 = 65.
    CHECK(a.budget_violation(L, N, 65.0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(a.budget_violation(L, N, 70.0) < 0.0);
    CHECK(a.budget_violation(L, N, 60.0) > 0.0);
}

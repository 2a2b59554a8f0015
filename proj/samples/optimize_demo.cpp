// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
//
// Minimal library walkthrough: build a small population by hand, compute the
// latency-optimal policy, and print the schedule.

#include <cstdio>

#include "lsas/scheduler.hpp"

int main() {
    // Frame: N = 8 symbols of 0.125 s over 1 kHz; one subframe per frame is
    // split into F = 125 scheduling slots; target 10^4 bits per user.
    lsas::FrameConfig frame{8, 125, 1000.0, 0.125, 1.0, 1e4, 1.0};

    // Four users with unit energy budgets and decreasing channel gains.
    lsas::UserSet users{
        {1, 1.0, 12.0},
        {2, 1.0, 9.0},
        {3, 1.0, 4.0},
        {4, 1.0, 2.5},
    };

    const int antennas = 2;
    const lsas::SchedulingPolicy policy = lsas::optimize_policy(
        users, lsas::ReceiverKind::ZF, frame, antennas, lsas::SolverKind::DP);

    std::printf("L* = %d training symbols, SE = %.6f bit/s/Hz\n",
                policy.training_length, policy.spectral_efficiency);
    std::printf("latency: %lld frames = %.3f s (fluid approximation %.3f s)\n",
                static_cast<long long>(policy.latency_frames), policy.latency_seconds,
                policy.approx_latency_seconds);
    for (std::size_t q = 0; q < policy.groups.size(); ++q) {
        const auto& g = policy.groups[q];
        std::printf("group %zu: users %d..%d, rate %.4f, time share %.4f\n", q + 1, g.first,
                    g.last, g.rate, policy.portions[q]);
    }
    return 0;
}

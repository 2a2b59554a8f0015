// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lsas/errors.hpp"

namespace lsas {

enum class ReceiverKind { ZF, MRC };

inline std::string to_string(ReceiverKind r) { return r == ReceiverKind::ZF ? "zf" : "mrc"; }

// One user's long-term state: per-sub-frame energy budget E_j and long-term
// channel gain beta_j. Noise power is normalized to unity, so energies are
// dimensionless SNR-like quantities.
struct UserProfile {
    int id = 0;
    double energy_budget = 0.0;  // E_j
    double gain = 0.0;           // beta_j

    double product() const { return energy_budget * gain; }
};

// Users are kept sorted by descending E_j*beta_j (ties by ascending id); all
// scheduling-group machinery indexes into this order.
using UserSet = std::vector<UserProfile>;

inline void sort_users(UserSet& users) {
    for (const auto& u : users) {
        if (u.energy_budget < 0.0 || u.gain < 0.0)
            throw parameter_error("user energy budget and gain must be nonnegative");
    }
    std::stable_sort(users.begin(), users.end(), [](const UserProfile& x, const UserProfile& y) {
        if (x.product() != y.product()) return x.product() > y.product();
        return x.id < y.id;
    });
}

// Frame geometry. A frame spans T seconds and W Hz and carries F sub-frames,
// each N symbols long; eta = W*T_s/F is the per-symbol time-bandwidth
// overhead (cyclic prefix etc.), so one sub-frame moves N/eta complex symbols
// per Hz of its share of the band.
struct FrameConfig {
    int num_symbols = 0;                 // N
    int num_subframes = 0;               // F
    double bandwidth = 0.0;              // W [Hz]
    double symbol_duration = 0.0;        // T_s [s]
    double frame_duration = 0.0;         // T [s]
    double throughput_target = 0.0;      // T_th [bits]
    double bandwidth_inefficiency = 0.0; // eta

    void validate() const {
        if (num_symbols < 2 || num_subframes < 1) throw parameter_error("frame: N >= 2 and F >= 1 required");
        if (bandwidth <= 0 || symbol_duration <= 0 || frame_duration <= 0 || throughput_target <= 0)
            throw parameter_error("frame: W, T_s, T, T_th must be positive");
        if (bandwidth_inefficiency < 1.0) throw parameter_error("frame: eta must be >= 1");
        const double eta = bandwidth * symbol_duration / num_subframes;
        if (std::abs(eta - bandwidth_inefficiency) > 1e-9 * bandwidth_inefficiency)
            throw parameter_error("frame: eta must equal W*T_s/F");
    }
};

// Per-symbol transmit energies of one user in the two phases.
struct EnergyAllocation {
    double train_energy = 0.0;  // p_j^tr
    double data_energy = 0.0;   // p_j^dt

    // Budget slack of Eq-type constraint (L/N)p_tr + (1-L/N)p_dt <= E/N;
    // negative means within budget.
    double budget_violation(int L, int N, double energy_budget) const {
        const double frac = static_cast<double>(L) / N;
        return frac * train_energy + (1.0 - frac) * data_energy - energy_budget / N;
    }
};

}  // namespace lsas

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Comparison schemes: Random-Equal (RE) and Random-Optimal (RO). Both draw
// uniformly random user partitions into groups of a common size K, serve the
// groups with inverse-rate time shares, and exhaustively search the (K, L)
// grid for the best mean latency. RE splits each user's energy uniformly
// across the frame's symbols; RO optimizes the training/data split of every
// group. Under the channel-inverse training power control the worst member
// of a group pins the common received energies, so both schemes price a
// group from its size and minimum product alone.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "lsas/energy.hpp"
#include "lsas/errors.hpp"
#include "lsas/rng.hpp"
#include "lsas/types.hpp"

namespace lsas {

// How Random-Equal spends the budget: per_symbol puts E_j/N on every symbol
// of either phase (the default reading of "equally used"); per_phase gives
// each phase half the budget (E_j/(2L) per training symbol).
enum class EqualSplitRule { PerSymbol, PerPhase };

struct BaselineResult {
    std::string scheme;                 // "random_equal" or "random_optimal"
    std::vector<std::uint64_t> seeds;   // per-draw root seeds actually used
    int num_draws = 0;
    double mean_latency_seconds = 0.0;  // grid-best mean of T_th / (W * SE)
    double latency_std_seconds = 0.0;   // sample std over draws at that cell
    double mean_frame_latency_seconds = 0.0;  // mean of the frame-quantized latency
    double mean_SE = 0.0;               // mean spectral efficiency at that cell
    int best_K = 0;
    int best_L = 0;
};

namespace detail {

// Per-draw random arrangement: Fisher-Yates over the user indices, one
// dedicated counter-based stream per draw so any evaluation order of the
// (K, L) grid reproduces the same partitions.
inline std::vector<int> shuffled_indices(int U, std::uint64_t draw_seed) {
    std::vector<int> idx(static_cast<std::size_t>(U));
    std::iota(idx.begin(), idx.end(), 0);
    rng::Stream st(draw_seed, rng::kStreamBaselineShuffle);
    for (int i = U - 1; i > 0; --i)
        std::swap(idx[i], idx[st.next_below(static_cast<std::uint64_t>(i) + 1)]);
    return idx;
}

// Latency moments are accumulated relative to the cell's first draw so the
// variance of identical draws is exactly zero (no cancellation residue).
struct baseline_accumulator {
    double offset = 0.0;                           // first draw's latency
    double dsum = 0.0, dsumsq = 0.0;               // moments of (lat - offset)
    double se_sum = 0.0, frame_sum = 0.0;
    int n = 0;
    bool dead = false;  // some draw produced an unservable group here
};

inline BaselineResult run_random_baseline(const UserSet& users, ReceiverKind receiver,
                                          const FrameConfig& config, int M, std::uint64_t seed,
                                          int num_draws, bool optimize_split,
                                          EqualSplitRule split) {
    config.validate();
    if (num_draws < 1) throw parameter_error("baseline: num_draws >= 1 required");
    if (users.empty()) throw parameter_error("baseline: no users");
    UserSet sorted = users;
    sort_users(sorted);
    const int U = static_cast<int>(sorted.size());
    const int N = config.num_symbols;
    const int maxK = receiver == ReceiverKind::ZF ? std::min(M - 1, U) : std::min(M, U);
    if (maxK < 1)
        throw no_feasible_partition_error("baseline: no admissible group size (M too small)");

    std::vector<baseline_accumulator> cells(static_cast<std::size_t>(maxK) *
                                            static_cast<std::size_t>(N - 1));
    const auto cell = [&](int K, int L) -> baseline_accumulator& {
        return cells[static_cast<std::size_t>(K - 1) * (N - 1) + (L - 1)];
    };

    BaselineResult res;
    res.scheme = optimize_split ? "random_optimal" : "random_equal";
    res.num_draws = num_draws;
    for (int d = 0; d < num_draws; ++d) res.seeds.push_back(seed + static_cast<std::uint64_t>(d));

    std::vector<double> min_products;
    for (int d = 0; d < num_draws; ++d) {
        const std::vector<int> perm = shuffled_indices(U, res.seeds[d]);
        for (int K = 1; K <= maxK; ++K) {
            // Blocks of the permuted order; the last group may be smaller.
            min_products.clear();
            for (int first = 0; first < U; first += K) {
                const int last = std::min(first + K, U);
                double x = std::numeric_limits<double>::infinity();
                for (int i = first; i < last; ++i) x = std::min(x, sorted[perm[i]].product());
                min_products.push_back(x);
            }
            for (int L = 1; L <= N - 1; ++L) {
                baseline_accumulator& acc = cell(K, L);
                if (acc.dead) continue;
                double inv_sum = 0.0;
                bool dead = false;
                for (std::size_t g = 0; g < min_products.size(); ++g) {
                    const int first = static_cast<int>(g) * K;
                    const int size = std::min(K, U - first);
                    double rate;
                    if (min_products[g] <= 0.0) {
                        rate = 0.0;
                    } else if (optimize_split) {
                        rate = group_rate_value(receiver, M, N, size, L, min_products[g]);
                    } else {
                        const CoefficientSet co =
                            coefficients(receiver, M, N, size, L, min_products[g]);
                        const double u_eq = split == EqualSplitRule::PerSymbol
                                                ? min_products[g] / N
                                                : min_products[g] / (2.0 * L);
                        rate = rate_at(co, u_eq);
                    }
                    if (!(rate > 0.0)) {
                        dead = true;
                        break;
                    }
                    inv_sum += 1.0 / rate;
                }
                if (dead) {
                    acc.dead = true;
                    continue;
                }
                const double se =
                    (1.0 - static_cast<double>(L) / N) / config.bandwidth_inefficiency / inv_sum;
                const double lat = config.throughput_target / (config.bandwidth * se);
                if (acc.n == 0) acc.offset = lat;
                const double dev = lat - acc.offset;
                acc.dsum += dev;
                acc.dsumsq += dev * dev;
                acc.se_sum += se;
                acc.frame_sum +=
                    config.frame_duration * std::ceil(lat / config.frame_duration);
                acc.n += 1;
            }
        }
    }

    double best = std::numeric_limits<double>::infinity();
    for (int K = 1; K <= maxK; ++K) {
        for (int L = 1; L <= N - 1; ++L) {
            const baseline_accumulator& acc = cell(K, L);
            if (acc.dead || acc.n != num_draws) continue;
            const double dmean = acc.dsum / num_draws;
            const double mean = acc.offset + dmean;
            if (mean < best) {
                best = mean;
                res.best_K = K;
                res.best_L = L;
                res.mean_latency_seconds = mean;
                res.mean_SE = acc.se_sum / num_draws;
                res.mean_frame_latency_seconds = acc.frame_sum / num_draws;
                const double var =
                    num_draws > 1
                        ? std::max(acc.dsumsq - num_draws * dmean * dmean, 0.0) / (num_draws - 1)
                        : 0.0;
                res.latency_std_seconds = std::sqrt(var);
            }
        }
    }
    if (!(best < std::numeric_limits<double>::infinity()))
        throw no_feasible_partition_error("baseline: no (K, L) cell is servable");
    return res;
}

}  // namespace detail

// "K users are randomly selected and the transmit energy is equally used":
// random groups, uniform per-symbol energy, exhaustive (K, L) grid search.
inline BaselineResult random_equal(const UserSet& users, ReceiverKind receiver,
                                   const FrameConfig& config, int M, std::uint64_t seed,
                                   int num_draws, EqualSplitRule split = EqualSplitRule::PerSymbol) {
    return detail::run_random_baseline(users, receiver, config, M, seed, num_draws, false, split);
}

// Same random groups, but each group's training/data split is optimized, so
// per draw and per (K, L) cell RO's latency never exceeds RE's.
inline BaselineResult random_optimal(const UserSet& users, ReceiverKind receiver,
                                     const FrameConfig& config, int M, std::uint64_t seed,
                                     int num_draws) {
    return detail::run_random_baseline(users, receiver, config, M, seed, num_draws, true,
                                       EqualSplitRule::PerSymbol);
}

}  // namespace lsas

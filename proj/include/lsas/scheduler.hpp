// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Static uplink scheduler: users sorted by decreasing energy-gain product are
// partitioned into contiguous groups of at most M members; each group gets a
// time share of the data phase proportional to the inverse of its common
// rate, which equalizes delivered bits and maximizes the worst-user spectral
// efficiency. The contiguous exact-cover relaxation has integral vertices, so
// an LP and a shortest-path DP solve the same problem; both are provided.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "lsas/energy.hpp"
#include "lsas/errors.hpp"
#include "lsas/simplex.hpp"
#include "lsas/types.hpp"

namespace lsas {

enum class SolverKind { LP, DP };

inline const char* to_string(SolverKind s) { return s == SolverKind::LP ? "lp" : "dp"; }

// One contiguous candidate group [first, last] (1-based, inclusive) of the
// product-sorted user list. `rate` is the common rate every member sustains
// under the group's optimal training/data split; cost is its inverse.
struct CandidateGroup {
    int first = 0;
    int last = 0;
    double rate = 0.0;
    double inv_rate = std::numeric_limits<double>::infinity();
    int size() const { return last - first + 1; }
};

namespace detail {
inline void require_sorted_products(const UserSet& users) {
    for (std::size_t i = 1; i < users.size(); ++i) {
        if (users[i - 1].product() < users[i].product() - 1e-12 * std::abs(users[i].product()))
            throw parameter_error("scheduler: users must be sorted by non-increasing product");
    }
}
}  // namespace detail

// All contiguous intervals of size 1..min(M, U), ordered by size then first
// index. The minimum product of an interval is its last member's (sorted
// input), so each candidate rate is a closed-form evaluation.
inline std::vector<CandidateGroup> enumerate_candidates(const UserSet& users, ReceiverKind receiver,
                                                        int M, int N, int L,
                                                        bool mk_plus_one = false) {
    if (users.empty()) throw parameter_error("enumerate_candidates: no users");
    detail::require_sorted_products(users);
    const int U = static_cast<int>(users.size());
    const int max_size = std::min(M, U);
    if (max_size < 1) throw parameter_error("enumerate_candidates: M < 1");
    std::vector<CandidateGroup> cands;
    cands.reserve(static_cast<std::size_t>(max_size) * (2 * U - max_size + 1) / 2);
    for (int size = 1; size <= max_size; ++size) {
        for (int first = 1; first + size - 1 <= U; ++first) {
            CandidateGroup g;
            g.first = first;
            g.last = first + size - 1;
            g.rate = group_rate_value(receiver, M, N, size, L, users[g.last - 1].product(),
                                      mk_plus_one);
            if (g.rate > 0.0) g.inv_rate = 1.0 / g.rate;
            cands.push_back(g);
        }
    }
    return cands;
}

struct PartitionSolution {
    std::vector<int> selected;  // indices into the candidate list, ascending `first`
    double objective = 0.0;     // sum of selected inverse rates
};

namespace detail {
inline PartitionSolution finalize_selection(const std::vector<CandidateGroup>& cands,
                                            std::vector<int> selected) {
    std::sort(selected.begin(), selected.end(),
              [&](int a, int b) { return cands[a].first < cands[b].first; });
    PartitionSolution sol;
    sol.selected = std::move(selected);
    for (int idx : sol.selected) sol.objective += cands[idx].inv_rate;
    return sol;
}
}  // namespace detail

// Exact-cover linear relaxation, solved by the dense simplex. The constraint
// matrix is an interval matrix, so every vertex is integral; a fractional
// vertex indicates a broken invariant and raises internal_error.
inline PartitionSolution solve_partition_lp(const std::vector<CandidateGroup>& cands, int U) {
    if (U < 1) throw parameter_error("solve_partition_lp: U < 1");
    std::vector<int> usable;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (cands[i].rate > 0.0) usable.push_back(static_cast<int>(i));
    std::vector<std::vector<double>> A(static_cast<std::size_t>(U),
                                       std::vector<double>(usable.size(), 0.0));
    std::vector<double> b(static_cast<std::size_t>(U), 1.0);
    std::vector<double> c(usable.size());
    for (std::size_t j = 0; j < usable.size(); ++j) {
        const CandidateGroup& g = cands[usable[j]];
        c[j] = g.inv_rate;
        for (int v = g.first; v <= g.last; ++v) A[v - 1][j] = 1.0;
    }
    const auto lp = solve_equality_lp(A, b, c);
    if (!lp) throw no_feasible_partition_error("solve_partition_lp: no feasible cover");
    std::vector<int> selected;
    for (std::size_t j = 0; j < usable.size(); ++j) {
        const double x = lp->x[j];
        if (std::abs(x) > 1e-6 && std::abs(x - 1.0) > 1e-6)
            throw internal_error("solve_partition_lp: fractional vertex");
        if (x > 0.5) selected.push_back(usable[j]);
    }
    return detail::finalize_selection(cands, std::move(selected));
}

// Shortest path over prefixes: best cost of covering users 1..v. Candidates
// ending at v are scanned by ascending first index; strict improvement keeps
// the first-found optimum, making ties deterministic.
inline PartitionSolution solve_partition_dp(const std::vector<CandidateGroup>& cands, int U) {
    if (U < 1) throw parameter_error("solve_partition_dp: U < 1");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> by_end(static_cast<std::size_t>(U) + 1);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const CandidateGroup& g = cands[i];
        if (g.rate <= 0.0) continue;
        if (g.first < 1 || g.last > U) throw parameter_error("solve_partition_dp: interval out of range");
        by_end[g.last].push_back(static_cast<int>(i));
    }
    for (auto& bucket : by_end)
        std::sort(bucket.begin(), bucket.end(),
                  [&](int a, int b) { return cands[a].first < cands[b].first; });
    std::vector<double> best(static_cast<std::size_t>(U) + 1, kInf);
    std::vector<int> choice(static_cast<std::size_t>(U) + 1, -1);
    best[0] = 0.0;
    for (int v = 1; v <= U; ++v) {
        for (int idx : by_end[v]) {
            const CandidateGroup& g = cands[idx];
            const double cost = best[g.first - 1] + g.inv_rate;
            if (cost < best[v]) {
                best[v] = cost;
                choice[v] = idx;
            }
        }
    }
    if (!(best[U] < kInf)) throw no_feasible_partition_error("solve_partition_dp: no feasible cover");
    std::vector<int> selected;
    for (int v = U; v > 0; v = cands[choice[v]].first - 1) selected.push_back(choice[v]);
    return detail::finalize_selection(cands, std::move(selected));
}

// Number of contiguous partitions with group sizes at most M:
//   F(v) = sum_{k=1..min(M,v)} F(v-k), F(0) = 1,
// saturating at 2^64-1 (exact up to U = 64 for unconstrained M).
inline std::uint64_t count_reduced_search_space(int U, int M) {
    if (U < 0 || M < 1) throw parameter_error("count_reduced_search_space: need U >= 0, M >= 1");
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> F(static_cast<std::size_t>(U) + 1, 0);
    F[0] = 1;
    for (int v = 1; v <= U; ++v) {
        std::uint64_t acc = 0;
        for (int k = 1; k <= std::min(M, v); ++k) {
            const std::uint64_t term = F[v - k];
            acc = (acc > kMax - term) ? kMax : acc + term;
            if (acc == kMax) break;
        }
        F[v] = acc;
    }
    return F[U];
}

// Complete static policy: training length, groups with their data-phase time
// shares, per-user energies (aligned with the sorted user list), and the
// resulting worst-user spectral efficiency and delivery latency.
struct SchedulingPolicy {
    int training_length = 0;
    std::vector<CandidateGroup> groups;
    std::vector<double> portions;
    std::vector<EnergyAllocation> allocations;
    double spectral_efficiency = 0.0;
    double approx_latency_seconds = 0.0;
    double latency_seconds = 0.0;
    std::uint64_t latency_frames = 0;
};

// Time shares, spectral efficiency and latency from already-priced groups
// (rates taken as given; allocations left empty). The groups must partition
// users 1..U; a zero-rate group makes the whole schedule undeliverable.
inline SchedulingPolicy policy_from_rates(const FrameConfig& config, int L,
                                          std::vector<CandidateGroup> groups, int U) {
    config.validate();
    if (L < 1 || L >= config.num_symbols)
        throw parameter_error("policy_from_rates: need 1 <= L < N");
    SchedulingPolicy pol;
    pol.training_length = L;
    pol.groups = std::move(groups);
    std::sort(pol.groups.begin(), pol.groups.end(),
              [](const CandidateGroup& a, const CandidateGroup& b) { return a.first < b.first; });
    int expect = 1;
    for (const auto& g : pol.groups) {
        if (g.first != expect || g.last < g.first)
            throw parameter_error("policy_from_rates: groups do not partition the user list");
        expect = g.last + 1;
    }
    if (expect != U + 1)
        throw parameter_error("policy_from_rates: groups do not partition the user list");

    double inv_sum = 0.0;
    for (auto& g : pol.groups) {
        if (!(g.rate > 0.0))
            throw no_feasible_partition_error("policy_from_rates: group with zero rate");
        g.inv_rate = 1.0 / g.rate;
        inv_sum += g.inv_rate;
    }
    pol.portions.resize(pol.groups.size());
    for (std::size_t q = 0; q < pol.groups.size(); ++q)
        pol.portions[q] = pol.groups[q].inv_rate / inv_sum;

    const double Ld = L, Nd = config.num_symbols;
    pol.spectral_efficiency = (1.0 - Ld / Nd) / config.bandwidth_inefficiency / inv_sum;
    const double bits_per_frame =
        config.bandwidth * config.frame_duration * pol.spectral_efficiency;
    pol.approx_latency_seconds =
        config.throughput_target / (config.bandwidth * pol.spectral_efficiency);
    pol.latency_frames =
        static_cast<std::uint64_t>(std::ceil(config.throughput_target / bits_per_frame));
    pol.latency_seconds = config.frame_duration * static_cast<double>(pol.latency_frames);
    return pol;
}

inline SchedulingPolicy assemble_policy(const UserSet& users, ReceiverKind receiver,
                                        const FrameConfig& config, int M, int L,
                                        const std::vector<CandidateGroup>& selected,
                                        bool mk_plus_one = false) {
    detail::require_sorted_products(users);
    const int U = static_cast<int>(users.size());
    std::vector<CandidateGroup> priced = selected;
    std::vector<std::vector<EnergyAllocation>> per_group(priced.size());
    for (std::size_t q = 0; q < priced.size(); ++q) {
        CandidateGroup& g = priced[q];
        if (g.first < 1 || g.last > U || g.last < g.first)
            throw parameter_error("assemble_policy: interval out of range");
        UserSet members(users.begin() + (g.first - 1), users.begin() + g.last);
        GroupRateResult r = group_rate(receiver, M, config.num_symbols, L, members, mk_plus_one);
        g.rate = r.common_rate;
        g.inv_rate = r.common_rate > 0.0 ? 1.0 / r.common_rate
                                         : std::numeric_limits<double>::infinity();
        per_group[q] = std::move(r.allocations);
    }
    SchedulingPolicy pol;
    try {
        pol = policy_from_rates(config, L, priced, U);
    } catch (const no_feasible_partition_error&) {
        throw no_feasible_partition_error("assemble_policy: group with zero rate");
    }
    pol.allocations.assign(static_cast<std::size_t>(U), EnergyAllocation{});
    for (std::size_t q = 0; q < priced.size(); ++q) {
        const CandidateGroup& g = priced[q];
        for (int v = g.first; v <= g.last; ++v)
            pol.allocations[v - 1] = per_group[q][v - g.first];
    }
    return pol;
}

// Sweeps every training length, solves the partition problem at each, and
// returns the policy with the highest spectral efficiency (smallest L on
// ties). Throws no_feasible_partition_error only if every L is infeasible.
inline SchedulingPolicy optimize_policy(const UserSet& users, ReceiverKind receiver,
                                        const FrameConfig& config, int M,
                                        SolverKind solver = SolverKind::LP,
                                        bool mk_plus_one = false) {
    config.validate();
    UserSet sorted = users;
    sort_users(sorted);
    const int U = static_cast<int>(sorted.size());
    if (U < 1) throw parameter_error("optimize_policy: no users");
    SchedulingPolicy best;
    bool have = false;
    for (int L = 1; L < config.num_symbols; ++L) {
        std::vector<CandidateGroup> cands =
            enumerate_candidates(sorted, receiver, M, config.num_symbols, L, mk_plus_one);
        PartitionSolution sol;
        try {
            sol = (solver == SolverKind::LP) ? solve_partition_lp(cands, U)
                                             : solve_partition_dp(cands, U);
        } catch (const no_feasible_partition_error&) {
            continue;
        }
        std::vector<CandidateGroup> chosen;
        chosen.reserve(sol.selected.size());
        for (int idx : sol.selected) chosen.push_back(cands[idx]);
        SchedulingPolicy pol = assemble_policy(sorted, receiver, config, M, L, chosen, mk_plus_one);
        if (!have || pol.spectral_efficiency > best.spectral_efficiency) {
            best = std::move(pol);
            have = true;
        }
    }
    if (!have) throw no_feasible_partition_error("optimize_policy: no feasible training length");
    return best;
}

}  // namespace lsas

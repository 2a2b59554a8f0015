// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Optimal training/data energy split for one scheduling group at a fixed
// training length: the rate of a group is a rational function of the common
// received training energy u, with polynomial coefficients (a,b,c,d,e)
// depending on receiver, dimensions and the group's worst energy-gain
// product; the maximizer u* has a closed form.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lsas/errors.hpp"
#include "lsas/model.hpp"
#include "lsas/types.hpp"

namespace lsas {

// Coefficients of the group-rate objective
//   SINR(u) = (a - b*u)*u / (c + d*u - e*u^2),  u in [0, a/b],
// where u is the common received training energy per symbol.
struct CoefficientSet {
    double a = 0, b = 0, c = 0, d = 0, e = 0;
    ReceiverKind receiver = ReceiverKind::ZF;
    int M = 0, N = 0, K = 0, L = 0;
    double min_product = 0.0;  // E_K * beta_K, the group's worst product
};

inline CoefficientSet coefficients(ReceiverKind receiver, int M, int N, int K, int L,
                                   double min_product, bool mk_plus_one = false) {
    if (L < 1 || L >= N) throw parameter_error("coefficients: need 1 <= L < N");
    if (K < 1) throw parameter_error("coefficients: need K >= 1");
    if (min_product < 0.0) throw parameter_error("coefficients: negative energy-gain product");
    detail::check_receiver_dims(receiver, M, K, mk_plus_one);

    CoefficientSet co;
    co.receiver = receiver;
    co.M = M;
    co.N = N;
    co.K = K;
    co.L = L;
    co.min_product = min_product;
    const double Ld = L, Kd = K, Nd = N, x = min_product;
    const double kl = std::max(Kd - Ld, 0.0);
    co.c = Kd * x + Nd - Ld;
    if (receiver == ReceiverKind::ZF) {
        const double spatial = mk_plus_one ? M - K + 1 : M - K;
        co.a = Ld * spatial * x;
        co.b = Ld * Ld * spatial;
        co.d = (Nd - Ld - Kd) * Ld + kl * co.c;
        co.e = Kd * Ld * kl;
    } else {
        co.a = Ld * (M - 1) * x;
        co.b = Ld * Ld * (M - 1);
        const double lk = std::max(Ld, Kd);
        co.d = lk * co.c - Kd * Ld - Ld * x;
        co.e = Ld * (Kd * lk - Ld);
    }
    return co;
}

// SINR at a given training energy u (the data phase absorbs the remaining
// budget of the worst member). Defensive zero outside the feasible range.
inline double sinr_at(const CoefficientSet& co, double u) {
    const double num = (co.a - co.b * u) * u;
    const double den = co.c + (co.d - co.e * u) * u;
    if (num <= 0.0 || den <= 0.0) return 0.0;
    return num / den;
}

inline double rate_at(const CoefficientSet& co, double u) { return std::log2(1.0 + sinr_at(co, u)); }

// Closed-form maximizer of SINR(u) over [0, a/b]:
//   u* = a/(2b)                                  if b*d - a*e = 0
//   u* = (b*c/D)*(sqrt(1 + (a/b)*D/(b*c)) - 1)   otherwise, D = b*d - a*e
// computed in the algebraically equivalent form (a/b)/(1 + sqrt(1+t)) with
// t = a*D/(b^2*c), which is continuous through D = 0 and immune to the
// cancellation of the printed form for small |D|.
inline double optimal_training_energy(const CoefficientSet& co) {
    if (co.a <= 0.0 || co.b <= 0.0) return 0.0;
    const double cap = co.a / co.b;
    const double delta = co.b * co.d - co.a * co.e;
    double u;
    if (std::abs(delta) <= 1e-12 * std::abs(co.b * co.d)) {
        u = 0.5 * cap;
    } else {
        const double t = co.a * delta / (co.b * co.b * co.c);
        u = cap / (1.0 + std::sqrt(std::max(1.0 + t, 0.0)));
    }
    return std::clamp(u, 0.0, cap);
}

// Full result for one group: optimal split, its per-member allocations and
// the common rate every member can sustain.
struct GroupRateResult {
    double u_star = 0.0;      // optimal common received training energy
    double sinr = 0.0;        // SINR at u_star
    double common_rate = 0.0; // bits/symbol
    std::vector<EnergyAllocation> allocations;
};

namespace detail {
inline double group_min_product(const UserSet& group) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& u : group) m = std::min(m, u.product());
    return m;
}
}  // namespace detail

inline GroupRateResult group_rate(ReceiverKind receiver, int M, int N, int L, const UserSet& group,
                                  bool mk_plus_one = false) {
    if (group.empty()) throw parameter_error("group_rate: empty group");
    GroupRateResult res;
    res.allocations.assign(group.size(), EnergyAllocation{});
    const double x = detail::group_min_product(group);
    if (x <= 0.0) {
        // Useless group (some member has no received energy): zero rate, not
        // an error, so optimizers can price it as unusable.
        detail::check_receiver_dims(receiver, M, static_cast<int>(group.size()), mk_plus_one);
        if (L < 1 || L >= N) throw parameter_error("group_rate: need 1 <= L < N");
        return res;
    }
    const CoefficientSet co =
        coefficients(receiver, M, N, static_cast<int>(group.size()), L, x, mk_plus_one);
    res.u_star = optimal_training_energy(co);
    res.sinr = sinr_at(co, res.u_star);
    res.common_rate = std::log2(1.0 + res.sinr);
    const double data_product = std::max(x - L * res.u_star, 0.0) / (N - L);
    for (std::size_t j = 0; j < group.size(); ++j) {
        const double beta = group[j].gain;  // > 0 because x > 0
        res.allocations[j].train_energy = res.u_star / beta;
        res.allocations[j].data_energy = data_product / beta;
    }
    return res;
}

// Allocation-free fast paths used in candidate enumeration (the rate of a
// group depends only on its size and worst product).
inline double group_sinr_value(ReceiverKind receiver, int M, int N, int K, int L,
                               double min_product, bool mk_plus_one = false) {
    if (min_product <= 0.0) {
        detail::check_receiver_dims(receiver, M, K, mk_plus_one);
        return 0.0;
    }
    const CoefficientSet co = coefficients(receiver, M, N, K, L, min_product, mk_plus_one);
    return sinr_at(co, optimal_training_energy(co));
}

inline double group_rate_value(ReceiverKind receiver, int M, int N, int K, int L,
                               double min_product, bool mk_plus_one = false) {
    return std::log2(1.0 + group_sinr_value(receiver, M, N, K, L, min_product, mk_plus_one));
}

}  // namespace lsas

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Deterministic channel/pilot/rate formulas: WBE pilot construction, MMSE
// estimation error variance, and the closed-form SINR/rate approximations for
// the ZF and MRC receivers under channel-inverse power control.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "lsas/errors.hpp"
#include "lsas/types.hpp"

namespace lsas {

// L x K pilot matrix with unit-norm columns meeting the Welch bound with
// equality: Psi Psi^H = max{1, K/L} I_L. gram_eigenvalues holds the min(L,K)
// largest eigenvalues of Psi^H Psi (the only possibly-nonzero ones),
// descending.
struct PilotMatrix {
    Eigen::MatrixXcd psi;
    std::vector<double> gram_eigenvalues;
    int rows() const { return static_cast<int>(psi.rows()); }  // L
    int cols() const { return static_cast<int>(psi.cols()); }  // K
};

// DFT-based WBE pilots. For K <= L: the first K columns of the L x L unitary
// DFT (orthogonal pilots). For K > L: row l is the tone exp(-2*pi*i*f_l*k/K)
// over k = 0..K-1, scaled by 1/sqrt(L), with 0 < f_1 < ... < f_L < K.
// tone_indices defaults to (1, ..., L) and is ignored in the orthogonal case.
inline PilotMatrix wbe_pilot_matrix(int L, int K,
                                    std::optional<std::vector<int>> tone_indices = std::nullopt) {
    if (L < 1 || K < 1) throw parameter_error("wbe_pilot_matrix: L and K must be >= 1");
    const double pi2 = 6.283185307179586476925286766559;
    PilotMatrix out;
    out.psi.resize(L, K);
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    if (K <= L) {
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < K; ++k)
                out.psi(l, k) = std::polar(scale, -pi2 * l * k / L);
    } else {
        std::vector<int> tones;
        if (tone_indices) {
            tones = *tone_indices;
            if (static_cast<int>(tones.size()) != L)
                throw parameter_error("wbe_pilot_matrix: tone_indices must have length L");
            for (int l = 0; l < L; ++l) {
                if (tones[l] <= 0 || tones[l] >= K)
                    throw parameter_error("wbe_pilot_matrix: tone indices must lie in (0, K)");
                if (l > 0 && tones[l] <= tones[l - 1])
                    throw parameter_error("wbe_pilot_matrix: tone indices must be strictly increasing");
            }
        } else {
            tones.resize(L);
            for (int l = 0; l < L; ++l) tones[l] = l + 1;
        }
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < K; ++k)
                out.psi(l, k) = std::polar(scale, -pi2 * tones[l] * k / K);
    }
    // Eigenvalues of the smaller Gram, which are the nonzero spectrum of
    // Psi^H Psi either way.
    Eigen::MatrixXcd gram;
    if (K > L)
        gram = out.psi * out.psi.adjoint();
    else
        gram = out.psi.adjoint() * out.psi;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    const auto& ev = es.eigenvalues();
    out.gram_eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.gram_eigenvalues.begin(), out.gram_eigenvalues.end(), std::greater<>());
    return out;
}

// Per-entry MMSE channel estimation error variance for target received
// training energy pbar per symbol, given the eigenvalues of Psi^H Psi:
//
//   sigma^2 = (1 - L/K)^+ + (1/K) * sum_{i=1}^{min(L,K)} 1/(1 + L*pbar*lambda_i)
//
// With WBE eigenvalues this reduces to (1 + (K-L)^+ pbar)/(1 + max{L,K} pbar).
inline double estimation_error_variance(int L, int K, double target_train_energy,
                                        const std::vector<double>& gram_eigenvalues) {
    if (L < 1 || K < 1) throw parameter_error("estimation_error_variance: L, K must be >= 1");
    if (target_train_energy < 0.0)
        throw parameter_error("estimation_error_variance: training energy must be nonnegative");
    const int m = std::min(L, K);
    if (static_cast<int>(gram_eigenvalues.size()) < m)
        throw parameter_error("estimation_error_variance: need at least min(L,K) eigenvalues");
    double trace = 0.0;
    for (double lam : gram_eigenvalues) {
        if (lam < -1e-9) throw parameter_error("estimation_error_variance: negative eigenvalue");
        trace += lam;
    }
    if (std::abs(trace - K) > 1e-6 * std::max(1.0, static_cast<double>(K)))
        throw parameter_error("estimation_error_variance: eigenvalues must sum to K (Gram trace)");
    std::vector<double> lam(gram_eigenvalues);
    std::sort(lam.begin(), lam.end(), std::greater<>());
    double s = (K > L) ? 1.0 - static_cast<double>(L) / K : 0.0;
    for (int i = 0; i < m; ++i)
        s += (1.0 / K) / (1.0 + L * target_train_energy * std::max(lam[i], 0.0));
    return s;
}

// Closed form of the WBE case above.
inline double wbe_error_variance(int L, int K, double target_train_energy) {
    const double p = target_train_energy;
    const double kl = static_cast<double>(std::max(K - L, 0));
    return (1.0 + kl * p) / (1.0 + std::max(L, K) * p);
}

namespace detail {
inline void check_receiver_dims(ReceiverKind receiver, int M, int K, bool mk_plus_one) {
    if (receiver == ReceiverKind::ZF) {
        const int spatial = mk_plus_one ? M - K + 1 : M - K;
        if (spatial < 0) throw infeasible_group_error("ZF group needs K <= M");
    } else {
        if (M < 2) throw parameter_error("MRC approximation needs M >= 2");
    }
}
}  // namespace detail

// Post-combining SINR approximation for member k of a scheduling group under
// WBE pilots and channel-inverse power control (p_j^tr * beta_j = pbar for
// every member). allocations[j] belongs to group[j]; k indexes the group.
//
//   ZF : gamma = L*(M-K)*w_k*pbar / [(1+(K-L)^+ pbar)(1+sum_j w_j) + L*pbar]
//   MRC: gamma = L*(M-1)*w_k*pbar / [(1+max{L,K} pbar)(1+sum_j w_j) - L*pbar*w_k]
//
// with w_j = p_j^dt * beta_j. mk_plus_one swaps M-K for M-K+1 in the ZF form.
inline double sinr_approx(ReceiverKind receiver, int M, int L, const UserSet& group,
                          const std::vector<EnergyAllocation>& allocations,
                          double target_train_energy, int k, bool mk_plus_one = false) {
    const int K = static_cast<int>(group.size());
    if (K < 1) throw parameter_error("sinr_approx: empty group");
    if (allocations.size() != group.size())
        throw parameter_error("sinr_approx: one allocation per member required");
    if (k < 0 || k >= K) throw parameter_error("sinr_approx: k must index a group member");
    if (L < 1) throw parameter_error("sinr_approx: L must be >= 1");
    const double pbar = target_train_energy;
    if (pbar < 0.0) throw parameter_error("sinr_approx: training energy must be nonnegative");
    detail::check_receiver_dims(receiver, M, K, mk_plus_one);

    double sum_w = 0.0;
    for (int j = 0; j < K; ++j) {
        const double train_product = allocations[j].train_energy * group[j].gain;
        if (std::abs(train_product - pbar) > 1e-6 * std::max(1.0, pbar))
            throw parameter_error("sinr_approx: allocations violate channel-inverse power control");
        sum_w += allocations[j].data_energy * group[j].gain;
    }
    const double w_k = allocations[k].data_energy * group[k].gain;

    if (receiver == ReceiverKind::ZF) {
        const int spatial = mk_plus_one ? M - K + 1 : M - K;
        const double num = static_cast<double>(L) * spatial * w_k * pbar;
        const double kl = static_cast<double>(std::max(K - L, 0));
        const double den = (1.0 + kl * pbar) * (1.0 + sum_w) + L * pbar;
        return num / den;
    }
    const double num = static_cast<double>(L) * (M - 1) * w_k * pbar;
    const double den = (1.0 + std::max(L, K) * pbar) * (1.0 + sum_w) - L * pbar * w_k;
    return num / den;
}

// Rate approximation, bits/symbol: log2(1 + gamma_k) for members, 0 for any
// k outside the group (unscheduled users receive nothing).
inline double rate_approx(ReceiverKind receiver, int M, int L, const UserSet& group,
                          const std::vector<EnergyAllocation>& allocations,
                          double target_train_energy, int k, bool mk_plus_one = false) {
    if (k < 0 || k >= static_cast<int>(group.size())) return 0.0;
    const double g = sinr_approx(receiver, M, L, group, allocations, target_train_energy, k, mk_plus_one);
    return std::log2(1.0 + g);
}

}  // namespace lsas

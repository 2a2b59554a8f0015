// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Link-level Monte Carlo of the exact uplink model: i.i.d. Rayleigh channels,
// pilot observations, per-user MMSE channel estimates, ZF/MRC combining from
// the estimates, and the exact post-combining SINR. Used to validate the
// closed-form rate approximation the scheduler optimizes. Long-term gains
// cancel from the post-combining SINR under channel-inverse power control,
// so the simulation runs on normalized channels with per-user received data
// weights w_j = p_j^dt beta_j.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lsas/errors.hpp"
#include "lsas/model.hpp"
#include "lsas/rng.hpp"
#include "lsas/types.hpp"

namespace lsas {

// One simulation configuration: geometry, realization count and root seed.
// Realization r of a batch is fully determined by (seed, stream tag, r), so
// results are independent of evaluation order.
struct RealizationBatch {
    int M = 0;  // antennas
    int K = 0;  // users in the group
    int L = 0;  // training symbols
    int N = 0;  // symbols per sub-frame
    int num_realizations = 0;
    std::uint64_t seed = 0;
    ReceiverKind receiver = ReceiverKind::ZF;

    void validate() const {
        if (M < 1 || K < 1 || L < 1 || N < 2 || L >= N)
            throw parameter_error("realization batch: need M,K >= 1 and 1 <= L < N");
        if (num_realizations < 1) throw parameter_error("realization batch: no realizations");
    }
};

namespace detail {
inline Eigen::MatrixXcd standard_complex_gaussian(int rows, int cols, rng::Stream& st) {
    Eigen::MatrixXcd X(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) X(i, j) = st.next_cnormal();
    return X;
}
}  // namespace detail

// Normalized CSI of realization r: M x K, entries i.i.d. CN(0, 1).
inline Eigen::MatrixXcd draw_channel(const RealizationBatch& batch, int r) {
    batch.validate();
    if (r < 0 || r >= batch.num_realizations)
        throw parameter_error("draw_channel: realization index out of range");
    rng::Stream st(batch.seed, rng::kStreamChannel, static_cast<std::uint64_t>(r));
    return detail::standard_complex_gaussian(batch.M, batch.K, st);
}

// MMSE channel estimate from the training observation
//   Y = sqrt(L p_bar) H Psi^H + V,   V i.i.d. CN(0,1):
//   H_hat = sqrt(L p_bar) Y (I_L + L p_bar Psi Psi^H)^{-1} Psi.
// The error H_hat - H is uncorrelated with H_hat entrywise, with per-entry
// variance estimation_error_variance(L, K, p_bar, eigs).
struct MmseEstimate {
    Eigen::MatrixXcd estimate;
    Eigen::MatrixXcd error;  // estimate - true channel
};

namespace detail {
inline MmseEstimate mmse_estimate_impl(const Eigen::MatrixXcd& Y, const PilotMatrix& pilots,
                                       double p_bar, const Eigen::MatrixXcd& H_true) {
    const int L = static_cast<int>(pilots.psi.rows());
    if (Y.cols() != L) throw parameter_error("mmse_estimate: Y has wrong number of columns");
    if (!(p_bar >= 0.0)) throw parameter_error("mmse_estimate: negative training power");
    const double lp = L * p_bar;
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(L, L) + lp * pilots.psi * pilots.psi.adjoint();
    MmseEstimate out;
    out.estimate = std::sqrt(lp) * Y * B.ldlt().solve(pilots.psi);
    if (H_true.size() > 0) {
        if (H_true.rows() != Y.rows() || H_true.cols() != pilots.psi.cols())
            throw parameter_error("mmse_estimate: true channel has wrong shape");
        out.error = out.estimate - H_true;
    }
    return out;
}
}  // namespace detail

inline MmseEstimate mmse_estimate(const Eigen::MatrixXcd& Y, const PilotMatrix& pilots,
                                  double p_bar, const Eigen::MatrixXcd& H_true) {
    return detail::mmse_estimate_impl(Y, pilots, p_bar, H_true);
}

inline MmseEstimate mmse_estimate(const Eigen::MatrixXcd& Y, const PilotMatrix& pilots,
                                  double p_bar) {
    return detail::mmse_estimate_impl(Y, pilots, p_bar, Eigen::MatrixXcd());
}

// Exact post-combining rate samples for member k of a group (default: the
// worst member must be placed at k = 0 by the caller when that is intended).
// ZF realizations whose estimated Gram is numerically singular are skipped
// and counted instead of polluting the sample.
struct ExactRateSamples {
    std::vector<double> rates;  // bits/symbol, one per kept realization
    int skipped = 0;
};

inline ExactRateSamples exact_rate_samples(const RealizationBatch& batch, const UserSet& group,
                                           const std::vector<EnergyAllocation>& allocations,
                                           int k = 0) {
    batch.validate();
    const int K = batch.K, L = batch.L, M = batch.M;
    if (static_cast<int>(group.size()) != K || static_cast<int>(allocations.size()) != K)
        throw parameter_error("exact_rate_samples: group/allocation size mismatch");
    if (k < 0 || k >= K) throw parameter_error("exact_rate_samples: member index out of range");

    // Common received training power (channel-inverse control) and per-user
    // received data weights.
    double p_bar = 0.0;
    for (int j = 0; j < K; ++j) p_bar += allocations[j].train_energy * group[j].gain;
    p_bar /= K;
    for (int j = 0; j < K; ++j) {
        const double pj = allocations[j].train_energy * group[j].gain;
        if (std::abs(pj - p_bar) > 1e-6 * std::max(1.0, p_bar))
            throw parameter_error("exact_rate_samples: unequal received training powers");
    }
    Eigen::VectorXd w(K);
    for (int j = 0; j < K; ++j) w(j) = allocations[j].data_energy * group[j].gain;
    const double w_sum = w.sum();

    const PilotMatrix pilots = wbe_pilot_matrix(L, K);
    const double sigma2 = estimation_error_variance(L, K, p_bar, pilots.gram_eigenvalues);
    const double lp = L * p_bar;

    ExactRateSamples out;
    out.rates.reserve(static_cast<std::size_t>(batch.num_realizations));
    for (int r = 0; r < batch.num_realizations; ++r) {
        rng::Stream ch(batch.seed, rng::kStreamChannel, static_cast<std::uint64_t>(r));
        rng::Stream nz(batch.seed, rng::kStreamTrainingNoise, static_cast<std::uint64_t>(r));
        const Eigen::MatrixXcd H = detail::standard_complex_gaussian(M, K, ch);
        const Eigen::MatrixXcd V = detail::standard_complex_gaussian(M, L, nz);
        const Eigen::MatrixXcd Y = std::sqrt(lp) * H * pilots.psi.adjoint() + V;
        const Eigen::MatrixXcd Hh = mmse_estimate(Y, pilots, p_bar).estimate;

        Eigen::VectorXcd fk;
        if (batch.receiver == ReceiverKind::ZF) {
            const Eigen::MatrixXcd gram = Hh.adjoint() * Hh;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
            const double lo = es.eigenvalues().minCoeff();
            const double hi = es.eigenvalues().maxCoeff();
            if (!(lo > 1e-12 * std::max(hi, 1.0))) {
                ++out.skipped;
                continue;
            }
            // f_k = column k of Hh (Hh^H Hh)^{-1}
            fk = Hh * gram.ldlt().solve(Eigen::VectorXcd::Unit(K, k));
        } else {
            fk = Hh.col(k);
        }
        const Eigen::VectorXcd cross = Hh.adjoint() * fk;  // conj of f_k^H h_hat_j
        const double fk2 = fk.squaredNorm();
        double interference = 0.0;
        for (int j = 0; j < K; ++j)
            if (j != k) interference += w(j) * std::norm(cross(j));
        const double num = w(k) * std::norm(cross(k));
        const double den = fk2 * (1.0 + sigma2 * w_sum) + interference;
        out.rates.push_back(std::log2(1.0 + num / den));
    }
    return out;
}

// Summary statistics of a sample against the closed-form prediction.
struct RateStats {
    double empirical_mean = 0.0;
    double empirical_std = 0.0;  // sample standard deviation (n - 1)
    double approx_rate = 0.0;
    double abs_gap = 0.0;  // |empirical_mean - approx_rate|
};

inline RateStats summarize_rates(const std::vector<double>& rates, double approx_rate) {
    if (rates.empty()) throw parameter_error("summarize_rates: empty sample");
    RateStats st;
    st.approx_rate = approx_rate;
    for (double v : rates) st.empirical_mean += v;
    st.empirical_mean /= static_cast<double>(rates.size());
    if (rates.size() > 1) {
        double acc = 0.0;
        for (double v : rates) acc += (v - st.empirical_mean) * (v - st.empirical_mean);
        st.empirical_std = std::sqrt(acc / static_cast<double>(rates.size() - 1));
    }
    st.abs_gap = std::abs(st.empirical_mean - st.approx_rate);
    return st;
}

// One row of the approximation-accuracy study (reference geometry: N = 100,
// L = 10, K = 5, unit gains, energy split half to each phase).
struct AccuracyRow {
    int M = 0;
    double E_dB = 0.0;
    ReceiverKind receiver = ReceiverKind::ZF;
    RateStats stats;
    int skipped = 0;
};

inline std::vector<AccuracyRow> accuracy_report(const std::vector<int>& antenna_counts,
                                                const std::vector<double>& energies_dB,
                                                const std::vector<ReceiverKind>& receivers,
                                                int num_realizations, std::uint64_t seed) {
    constexpr int N = 100, L = 10, K = 5;
    std::vector<AccuracyRow> rows;
    std::uint64_t cell = 0;  // each grid cell gets its own root seed: seed + cell
    for (ReceiverKind receiver : receivers) {
        for (int M : antenna_counts) {
            for (double E_dB : energies_dB) {
                const double E = std::pow(10.0, E_dB / 10.0);
                UserSet group(K);
                std::vector<EnergyAllocation> alloc(K);
                for (int j = 0; j < K; ++j) {
                    group[j] = UserProfile{j, E, 1.0};
                    alloc[j] = EnergyAllocation{E / (2.0 * L), E / (2.0 * (N - L))};
                }
                RealizationBatch batch{M, K, L, N, num_realizations, seed + cell, receiver};
                const ExactRateSamples samples = exact_rate_samples(batch, group, alloc, 0);
                const double approx =
                    rate_approx(receiver, M, L, group, alloc, E / (2.0 * L), 0);
                AccuracyRow row;
                row.M = M;
                row.E_dB = E_dB;
                row.receiver = receiver;
                row.stats = summarize_rates(samples.rates, approx);
                row.skipped = samples.skipped;
                rows.push_back(row);
                ++cell;
            }
        }
    }
    return rows;
}

}  // namespace lsas

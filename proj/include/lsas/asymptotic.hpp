// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Large-population design rules. When the user population grows with a fixed
// product distribution, the optimal policy tends to equal groups of K users
// trained over L symbols, where (L, K) minimizes the normalized latency
//   H(L, K) / (K (1 - L/N)),   H = E[ 1 / log2(1 + h(X; L, K)) ],
// and h is the closed-form group SINR at the optimal training/data split for
// a zero-forcing receiver with M antennas. This header provides h, its
// limits, the expectation H, the (L, K) grid search, the matching finite
// policy, and the SNR/antenna regime classifier with its scaling laws.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/lognormal.hpp>

#include "lsas/errors.hpp"
#include "lsas/scheduler.hpp"
#include "lsas/types.hpp"

namespace lsas {

// --- Lambert W, principal branch -------------------------------------------

// Halley iteration in extended precision from a regime-matched seed.
// Domain: x >= -1/e; below it there is no real branch.
inline double lambert_w0(double x) {
    constexpr double kNegInvE = -0.36787944117144233;  // -1/e
    if (x < kNegInvE - 1e-15) throw parameter_error("lambert_w0: argument below -1/e");
    if (x == 0.0) return 0.0;
    long double w;
    const long double xl = x;
    if (x < -0.3) {
        // Near the branch point: w = -1 + sqrt(2(ex+1)) - ...
        const long double p = std::sqrt(std::max(2.0L * (2.7182818284590452354L * xl + 1.0L), 0.0L));
        w = -1.0L + p - p * p / 3.0L;
    } else if (x < 2.0) {
        w = xl / (1.0L + xl);  // crude but in the basin
    } else {
        const long double l1 = std::log(xl), l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    for (int it = 0; it < 64; ++it) {
        const long double ew = std::exp(w);
        const long double f = w * ew - xl;
        const long double wp1 = w + 1.0L;
        const long double step = f / (ew * wp1 - (w + 2.0L) * f / (2.0L * wp1));
        w -= step;
        if (std::abs(step) <= 1e-18L * (1.0L + std::abs(w))) break;
    }
    return static_cast<double>(w);
}

// Group-size coefficient of the high-SNR many-antenna regime: the optimal
// K grows as chi* sqrt(M N) with
//   chi* = sqrt((1/3) (2 / (W(-2 e^-2) + 2) - 1)).
inline double chi_star() {
    const double w = lambert_w0(-2.0 * std::exp(-2.0));
    return std::sqrt((2.0 / (w + 2.0) - 1.0) / 3.0);
}

// --- Closed-form group SINR h(x; L, K) --------------------------------------

namespace detail {
// Stable 1 - sqrt((a x + 1)(b x + 1)) = -s / (1 + sqrt(1 + s)),
// s = (a + b) x + a b x^2; avoids the subtractive cancellation at small x.
inline double one_minus_sqrt_prod(double a, double b, double x) {
    const double s = (a + b) * x + a * b * x * x;
    return -s / (1.0 + std::sqrt(1.0 + s));
}
}  // namespace detail

// SINR every member of a K-user group sustains at the optimal training/data
// split, as a function of the group's worst energy-gain product x, in the
// M antennas / N symbols / L training symbols geometry (zero-forcing).
inline double h_value(double x, int L, int K, int M, int N) {
    if (L < 1 || L >= N) throw parameter_error("h_value: need 1 <= L < N");
    if (K < 1) throw parameter_error("h_value: need K >= 1");
    if (M <= K) throw parameter_error("h_value: need M > K");
    if (x < 0.0) throw parameter_error("h_value: negative product");
    if (x == 0.0) return 0.0;
    const double Ld = L, Kd = K, Nd = N, Md = M;
    if (K > L) {
        if (N == 2 * L) {
            // Limit of the generic branch as N -> 2L (both its numerator and
            // denominator vanish there).
            return Ld * (Md - Kd) * x * x /
                   (Kd * (Kd - Ld) * x * x + 4.0 * Kd * Ld * x + 4.0 * Ld * Ld);
        }
        const double A = Kd * Nd * x + 2.0 * Ld * (Nd - Ld) *
                                           detail::one_minus_sqrt_prod(Kd / (Nd - Ld), Kd / Ld, x);
        return (Ld * (Md - Kd) / Kd) * A /
               ((Kd - Ld) * A + Kd * (Nd - 2.0 * Ld) * (Nd - 2.0 * Ld));
    }
    if (N == L + K) return ((Md - Kd) / (4.0 * Kd)) * x * x / (x + 1.0);
    const double num = (Nd - Ld + Kd) * x +
                       2.0 * (Nd - Ld) * detail::one_minus_sqrt_prod(Kd / (Nd - Ld), 1.0, x);
    const double dlk = Nd - Ld - Kd;
    return (Md - Kd) * num / (dlk * dlk);
}

// Asymptotes of h: for K > L the SINR saturates at a plateau as x grows; for
// K <= L it grows linearly and `large_x` is the slope lim h/x. `small_x_coeff`
// is c in h ~ c x^2 as x -> 0 (same expression in every branch).
struct HLimits {
    double large_x = 0.0;
    double small_x_coeff = 0.0;
};

inline HLimits h_limits_check(int L, int K, int M, int N) {
    if (L < 1 || L >= N) throw parameter_error("h_limits_check: need 1 <= L < N");
    if (K < 1 || M <= K) throw parameter_error("h_limits_check: need 1 <= K < M");
    const double Ld = L, Kd = K, Nd = N, Md = M;
    HLimits lim;
    if (K > L) {
        lim.large_x = (Md - Kd) * Ld / (Kd * (Kd - Ld));
    } else {
        lim.large_x = (Md - Kd) / (Nd - Ld + Kd + 2.0 * std::sqrt(Kd * (Nd - Ld)));
    }
    lim.small_x_coeff = (Md - Kd) / (4.0 * (Nd - Ld));
    return lim;
}

// --- Product distributions and the latency expectation ----------------------

// Distribution of the per-user energy-gain product E_j beta_j across the
// population. Three shapes cover the design studies: a point mass (homogeneous
// population), an empirical sample (measured products), and a lognormal law.
class ProductDistribution {
  public:
    enum class Kind { PointMass, Empirical, Lognormal };

    static ProductDistribution point_mass(double value) {
        if (!(value >= 0.0)) throw parameter_error("point_mass: negative product");
        ProductDistribution d;
        d.kind_ = Kind::PointMass;
        d.point_ = value;
        return d;
    }
    static ProductDistribution empirical(std::vector<double> samples) {
        if (samples.empty()) throw parameter_error("empirical: no samples");
        for (double s : samples)
            if (!(s >= 0.0)) throw parameter_error("empirical: negative product");
        ProductDistribution d;
        d.kind_ = Kind::Empirical;
        d.samples_ = std::move(samples);
        return d;
    }
    static ProductDistribution lognormal(double mu, double sigma) {
        if (!(sigma > 0.0)) throw parameter_error("lognormal: sigma must be positive");
        ProductDistribution d;
        d.kind_ = Kind::Lognormal;
        d.mu_ = mu;
        d.sigma_ = sigma;
        return d;
    }

    Kind kind() const { return kind_; }
    double mean() const {
        switch (kind_) {
            case Kind::PointMass: return point_;
            case Kind::Empirical: {
                double s = 0.0;
                for (double v : samples_) s += v;
                return s / static_cast<double>(samples_.size());
            }
            case Kind::Lognormal: return std::exp(mu_ + 0.5 * sigma_ * sigma_);
        }
        return 0.0;
    }
    double quantile(double p) const {
        if (!(p > 0.0 && p < 1.0)) throw parameter_error("quantile: need 0 < p < 1");
        if (kind_ != Kind::Lognormal)
            throw parameter_error("quantile: defined for the lognormal shape only");
        return boost::math::quantile(boost::math::lognormal_distribution<double>(mu_, sigma_), p);
    }
    const std::vector<double>& samples() const { return samples_; }
    double point() const { return point_; }

  private:
    Kind kind_ = Kind::PointMass;
    double point_ = 0.0;
    double mu_ = 0.0, sigma_ = 1.0;
    std::vector<double> samples_;
};

namespace detail {
// Equal-weight evaluation nodes for E[g(X)]: the point itself, the empirical
// sample, or a midpoint quantile rule for the lognormal shape.
inline std::vector<double> expectation_nodes(const ProductDistribution& dist, int quad_points) {
    switch (dist.kind()) {
        case ProductDistribution::Kind::PointMass: return {dist.point()};
        case ProductDistribution::Kind::Empirical: return dist.samples();
        case ProductDistribution::Kind::Lognormal: {
            if (quad_points < 1) throw parameter_error("expectation: quad_points < 1");
            std::vector<double> xs(static_cast<std::size_t>(quad_points));
            for (int i = 0; i < quad_points; ++i)
                xs[i] = dist.quantile((i + 0.5) / static_cast<double>(quad_points));
            return xs;
        }
    }
    throw internal_error("expectation_nodes: unknown distribution kind");
}

inline double mean_inverse_rate(const std::vector<double>& xs, int L, int K, int M, int N) {
    double acc = 0.0;
    for (double x : xs) {
        const double h = h_value(x, L, K, M, N);
        if (!(h > 0.0))
            throw divergence_error("expected inverse rate diverges: product mass at zero");
        acc += 1.0 / std::log2(1.0 + h);
    }
    return acc / static_cast<double>(xs.size());
}
}  // namespace detail

// H(L, K) = E[ 1 / log2(1 + h(X; L, K)) ]: expected channel uses per bit for
// a random member of an equal-(L, K) design. Any probability mass at zero
// product makes the expectation diverge.
inline double H_expectation(int L, int K, const ProductDistribution& dist, int M, int N,
                            int quad_points = 4096) {
    return detail::mean_inverse_rate(detail::expectation_nodes(dist, quad_points), L, K, M, N);
}

struct AsymptoticParams {
    int L_star = 0;
    int K_star = 0;
    double H = 0.0;          // H(L*, K*)
    double objective = 0.0;  // H / (K* (1 - L*/N)), the normalized latency core
    int M = 0, N = 0;
};

// Exhaustive minimization of H(L,K) / (K (1 - L/N)) over 1 <= L < N and
// 1 <= K < M (zero-forcing needs a spatial surplus). Lexicographic (L, K)
// tie-break via strict improvement in scan order.
inline AsymptoticParams asymptotic_params(const ProductDistribution& dist, int M, int N,
                                          int quad_points = 4096) {
    if (N < 2 || M < 2) throw parameter_error("asymptotic_params: need N >= 2, M >= 2");
    const std::vector<double> xs = detail::expectation_nodes(dist, quad_points);
    AsymptoticParams best;
    best.M = M;
    best.N = N;
    double best_obj = std::numeric_limits<double>::infinity();
    for (int L = 1; L < N; ++L) {
        for (int K = 1; K < M; ++K) {
            const double H = detail::mean_inverse_rate(xs, L, K, M, N);
            const double obj = H / (K * (1.0 - static_cast<double>(L) / N));
            if (obj < best_obj) {
                best_obj = obj;
                best.L_star = L;
                best.K_star = K;
                best.H = H;
                best.objective = obj;
            }
        }
    }
    return best;
}

// Normalized delivery latency (seconds per user, U -> infinity) of the equal
// design: eta T_th / W * H / (K* (1 - L*/N)).
inline double asymptotic_latency(const AsymptoticParams& params, const FrameConfig& config) {
    config.validate();
    if (params.K_star < 1 || params.L_star < 1 || params.L_star >= config.num_symbols)
        throw parameter_error("asymptotic_latency: invalid design parameters");
    if (params.N != config.num_symbols)
        throw parameter_error("asymptotic_latency: params computed for a different N");
    return config.bandwidth_inefficiency * config.throughput_target / config.bandwidth *
           params.objective;
}

// Finite-U policy induced by the asymptotic rule: sort users by product and
// cut into consecutive blocks of K_star (last block smaller). Useful as a
// near-optimal O(U log U) schedule when the full optimization is too slow.
inline SchedulingPolicy asymptotic_policy(const UserSet& users, ReceiverKind receiver,
                                          const FrameConfig& config, int M, int L_star,
                                          int K_star, bool mk_plus_one = false) {
    config.validate();
    if (K_star < 1) throw parameter_error("asymptotic_policy: K_star < 1");
    if (L_star < 1 || L_star >= config.num_symbols)
        throw parameter_error("asymptotic_policy: need 1 <= L_star < N");
    UserSet sorted = users;
    sort_users(sorted);
    const int U = static_cast<int>(sorted.size());
    if (U < 1) throw parameter_error("asymptotic_policy: no users");
    std::vector<CandidateGroup> groups;
    for (int first = 1; first <= U; first += K_star) {
        CandidateGroup g;
        g.first = first;
        g.last = std::min(first + K_star - 1, U);
        groups.push_back(g);
    }
    return assemble_policy(sorted, receiver, config, M, L_star, groups, mk_plus_one);
}

// --- Regime classification ---------------------------------------------------

// Operating regimes of the equal design as functions of the common SNR rho
// and the antenna count M (boundaries in natural log):
//   i   : rho > 1, M <  ln^2 rho  -> train and serve N/2 each
//   ii  : rho > 1, M >= ln^2 rho  -> K* ~ chi* sqrt(M N), L* ~ N/3
//   iii : rho <= 1 (with iv it shares the same leading behavior) -> K* ~ M/2
enum class Regime { HighSnrFewAntennas, HighSnrManyAntennas, LowSnr };

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::HighSnrFewAntennas: return "i";
        case Regime::HighSnrManyAntennas: return "ii";
        case Regime::LowSnr: return "iii/iv";
    }
    return "?";
}

struct RegimeReport {
    Regime regime = Regime::LowSnr;
    int L_star = 0;
    int K_star = 0;
    std::string latency_scaling;          // non-orthogonal training permitted
    std::string orthogonal_only_scaling;  // pilots restricted to orthogonal
};

namespace detail {
inline int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }
}  // namespace detail

inline RegimeReport classify_regime(double rho, int M, int N) {
    if (!(rho > 0.0)) throw parameter_error("classify_regime: rho must be positive");
    if (M < 2 || N < 2) throw parameter_error("classify_regime: need M >= 2, N >= 2");
    RegimeReport rep;
    const double lr = std::log(rho);
    if (rho > 1.0 && static_cast<double>(M) < lr * lr) {
        rep.regime = Regime::HighSnrFewAntennas;
        rep.L_star = detail::round_half_up(N / 2.0);
        rep.K_star = detail::round_half_up(N / 2.0);
        rep.latency_scaling = "Theta(T_th*U / (W*log(rho)))";
    } else if (rho > 1.0) {
        rep.regime = Regime::HighSnrManyAntennas;
        rep.L_star = detail::round_half_up(N / 3.0);
        rep.K_star = detail::round_half_up(chi_star() * std::sqrt(static_cast<double>(M) * N));
        rep.latency_scaling = "Theta(T_th*U / (W*sqrt(M)))";
    } else {
        rep.regime = Regime::LowSnr;
        rep.L_star = 1;  // any o(N) training length attains the leading order
        rep.K_star = detail::round_half_up(M / 2.0);
        rep.latency_scaling = "Theta(T_th*U / (W*M^2*rho^2))";
    }
    if (rho > 1.0) {
        rep.orthogonal_only_scaling = static_cast<double>(M) < rho
                                          ? "Theta(T_th*U / (W*log(rho)))"
                                          : "Theta(T_th*U / (W*log(M)))";
    } else {
        rep.orthogonal_only_scaling = "Theta(T_th*U / (W*M*rho^2))";
    }
    return rep;
}

}  // namespace lsas

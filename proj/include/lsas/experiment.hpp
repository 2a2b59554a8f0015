// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Experiment runner: flat key=value configs, the linear-cell user population,
// and CSV table/figure generators for the reproduction studies. All outputs
// are plain RFC-4180-style CSV with 17-significant-digit reals and LF line
// endings, byte-deterministic for a fixed (config, seed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lsas/asymptotic.hpp"
#include "lsas/baselines.hpp"
#include "lsas/errors.hpp"
#include "lsas/montecarlo.hpp"
#include "lsas/scheduler.hpp"
#include "lsas/types.hpp"

namespace lsas {

// Linear cell: users placed at d_j = r_min + (r_max - r_min) j / U for
// j = 1..U, long-term gain beta_j = g0 d_j^-alpha.
struct PathlossModel {
    double g0 = 0.1;
    double alpha = 4.0;
    double r_min = 10.0;
    double r_max = 100.0;
};

struct ExperimentConfig {
    FrameConfig frame{100, 80, 1e7, 1e-5, 1e-3, 1e4, 1.25};
    int num_users = 100;
    PathlossModel pathloss;
    std::vector<double> energy_db{70.0};  // one shared value or one per user
    std::string calibration = "worst_user_0dB";  // or "raw"
    double calibration_reference_db = 70.0;
    ReceiverKind receiver = ReceiverKind::ZF;
    int antennas = 64;
    std::uint64_t seed = 1;
    SolverKind solver = SolverKind::DP;
    int num_draws = 20;          // baseline draws
    int num_realizations = 10000;  // Monte Carlo realizations
    int quad_points = 4096;      // quantile-rule nodes
    EqualSplitRule baseline_equal_split = EqualSplitRule::PerSymbol;
    std::vector<double> energy_sweep_db{50, 60, 70, 80, 90, 100, 110, 120, 130, 140};
    std::vector<int> antenna_sweep{32, 64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384};
    std::vector<int> user_sweep{100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
    std::vector<int> mc_antenna_sweep{16, 32, 64, 128, 256};
    std::vector<double> mc_energy_sweep_db{0, 10, 20};
    std::string out_dir = ".";

    void validate() const {
        frame.validate();
        if (num_users < 1) throw parameter_error("config: num_users >= 1 required");
        if (antennas < 1) throw parameter_error("config: antennas >= 1 required");
        if (energy_db.empty()) throw parameter_error("config: energy_db must not be empty");
        if (energy_db.size() != 1 && energy_db.size() != static_cast<std::size_t>(num_users))
            throw parameter_error("config: energy_db must be a scalar or one value per user");
        if (calibration != "worst_user_0dB" && calibration != "raw")
            throw parameter_error("config: calibration must be worst_user_0dB or raw");
        if (num_draws < 1 || num_realizations < 1 || quad_points < 1)
            throw parameter_error("config: counts must be >= 1");
        if (energy_sweep_db.empty() || antenna_sweep.empty() || user_sweep.empty() ||
            mc_antenna_sweep.empty() || mc_energy_sweep_db.empty())
            throw parameter_error("config: sweep lists must not be empty");
        if (!(pathloss.g0 > 0.0 && pathloss.alpha > 0.0 && pathloss.r_min > 0.0 &&
              pathloss.r_max >= pathloss.r_min))
            throw parameter_error("config: invalid pathloss model");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_real(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double out;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        throw parameter_error("config: bad number for " + key + ": '" + v + "'");
    }
    if (used != v.size()) throw parameter_error("config: bad number for " + key + ": '" + v + "'");
    return out;
}

inline long long parse_integer(const std::string& key, const std::string& v) {
    const double d = parse_real(key, v);
    const long long out = static_cast<long long>(d);
    if (static_cast<double>(out) != d)
        throw parameter_error("config: " + key + " must be an integer, got '" + v + "'");
    return out;
}

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> parts;
    std::string cur;
    std::stringstream ss(v);
    while (std::getline(ss, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) parts.push_back(cur);
    }
    return parts;
}

inline std::vector<double> parse_real_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& p : split_list(v)) out.push_back(parse_real(key, p));
    if (out.empty()) throw parameter_error("config: empty list for " + key);
    return out;
}

inline std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const auto& p : split_list(v)) out.push_back(static_cast<int>(parse_integer(key, p)));
    if (out.empty()) throw parameter_error("config: empty list for " + key);
    return out;
}

inline ReceiverKind parse_receiver(const std::string& v) {
    if (v == "zf") return ReceiverKind::ZF;
    if (v == "mrc") return ReceiverKind::MRC;
    throw parameter_error("config: receiver must be zf or mrc, got '" + v + "'");
}

inline SolverKind parse_solver(const std::string& v) {
    if (v == "lp") return SolverKind::LP;
    if (v == "dp") return SolverKind::DP;
    throw parameter_error("config: solver must be lp or dp, got '" + v + "'");
}

inline EqualSplitRule parse_split(const std::string& v) {
    if (v == "per_symbol") return EqualSplitRule::PerSymbol;
    if (v == "per_phase") return EqualSplitRule::PerPhase;
    throw parameter_error("config: baseline_equal_split must be per_symbol or per_phase");
}

}  // namespace detail

// Parses the flat `key = value` format ('#' starts a comment; blank lines
// ignored; unknown keys rejected so typos cannot silently fall back to
// defaults). Values extend the defaults of ExperimentConfig.
inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parameter_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw parameter_error("config line " + std::to_string(lineno) + ": empty key or value");

        if (key == "num_symbols") cfg.frame.num_symbols = static_cast<int>(detail::parse_integer(key, val));
        else if (key == "num_subframes") cfg.frame.num_subframes = static_cast<int>(detail::parse_integer(key, val));
        else if (key == "bandwidth_hz") cfg.frame.bandwidth = detail::parse_real(key, val);
        else if (key == "symbol_duration_s") cfg.frame.symbol_duration = detail::parse_real(key, val);
        else if (key == "frame_duration_s") cfg.frame.frame_duration = detail::parse_real(key, val);
        else if (key == "throughput_target_bits") cfg.frame.throughput_target = detail::parse_real(key, val);
        else if (key == "bandwidth_inefficiency") cfg.frame.bandwidth_inefficiency = detail::parse_real(key, val);
        else if (key == "num_users") cfg.num_users = static_cast<int>(detail::parse_integer(key, val));
        else if (key == "pathloss_g0") cfg.pathloss.g0 = detail::parse_real(key, val);
        else if (key == "pathloss_alpha") cfg.pathloss.alpha = detail::parse_real(key, val);
        else if (key == "r_min_m") cfg.pathloss.r_min = detail::parse_real(key, val);
        else if (key == "r_max_m") cfg.pathloss.r_max = detail::parse_real(key, val);
        else if (key == "energy_db") cfg.energy_db = detail::parse_real_list(key, val);
        else if (key == "calibration") cfg.calibration = val;
        else if (key == "calibration_reference_db") cfg.calibration_reference_db = detail::parse_real(key, val);
        else if (key == "receiver") cfg.receiver = detail::parse_receiver(val);
        else if (key == "antennas") cfg.antennas = static_cast<int>(detail::parse_integer(key, val));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(detail::parse_integer(key, val));
        else if (key == "solver") cfg.solver = detail::parse_solver(val);
        else if (key == "num_draws") cfg.num_draws = static_cast<int>(detail::parse_integer(key, val));
        else if (key == "num_realizations") cfg.num_realizations = static_cast<int>(detail::parse_integer(key, val));
        else if (key == "quad_points") cfg.quad_points = static_cast<int>(detail::parse_integer(key, val));
        else if (key == "baseline_equal_split") cfg.baseline_equal_split = detail::parse_split(val);
        else if (key == "energy_sweep_db") cfg.energy_sweep_db = detail::parse_real_list(key, val);
        else if (key == "antenna_sweep") cfg.antenna_sweep = detail::parse_int_list(key, val);
        else if (key == "user_sweep") cfg.user_sweep = detail::parse_int_list(key, val);
        else if (key == "mc_antenna_sweep") cfg.mc_antenna_sweep = detail::parse_int_list(key, val);
        else if (key == "mc_energy_sweep_db") cfg.mc_energy_sweep_db = detail::parse_real_list(key, val);
        else if (key == "out_dir") cfg.out_dir = val;
        else throw parameter_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("config: cannot open '" + path + "'");
    return parse_config(in);
}

// Users on the line [r_min, r_max] with common (or per-user) energy budget.
// worst_user_0dB rescales every gain so that at the reference budget the
// farthest user's received energy is exactly 1 (0 dB); raw keeps the literal
// pathloss values.
inline UserSet build_population(const ExperimentConfig& cfg) {
    cfg.validate();
    const int U = cfg.num_users;
    UserSet users(static_cast<std::size_t>(U));
    double beta_far = 0.0;
    for (int j = 1; j <= U; ++j) {
        const double d = cfg.pathloss.r_min + (cfg.pathloss.r_max - cfg.pathloss.r_min) *
                                                  static_cast<double>(j) / U;
        const double beta = cfg.pathloss.g0 * std::pow(d, -cfg.pathloss.alpha);
        const double Edb = cfg.energy_db.size() == 1 ? cfg.energy_db[0]
                                                     : cfg.energy_db[static_cast<std::size_t>(j - 1)];
        users[static_cast<std::size_t>(j - 1)] =
            UserProfile{j, std::pow(10.0, Edb / 10.0), beta};
        if (j == U) beta_far = beta;
    }
    if (cfg.calibration == "worst_user_0dB") {
        const double E_ref = std::pow(10.0, cfg.calibration_reference_db / 10.0);
        const double scale = 1.0 / (E_ref * beta_far);
        for (auto& u : users) u.gain *= scale;
    }
    return users;
}

// --- CSV emission ------------------------------------------------------------

struct CsvTable {
    std::string name;  // basename without extension
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::string out;
        out += detail_join(header);
        for (const auto& r : rows) out += detail_join(r);
        return out;
    }

  private:
    static std::string detail_join(const std::vector<std::string>& fields) {
        std::string line;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) line += ',';
            line += quote(fields[i]);
        }
        line += '\n';
        return line;
    }
    static std::string quote(const std::string& f) {
        if (f.find_first_of(",\"\n") == std::string::npos) return f;
        std::string q = "\"";
        for (char c : f) {
            if (c == '"') q += '"';
            q += c;
        }
        q += '"';
        return q;
    }
};

namespace detail {

inline std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_int(long long v) { return std::to_string(v); }

// Group-size multiset, ascending, space-separated ("20 20 20 20 20").
inline std::string group_sizes_string(const std::vector<CandidateGroup>& groups) {
    std::vector<int> sizes;
    for (const auto& g : groups) sizes.push_back(g.size());
    std::sort(sizes.begin(), sizes.end());
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(sizes[i]);
    }
    return out;
}

inline std::string block_sizes_string(int U, int K) {
    std::vector<int> sizes;
    for (int first = 0; first < U; first += K) sizes.push_back(std::min(K, U - first));
    std::sort(sizes.begin(), sizes.end());
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(sizes[i]);
    }
    return out;
}

inline std::string sanitize_error(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n') c = ';';
    return msg;
}

}  // namespace detail

// --- Table and figure generators ---------------------------------------------

// One row per sweep point per scheme. Columns: the sweep key/value, the
// scheme, frame-quantized and fluid latencies, L*, the group-size multiset
// and the spectral efficiency; `status` is "ok" or the error that made the
// point unservable (numeric fields left empty in that case).
inline CsvTable run_table(const ExperimentConfig& cfg, int table_id,
                          const std::vector<std::string>& schemes = {"proposed", "random_optimal",
                                                                     "random_equal"}) {
    cfg.validate();
    if (table_id < 3 || table_id > 5) throw parameter_error("run_table: table id must be 3, 4 or 5");
    if (schemes.empty()) throw parameter_error("run_table: no schemes requested");
    for (const auto& s : schemes)
        if (s != "proposed" && s != "random_optimal" && s != "random_equal" && s != "asymptotic")
            throw parameter_error("run_table: unknown scheme '" + s + "'");

    CsvTable tab;
    tab.name = "table" + std::to_string(table_id);
    const std::string sweep_key = table_id == 3 ? "E_dB" : table_id == 4 ? "M" : "U";
    tab.header = {"sweep_key", "sweep_value",  "scheme",
                  "receiver",  "latency_seconds", "approx_latency_seconds",
                  "L_star",    "group_sizes",  "SE_star",
                  "status"};

    std::vector<double> sweep;
    if (table_id == 3)
        sweep = cfg.energy_sweep_db;
    else if (table_id == 4)
        for (int m : cfg.antenna_sweep) sweep.push_back(m);
    else
        for (int u : cfg.user_sweep) sweep.push_back(u);

    for (double value : sweep) {
        ExperimentConfig point = cfg;
        if (table_id == 3)
            point.energy_db = {value};
        else if (table_id == 4)
            point.antennas = static_cast<int>(value);
        else
            point.num_users = static_cast<int>(value);
        const std::string sweep_value =
            table_id == 3 ? detail::fmt_real(value) : detail::fmt_int(static_cast<long long>(value));

        for (const auto& scheme : schemes) {
            std::vector<std::string> row{sweep_key, sweep_value, scheme,
                                         to_string(point.receiver)};
            try {
                const UserSet users = build_population(point);
                if (scheme == "proposed" || scheme == "asymptotic") {
                    SchedulingPolicy pol;
                    if (scheme == "proposed") {
                        pol = optimize_policy(users, point.receiver, point.frame, point.antennas,
                                              point.solver);
                    } else {
                        std::vector<double> products;
                        for (const auto& u : users) products.push_back(u.product());
                        const auto params = asymptotic_params(
                            ProductDistribution::empirical(products), point.antennas,
                            point.frame.num_symbols, point.quad_points);
                        pol = asymptotic_policy(users, point.receiver, point.frame, point.antennas,
                                                params.L_star, params.K_star);
                    }
                    row.insert(row.end(),
                               {detail::fmt_real(pol.latency_seconds),
                                detail::fmt_real(pol.approx_latency_seconds),
                                detail::fmt_int(pol.training_length),
                                detail::group_sizes_string(pol.groups),
                                detail::fmt_real(pol.spectral_efficiency), "ok"});
                } else {
                    const BaselineResult b =
                        scheme == "random_optimal"
                            ? random_optimal(users, point.receiver, point.frame, point.antennas,
                                             point.seed, point.num_draws)
                            : random_equal(users, point.receiver, point.frame, point.antennas,
                                           point.seed, point.num_draws,
                                           point.baseline_equal_split);
                    // SE is derived from the mean latency so that the
                    // latency * W * SE = T_th identity holds on every row.
                    const double se_eff = point.frame.throughput_target /
                                          (point.frame.bandwidth * b.mean_latency_seconds);
                    row.insert(row.end(),
                               {detail::fmt_real(b.mean_frame_latency_seconds),
                                detail::fmt_real(b.mean_latency_seconds),
                                detail::fmt_int(b.best_L),
                                detail::block_sizes_string(static_cast<int>(users.size()), b.best_K),
                                detail::fmt_real(se_eff), "ok"});
                }
            } catch (const error& e) {
                row.insert(row.end(), {"", "", "", "", "", detail::sanitize_error(e.what())});
            }
            tab.rows.push_back(std::move(row));
        }
    }
    return tab;
}

inline CsvTable run_montecarlo(const ExperimentConfig& cfg, const std::string& name = "montecarlo") {
    cfg.validate();
    CsvTable tab;
    tab.name = name;
    tab.header = {"M", "E_dB", "receiver", "exact_mean", "exact_std", "approx"};
    const auto rows = accuracy_report(cfg.mc_antenna_sweep, cfg.mc_energy_sweep_db,
                                      {ReceiverKind::ZF, ReceiverKind::MRC},
                                      cfg.num_realizations, cfg.seed);
    for (const auto& r : rows) {
        tab.rows.push_back({detail::fmt_int(r.M), detail::fmt_real(r.E_dB),
                            to_string(r.receiver), detail::fmt_real(r.stats.empirical_mean),
                            detail::fmt_real(r.stats.empirical_std),
                            detail::fmt_real(r.stats.approx_rate)});
    }
    return tab;
}

inline CsvTable run_figure(const ExperimentConfig& cfg, int figure_id) {
    cfg.validate();
    switch (figure_id) {
        case 3:
            return run_montecarlo(cfg, "figure3");
        case 4:
        case 5: {
            CsvTable tab;
            tab.name = "figure" + std::to_string(figure_id);
            const bool by_energy = figure_id == 4;
            tab.header = {by_energy ? "E_dB" : "M", "scheme",
                          "receiver", "SE",
                          "approx_latency_seconds", "latency_seconds",
                          "status"};
            std::vector<double> sweep;
            if (by_energy)
                sweep = cfg.energy_sweep_db;
            else
                for (int m : cfg.antenna_sweep) sweep.push_back(m);
            for (double value : sweep) {
                ExperimentConfig point = cfg;
                if (by_energy)
                    point.energy_db = {value};
                else
                    point.antennas = static_cast<int>(value);
                const std::string sweep_value = by_energy
                                                    ? detail::fmt_real(value)
                                                    : detail::fmt_int(static_cast<long long>(value));
                for (const std::string scheme : {"proposed", "random_optimal", "random_equal"}) {
                    std::vector<std::string> row{sweep_value, scheme, to_string(point.receiver)};
                    try {
                        const UserSet users = build_population(point);
                        if (scheme == "proposed") {
                            const SchedulingPolicy pol = optimize_policy(
                                users, point.receiver, point.frame, point.antennas, point.solver);
                            row.insert(row.end(), {detail::fmt_real(pol.spectral_efficiency),
                                                   detail::fmt_real(pol.approx_latency_seconds),
                                                   detail::fmt_real(pol.latency_seconds), "ok"});
                        } else {
                            const BaselineResult b =
                                scheme == "random_optimal"
                                    ? random_optimal(users, point.receiver, point.frame,
                                                     point.antennas, point.seed, point.num_draws)
                                    : random_equal(users, point.receiver, point.frame,
                                                   point.antennas, point.seed, point.num_draws,
                                                   point.baseline_equal_split);
                            const double se_eff = point.frame.throughput_target /
                                                  (point.frame.bandwidth * b.mean_latency_seconds);
                            row.insert(row.end(), {detail::fmt_real(se_eff),
                                                   detail::fmt_real(b.mean_latency_seconds),
                                                   detail::fmt_real(b.mean_frame_latency_seconds),
                                                   "ok"});
                        }
                    } catch (const error& e) {
                        row.insert(row.end(), {"", "", "", detail::sanitize_error(e.what())});
                    }
                    tab.rows.push_back(std::move(row));
                }
            }
            return tab;
        }
        case 6:
        case 7: {
            CsvTable tab;
            tab.name = "figure" + std::to_string(figure_id);
            const bool by_energy = figure_id == 6;
            tab.header = {by_energy ? "E_dB" : "M", "L_star", "group_sizes"};
            std::vector<double> sweep;
            if (by_energy)
                sweep = cfg.energy_sweep_db;
            else
                for (int m : cfg.antenna_sweep) sweep.push_back(m);
            for (double value : sweep) {
                ExperimentConfig point = cfg;
                if (by_energy)
                    point.energy_db = {value};
                else
                    point.antennas = static_cast<int>(value);
                const UserSet users = build_population(point);
                const SchedulingPolicy pol = optimize_policy(users, point.receiver, point.frame,
                                                             point.antennas, point.solver);
                tab.rows.push_back({by_energy ? detail::fmt_real(value)
                                              : detail::fmt_int(static_cast<long long>(value)),
                                    detail::fmt_int(pol.training_length),
                                    detail::group_sizes_string(pol.groups)});
            }
            return tab;
        }
        case 8: {
            // Full (L, K) -> SE surface for equal groups of size K on the
            // product-sorted population (last group smaller); unservable
            // cells emit SE = 0.
            CsvTable tab;
            tab.name = "figure8";
            tab.header = {"L", "K", "SE"};
            UserSet users = build_population(cfg);
            sort_users(users);
            const int U = static_cast<int>(users.size());
            const int N = cfg.frame.num_symbols;
            const int maxK = cfg.receiver == ReceiverKind::ZF ? std::min(cfg.antennas - 1, U)
                                                              : std::min(cfg.antennas, U);
            if (maxK < 1) throw parameter_error("run_figure: no admissible group size");
            for (int L = 1; L < N; ++L) {
                for (int K = 1; K <= maxK; ++K) {
                    double inv_sum = 0.0;
                    bool dead = false;
                    for (int first = 1; first <= U && !dead; first += K) {
                        const int last = std::min(first + K - 1, U);
                        const double rate =
                            group_rate_value(cfg.receiver, cfg.antennas, N, last - first + 1, L,
                                             users[last - 1].product());
                        if (rate > 0.0)
                            inv_sum += 1.0 / rate;
                        else
                            dead = true;
                    }
                    const double se = dead ? 0.0
                                           : (1.0 - static_cast<double>(L) / N) /
                                                 cfg.frame.bandwidth_inefficiency / inv_sum;
                    tab.rows.push_back({detail::fmt_int(L), detail::fmt_int(K),
                                        detail::fmt_real(se)});
                }
            }
            return tab;
        }
        default:
            throw parameter_error("run_figure: figure id must be in 3..8");
    }
}

// Full policy dump for the configured population: a one-row summary plus the
// per-user assignment (group, time share, energy split).
inline std::pair<CsvTable, CsvTable> run_optimize(const ExperimentConfig& cfg) {
    cfg.validate();
    UserSet users = build_population(cfg);
    sort_users(users);
    const SchedulingPolicy pol =
        optimize_policy(users, cfg.receiver, cfg.frame, cfg.antennas, cfg.solver);

    CsvTable summary;
    summary.name = "policy_summary";
    summary.header = {"receiver", "M",       "U",
                      "N",        "L_star",  "group_sizes",
                      "SE",       "approx_latency_seconds", "latency_seconds",
                      "latency_frames"};
    summary.rows.push_back(
        {to_string(cfg.receiver), detail::fmt_int(cfg.antennas),
         detail::fmt_int(static_cast<long long>(users.size())),
         detail::fmt_int(cfg.frame.num_symbols), detail::fmt_int(pol.training_length),
         detail::group_sizes_string(pol.groups), detail::fmt_real(pol.spectral_efficiency),
         detail::fmt_real(pol.approx_latency_seconds), detail::fmt_real(pol.latency_seconds),
         detail::fmt_int(static_cast<long long>(pol.latency_frames))});

    CsvTable assignment;
    assignment.name = "policy_users";
    assignment.header = {"user_id", "energy_budget", "gain",         "group_index",
                         "portion", "train_energy",  "data_energy"};
    for (std::size_t q = 0; q < pol.groups.size(); ++q) {
        const CandidateGroup& g = pol.groups[q];
        for (int v = g.first; v <= g.last; ++v) {
            const UserProfile& u = users[static_cast<std::size_t>(v - 1)];
            const EnergyAllocation& a = pol.allocations[static_cast<std::size_t>(v - 1)];
            assignment.rows.push_back(
                {detail::fmt_int(u.id), detail::fmt_real(u.energy_budget),
                 detail::fmt_real(u.gain), detail::fmt_int(static_cast<long long>(q)),
                 detail::fmt_real(pol.portions[q]), detail::fmt_real(a.train_energy),
                 detail::fmt_real(a.data_energy)});
        }
    }
    return {summary, assignment};
}

// Asymptotic design for the configured population: grid-optimal (L*, K*),
// the induced finite policy, and the regime classification at the
// population's mean received quality.
inline CsvTable run_asymptotic(const ExperimentConfig& cfg) {
    cfg.validate();
    const UserSet users = build_population(cfg);
    std::vector<double> products;
    for (const auto& u : users) products.push_back(u.product());
    const auto dist = ProductDistribution::empirical(products);
    const auto params =
        asymptotic_params(dist, cfg.antennas, cfg.frame.num_symbols, cfg.quad_points);
    const double norm_latency = asymptotic_latency(params, cfg.frame);
    const SchedulingPolicy pol = asymptotic_policy(users, cfg.receiver, cfg.frame, cfg.antennas,
                                                   params.L_star, params.K_star);
    const RegimeReport regime =
        classify_regime(dist.mean(), cfg.antennas, cfg.frame.num_symbols);

    CsvTable tab;
    tab.name = "asymptotic";
    tab.header = {"M",
                  "N",
                  "L_star",
                  "K_star",
                  "H",
                  "objective",
                  "normalized_latency_seconds",
                  "policy_SE",
                  "policy_approx_latency_seconds",
                  "regime",
                  "latency_scaling",
                  "orthogonal_only_scaling"};
    tab.rows.push_back({detail::fmt_int(cfg.antennas), detail::fmt_int(cfg.frame.num_symbols),
                        detail::fmt_int(params.L_star), detail::fmt_int(params.K_star),
                        detail::fmt_real(params.H), detail::fmt_real(params.objective),
                        detail::fmt_real(norm_latency), detail::fmt_real(pol.spectral_efficiency),
                        detail::fmt_real(pol.approx_latency_seconds), to_string(regime.regime),
                        regime.latency_scaling, regime.orthogonal_only_scaling});
    return tab;
}

// Both random baselines on the configured population.
inline CsvTable run_baseline(const ExperimentConfig& cfg) {
    cfg.validate();
    const UserSet users = build_population(cfg);
    CsvTable tab;
    tab.name = "baseline";
    tab.header = {"scheme",  "receiver",
                  "M",       "num_draws",
                  "best_K",  "best_L",
                  "mean_SE", "mean_latency_seconds",
                  "latency_std_seconds", "mean_frame_latency_seconds"};
    const BaselineResult re = random_equal(users, cfg.receiver, cfg.frame, cfg.antennas, cfg.seed,
                                           cfg.num_draws, cfg.baseline_equal_split);
    const BaselineResult ro =
        random_optimal(users, cfg.receiver, cfg.frame, cfg.antennas, cfg.seed, cfg.num_draws);
    for (const BaselineResult* b : {&re, &ro}) {
        tab.rows.push_back({b->scheme, to_string(cfg.receiver), detail::fmt_int(cfg.antennas),
                            detail::fmt_int(b->num_draws), detail::fmt_int(b->best_K),
                            detail::fmt_int(b->best_L), detail::fmt_real(b->mean_SE),
                            detail::fmt_real(b->mean_latency_seconds),
                            detail::fmt_real(b->latency_std_seconds),
                            detail::fmt_real(b->mean_frame_latency_seconds)});
    }
    return tab;
}

// Writes `table` to `<dir>/<name>.csv` (LF endings) and returns the path.
inline std::string write_csv(const CsvTable& table, const std::string& dir) {
    const std::string path = (dir.empty() ? std::string(".") : dir) + "/" + table.name + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parameter_error("cannot write '" + path + "'");
    out << table.to_csv();
    if (!out) throw parameter_error("short write to '" + path + "'");
    return path;
}

}  // namespace lsas

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

// Counter-based random number generation (Philox-4x64, 10 rounds).
//
// Every consumer of randomness in this library derives an independent Stream
// from (seed, stream id, substream id). Streams are pure functions of their
// identity and a block counter, so results are reproducible under any
// evaluation order and never depend on how much randomness another component
// consumed.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace lsas::rng {

namespace detail {
inline constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
inline constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
inline constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}
}  // namespace detail

// One 256-bit block of the Philox-4x64-10 bijection.
inline std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> ctr,
                                               std::array<std::uint64_t, 2> key) {
    using namespace detail;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMult0, ctr[0], hi0, lo0);
        mulhilo(kMult1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

// A lazily advanced stream of uniforms/normals drawn from one counter plane.
//
//   key     = (seed, stream)          -- which logical random source
//   counter = (block, substream, 0, 0) -- block advances as values are drawn
//
// Distinct (seed, stream, substream) triples give independent streams.
class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
        : key_{seed, stream}, substream_(substream) {}

    std::uint64_t next_u64() {
        if (have_ == 0) {
            buf_ = philox4x64({block_++, substream_, 0, 0}, key_);
            have_ = 4;
        }
        return buf_[4 - have_--];
    }

    // Uniform on the open interval (0,1): 53 random bits centered in the bin.
    double next_unit() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Standard normal pair via Box-Muller.
    std::array<double, 2> next_normal_pair() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    double next_normal() {
        if (have_normal_) {
            have_normal_ = false;
            return spare_;
        }
        auto z = next_normal_pair();
        spare_ = z[1];
        have_normal_ = true;
        return z[0];
    }

    // Circularly-symmetric complex normal, unit variance: E|z|^2 = 1.
    std::complex<double> next_cnormal() {
        auto z = next_normal_pair();
        return {z[0] * 0.70710678118654752440, z[1] * 0.70710678118654752440};
    }

    // Uniform integer in [0, n) by scaling (n is tiny relative to 2^53 here,
    // so modulo bias is irrelevant; scaling keeps it reproducible and simple).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n)) % n;
    }

  private:
    std::array<std::uint64_t, 2> key_;
    std::uint64_t substream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buf_{};
    int have_ = 0;
    bool have_normal_ = false;
    double spare_ = 0.0;
};

// Stream ids used across the library (one per random source, so adding a new
// consumer never shifts anyone else's values).
enum : std::uint64_t {
    kStreamChannel = 1,
    kStreamTrainingNoise = 2,
    kStreamBaselineShuffle = 3,
    kStreamInstanceProducts = 4,
};

}  // namespace lsas::rng

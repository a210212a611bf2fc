#pragma once

// =============================================================================
// Noise engine: reproducible, independent Gaussian white-noise streams.
// =============================================================================
//
// Every stream is addressed by a SeedSpec (master seed, label, BEP index,
// repetition index). The address is hashed into a 64-bit stream key with
// derive_stream_key, the key seeds a xoshiro256** generator through
// SplitMix64, and normal deviates are drawn with the Marsaglia polar method.
// The whole chain is documented in docs/noise.md and is part of the output
// contract: changing any step changes every simulated number.

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kljn {

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::string stream_label;
    std::uint64_t bep_index = 0;
    std::uint64_t repetition_index = 0;
};

/// SplitMix64 output finaliser (bijective on 64-bit words).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// 64-bit FNV-1a of the label bytes.
[[nodiscard]] constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Stream key of a SeedSpec:
///   k1 = mix64(master + G)
///   k2 = mix64(k1 ^ fnv1a64(label))
///   k3 = mix64((k2 + 2G) ^ bep_index)
///   k4 = mix64((k3 + 3G) ^ repetition_index)
/// with G the golden-ratio increment 0x9e3779b97f4a7c15.
[[nodiscard]] std::uint64_t derive_stream_key(const SeedSpec& seed) noexcept;

/// SplitMix64 sequence generator (Steele, Lea, Flood 2014).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}
    constexpr std::uint64_t next() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna). Satisfies
/// std::uniform_random_bit_generator.
class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    /// State filled with four SplitMix64 outputs of `key`.
    explicit Xoshiro256StarStar(std::uint64_t key) noexcept;
    explicit Xoshiro256StarStar(const std::array<std::uint64_t, 4>& state) noexcept
        : s_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::array<std::uint64_t, 4> s_;
};

/// Standard normal deviates via the Marsaglia polar method. Deviates are
/// produced in pairs; the second of each pair is cached.
class GaussianStream {
public:
    explicit GaussianStream(const SeedSpec& seed) : rng_(derive_stream_key(seed)) {}
    explicit GaussianStream(std::uint64_t key) : rng_(key) {}

    double next();

    /// One fair bit from the underlying generator (top bit of one draw).
    bool next_bit();

private:
    Xoshiro256StarStar rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct NoiseSeries {
    std::vector<double> samples;
    double dt = 0.0;          // s
    double target_msv = 0.0;  // V^2 or A^2
};

/// Fills `out` with i.i.d. N(0, target_msv) samples of the stream `seed`.
/// target_msv == 0 gives exact zeros. Throws DomainError for negative msv.
void fill_gaussian(const SeedSpec& seed, double target_msv, std::span<double> out);

/// `length` samples spaced `dt` apart. Throws DomainError if length == 0,
/// target_msv < 0 or dt <= 0.
[[nodiscard]] NoiseSeries gaussian_series(const SeedSpec& seed, std::size_t length,
                                          double target_msv, double dt);

/// Nyquist sample spacing 1/(2B) of white noise band-limited to B.
[[nodiscard]] double nyquist_dt(double bandwidth);

}  // namespace kljn

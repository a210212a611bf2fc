#include "kljn/noise.hpp"

#include "kljn/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace kljn {

std::uint64_t derive_stream_key(const SeedSpec& seed) noexcept {
    std::uint64_t k = mix64(seed.master_seed + kGoldenGamma);
    k = mix64(k ^ fnv1a64(seed.stream_label));
    k = mix64((k + 2 * kGoldenGamma) ^ seed.bep_index);
    k = mix64((k + 3 * kGoldenGamma) ^ seed.repetition_index);
    return k;
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t key) noexcept {
    SplitMix64 sm(key);
    for (auto& word : s_) word = sm.next();
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * rng_.uniform01() - 1.0;
        v = 2.0 * rng_.uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

bool GaussianStream::next_bit() { return (rng_() >> 63) != 0; }

void fill_gaussian(const SeedSpec& seed, double target_msv, std::span<double> out) {
    if (!std::isfinite(target_msv) || target_msv < 0.0) {
        throw DomainError("target mean-square value must be non-negative");
    }
    if (target_msv == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    const double sigma = std::sqrt(target_msv);
    GaussianStream g(seed);
    for (double& x : out) x = sigma * g.next();
}

NoiseSeries gaussian_series(const SeedSpec& seed, std::size_t length, double target_msv,
                            double dt) {
    if (length == 0) throw DomainError("series length must be at least 1");
    if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("sample spacing must be positive");
    NoiseSeries out;
    out.samples.resize(length);
    out.dt = dt;
    out.target_msv = target_msv;
    fill_gaussian(seed, target_msv, out.samples);
    return out;
}

double nyquist_dt(double bandwidth) {
    if (!std::isfinite(bandwidth) || bandwidth <= 0.0) {
        throw DomainError("bandwidth must be positive");
    }
    return 1.0 / (2.0 * bandwidth);
}

}  // namespace kljn

// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/rng.hpp"

#include <cmath>
#include <numbers>

namespace tvws {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& s : s_)
        s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    // Modulo bias is negligible for the n used here (channel/sample counts).
    return n == 0 ? 0 : next_u64() % n;
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // u1 in (0,1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

Rng Rng::fork(std::uint64_t salt) const {
    return Rng(mix_seed(seed_, salt));
}

void fill_complex_gaussian(Rng& rng, Eigen::Ref<Eigen::ArrayXcf> out, float total_power) {
    const Eigen::Index n = out.size();
    if (n == 0)
        return;

    constexpr Eigen::Index kBlock = 8192;
    Eigen::ArrayXf u1(kBlock), u2(kBlock);
    const float sigma = std::sqrt(total_power * 0.5f);

    for (Eigen::Index base = 0; base < n; base += kBlock) {
        const Eigen::Index m = std::min(kBlock, n - base);
        for (Eigen::Index i = 0; i < m; ++i) {
            const std::uint64_t bits = rng.next_u64();
            // Two 32-bit halves; u1 in (0,1], u2 in [0,1).
            u1[i] = (static_cast<float>(static_cast<std::uint32_t>(bits)) + 1.0f) * 0x1.0p-32f;
            u2[i] = static_cast<float>(static_cast<std::uint32_t>(bits >> 32)) * 0x1.0p-32f;
        }
        auto u1h = u1.head(m);
        auto u2h = u2.head(m);
        Eigen::ArrayXf r = (-2.0f * u1h.log()).sqrt() * sigma;
        Eigen::ArrayXf theta = (2.0f * std::numbers::pi_v<float>) * u2h;
        out.segment(base, m).real() = r * theta.cos();
        out.segment(base, m).imag() = r * theta.sin();
    }
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
    std::uint64_t r = splitmix64(x);
    return r ^ b;
}

} // namespace tvws

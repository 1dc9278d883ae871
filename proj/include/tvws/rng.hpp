// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace tvws {

/// Deterministic PRNG (xoshiro256++ seeded via splitmix64). Self-contained so
/// that generated waveforms are reproducible across standard library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double normal();

    /// Derives an independent substream; deterministic in (seed, salt).
    Rng fork(std::uint64_t salt) const;

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// Fills out with circularly-symmetric complex Gaussian samples of the given
/// total power (real and imaginary parts each carry half). Vectorized
/// Box-Muller; the per-element bit pattern is fixed by (rng state, size).
void fill_complex_gaussian(Rng& rng, Eigen::Ref<Eigen::ArrayXcf> out, float total_power);

/// 64-bit mix of two values (splitmix64 finalizer); used to derive
/// per-channel and per-epoch seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

} // namespace tvws

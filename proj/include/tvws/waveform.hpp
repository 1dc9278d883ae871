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

#include <cstdint>
#include <map>

#include <Eigen/Dense>

#include "tvws/rng.hpp"
#include "tvws/spectrum.hpp"

namespace tvws {

/// Complex baseband capture of one channel.
struct IqBuffer {
    Eigen::ArrayXcf samples;
    double sample_rate_hz = 0.0;
    double center_freq_hz = 0.0;
    double capture_time_s = 0.0;
};

/// Default per-channel sample rate; covers the widest 8 MHz channel.
constexpr double kDefaultChannelSampleRateHz = 8e6;

struct SynthConfig {
    SignalClass cls = SignalClass::Vacant;
    double snr_db = 0.0;
    double duration_s = 0.0;
    std::uint64_t seed = 0;
    /// Nominal channel width the waveform archetype fills; set from the
    /// channel plan when synthesizing scenes.
    double channel_width_hz = 6e6;
};

/// Synthesizes one channel of complex baseband at the requested SNR.
///
/// Archetypes per class:
///   Vacant       - circular complex white Gaussian noise, unit power
///   TvBroadcast  - multicarrier (OFDM-like random-QPSK) filling >= 90% of
///                  the channel width
///   WirelessMic  - narrowband FM tone, occupied bandwidth <= 200 kHz, at a
///                  random offset within the channel
///   OtherTvws    - bursty single-carrier 16-QAM, duty cycle in [0.3, 0.8]
///
/// Non-vacant classes are scaled so mean signal power over the buffer equals
/// snr_db relative to the unit-power noise that is then added. Deterministic
/// for fixed (config, sample_rate).
IqBuffer synth_channel(const SynthConfig& config, double sample_rate_hz);

/// Training augmentation: complex-exponential mixing, linear-interpolation
/// resampling by the stretch ratio, then additive noise of extra_noise_db
/// relative to unit power (-inf adds none). Output length is
/// round(input * stretch). Throws AugmentOutOfRange when |freq_shift_hz| >
/// 500 kHz or time_stretch is outside [0.9, 1.1].
IqBuffer augment(const IqBuffer& buf, double freq_shift_hz, double time_stretch,
                 double extra_noise_db, std::uint64_t noise_seed = 0);

/// One buffer per channel of the plan, consistent with the scripted occupancy
/// and SNR at time t. Per-channel seeds derive from (seed, channel index).
std::map<ChannelId, IqBuffer> mix_scene(const GroundTruthOccupancy& truth,
                                        const ChannelPlan& plan, double t,
                                        double per_channel_rate_hz, std::uint64_t seed,
                                        double duration_s = 0.2);

} // namespace tvws

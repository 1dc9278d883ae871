// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/waveform.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "tvws/errors.hpp"

namespace tvws {

namespace {

using CArray = Eigen::ArrayXcf;

void check_config(const SynthConfig& config, double sample_rate_hz) {
    if (!(config.duration_s > 0.0))
        throw InvalidConfig("duration must be positive");
    if (!(sample_rate_hz > 0.0))
        throw InvalidConfig("sample rate must be positive");
    if (!(config.channel_width_hz > 0.0))
        throw InvalidConfig("channel width must be positive");
}

/// OFDM-like multicarrier: random QPSK on subcarriers spanning 94% of the
/// channel width, assembled symbol by symbol through a 1024-point IFFT.
CArray synth_tv_broadcast(Rng& rng, Eigen::Index n, double sample_rate_hz,
                          double channel_width_hz) {
    constexpr int kFft = 1024;
    const double bin_hz = sample_rate_hz / kFft;
    int half_span = static_cast<int>(std::floor(0.47 * channel_width_hz / bin_hz));
    half_span = std::min(half_span, kFft / 2 - 1);

    Eigen::FFT<float> fft;
    std::vector<std::complex<float>> freq(kFft), time(kFft);
    CArray out(n);

    const float amp = 1.0f / std::sqrt(static_cast<float>(2 * half_span + 1));
    Eigen::Index written = 0;
    while (written < n) {
        std::fill(freq.begin(), freq.end(), std::complex<float>(0.0f, 0.0f));
        for (int k = -half_span; k <= half_span; ++k) {
            const int bin = k >= 0 ? k : kFft + k;
            const float re = rng.uniform() < 0.5 ? -amp : amp;
            const float im = rng.uniform() < 0.5 ? -amp : amp;
            freq[bin] = std::complex<float>(re, im);
        }
        fft.inv(time, freq);
        const Eigen::Index m = std::min<Eigen::Index>(kFft, n - written);
        for (Eigen::Index i = 0; i < m; ++i)
            out[written + i] = time[i] * static_cast<float>(kFft);
        written += m;
    }
    return out;
}

/// Narrowband FM tone. Carson bandwidth 2*(deviation + tone) = 86 kHz, well
/// inside the 200 kHz occupied-bandwidth bound.
CArray synth_wireless_mic(Rng& rng, Eigen::Index n, double sample_rate_hz,
                          double channel_width_hz) {
    const double deviation_hz = 40e3;
    const double tone_hz = 3e3;
    const double beta = deviation_hz / tone_hz;
    const double max_offset = std::max(0.0, channel_width_hz / 2.0 - 150e3);
    const double f0 = rng.uniform(-max_offset, max_offset);

    CArray out(n);
    const double w0 = 2.0 * std::numbers::pi * f0 / sample_rate_hz;
    const double wm = 2.0 * std::numbers::pi * tone_hz / sample_rate_hz;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double phase = w0 * i + beta * std::sin(wm * i);
        out[i] = std::complex<float>(static_cast<float>(std::cos(phase)),
                                     static_cast<float>(std::sin(phase)));
    }
    return out;
}

/// Bursty single-carrier 16-QAM, rectangular symbol hold, 10 ms burst period
/// with an on-fraction drawn from [0.3, 0.8].
CArray synth_other_tvws(Rng& rng, Eigen::Index n, double sample_rate_hz) {
    const double symbol_rate_hz = 2e6;
    const int hold = std::max(1, static_cast<int>(std::round(sample_rate_hz / symbol_rate_hz)));
    const double duty = rng.uniform(0.3, 0.8);
    const Eigen::Index period = std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::round(0.010 * sample_rate_hz)));
    const Eigen::Index on_len = static_cast<Eigen::Index>(std::round(duty * period));

    static constexpr float kLevels[4] = {-3.0f, -1.0f, 1.0f, 3.0f};
    const float norm = 1.0f / std::sqrt(10.0f);

    CArray out = CArray::Zero(n);
    std::complex<float> sym(0.0f, 0.0f);
    int held = hold;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i % period >= on_len)
            continue;
        if (held >= hold) {
            sym = std::complex<float>(kLevels[rng.uniform_index(4)] * norm,
                                      kLevels[rng.uniform_index(4)] * norm);
            held = 0;
        }
        out[i] = sym;
        ++held;
    }
    return out;
}

} // namespace

IqBuffer synth_channel(const SynthConfig& config, double sample_rate_hz) {
    check_config(config, sample_rate_hz);
    const auto n =
        static_cast<Eigen::Index>(std::llround(config.duration_s * sample_rate_hz));
    if (n <= 0)
        throw InvalidConfig("duration too short for the sample rate");

    Rng noise_rng = Rng(config.seed).fork(0x6e6f6973);
    Rng signal_rng = Rng(config.seed).fork(0x7369676e);

    IqBuffer buf;
    buf.sample_rate_hz = sample_rate_hz;
    buf.samples.resize(n);
    fill_complex_gaussian(noise_rng, buf.samples, 1.0f);

    if (config.cls == SignalClass::Vacant)
        return buf;

    CArray sig;
    switch (config.cls) {
    case SignalClass::TvBroadcast:
        sig = synth_tv_broadcast(signal_rng, n, sample_rate_hz, config.channel_width_hz);
        break;
    case SignalClass::WirelessMic:
        sig = synth_wireless_mic(signal_rng, n, sample_rate_hz, config.channel_width_hz);
        break;
    case SignalClass::OtherTvws:
        sig = synth_other_tvws(signal_rng, n, sample_rate_hz);
        break;
    default:
        break;
    }

    // Scale so mean signal power over the buffer hits the requested SNR
    // against the unit-power noise.
    const double measured = sig.abs2().cast<double>().mean();
    const double target = std::pow(10.0, config.snr_db / 10.0);
    if (measured > 0.0)
        sig *= static_cast<float>(std::sqrt(target / measured));
    buf.samples += sig;
    return buf;
}

IqBuffer augment(const IqBuffer& buf, double freq_shift_hz, double time_stretch,
                 double extra_noise_db, std::uint64_t noise_seed) {
    if (std::abs(freq_shift_hz) > 500e3)
        throw AugmentOutOfRange("frequency shift beyond +/-500 kHz");
    if (!(time_stretch >= 0.9 && time_stretch <= 1.1))
        throw AugmentOutOfRange("time stretch outside [0.9, 1.1]");

    const Eigen::Index n = buf.samples.size();
    CArray mixed(n);
    const double w = 2.0 * std::numbers::pi * freq_shift_hz / buf.sample_rate_hz;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double phase = w * i;
        mixed[i] = buf.samples[i] * std::complex<float>(static_cast<float>(std::cos(phase)),
                                                        static_cast<float>(std::sin(phase)));
    }

    const auto out_len = static_cast<Eigen::Index>(std::llround(n * time_stretch));
    IqBuffer out;
    out.sample_rate_hz = buf.sample_rate_hz;
    out.center_freq_hz = buf.center_freq_hz;
    out.capture_time_s = buf.capture_time_s;
    out.samples.resize(out_len);
    for (Eigen::Index i = 0; i < out_len; ++i) {
        const double pos = static_cast<double>(i) / time_stretch;
        const auto i0 = static_cast<Eigen::Index>(pos);
        if (i0 >= n - 1) {
            out.samples[i] = mixed[n - 1];
            continue;
        }
        const float frac = static_cast<float>(pos - static_cast<double>(i0));
        out.samples[i] = mixed[i0] * (1.0f - frac) + mixed[i0 + 1] * frac;
    }

    if (std::isfinite(extra_noise_db)) {
        CArray extra(out_len);
        Rng rng = Rng(noise_seed).fork(0x61756762);
        fill_complex_gaussian(rng, extra, static_cast<float>(std::pow(10.0, extra_noise_db / 10.0)));
        out.samples += extra;
    }
    return out;
}

std::map<ChannelId, IqBuffer> mix_scene(const GroundTruthOccupancy& truth,
                                        const ChannelPlan& plan, double t,
                                        double per_channel_rate_hz, std::uint64_t seed,
                                        double duration_s) {
    std::map<ChannelId, IqBuffer> out;
    for (ChannelId ch : plan.channels()) {
        SynthConfig cfg;
        cfg.duration_s = duration_s;
        cfg.seed = mix_seed(seed, ch.index);
        cfg.channel_width_hz = plan.channel_width_hz();
        if (auto entry = truth.entry_at(ch, t)) {
            cfg.cls = entry->cls;
            cfg.snr_db = entry->snr_db;
        }
        IqBuffer buf = synth_channel(cfg, per_channel_rate_hz);
        buf.center_freq_hz = channel_center_hz(plan, ch);
        buf.capture_time_s = t;
        out.emplace(ch, std::move(buf));
    }
    return out;
}

} // namespace tvws

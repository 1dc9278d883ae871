// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/spectrogram.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <fftw3.h>

#include "tvws/errors.hpp"

namespace tvws {

namespace {

Eigen::ArrayXf hanning_window() {
    Eigen::ArrayXf w(kFftSize);
    for (int i = 0; i < kFftSize; ++i)
        w[i] = 0.5f - 0.5f * std::cos(2.0f * std::numbers::pi_v<float> * i / (kFftSize - 1));
    return w;
}

/// dB conversion over the whole grid. Bit-level log2 with the fastlog2
/// mantissa correction; error is below 1e-3 dB, and anything at or under the
/// 1e-12 power floor pins to exactly -120 dB. The branch-free loop
/// auto-vectorizes, which matters at several million bins per capture.
void to_db_with_floor(const FrameGrid& linear, FrameGrid& db) {
    db.resize(linear.rows(), linear.cols());
    const float* x = linear.data();
    float* y = db.data();
    const Eigen::Index n = linear.size();
    constexpr float kFloorPower = 1e-12f;
    for (Eigen::Index i = 0; i < n; ++i) {
        const float xi = x[i] < kFloorPower ? kFloorPower : x[i];
        const auto bits = std::bit_cast<std::uint32_t>(xi);
        const float exp_and_mant = static_cast<float>(bits) * 1.1920928955078125e-7f;
        const float half_mant =
            std::bit_cast<float>((bits & 0x007FFFFFu) | 0x3f000000u); // [0.5, 1)
        const float log2x = exp_and_mant - 124.22551499f - 1.498030302f * half_mant -
                            1.72587999f / (0.3520887068f + half_mant);
        float dbv = 3.0102999566398120f * log2x; // 10*log10(2) per log2 unit
        if (dbv < kLogFloorDb)
            dbv = kLogFloorDb;
        if (xi <= kFloorPower)
            dbv = kLogFloorDb;
        y[i] = dbv;
    }
}

/// One cached FFTW plan per thread. Plan creation is not thread-safe;
/// execution on the owning thread's buffers is.
struct FftwWorkspace {
    fftw_complex* in;
    fftw_complex* out;
    fftw_plan plan;

    FftwWorkspace() {
        in = fftw_alloc_complex(kFftSize);
        out = fftw_alloc_complex(kFftSize);
        plan = fftw_plan_dft_1d(kFftSize, in, out, FFTW_FORWARD, FFTW_MEASURE);
    }
    ~FftwWorkspace() {
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    FftwWorkspace(const FftwWorkspace&) = delete;
    FftwWorkspace& operator=(const FftwWorkspace&) = delete;
};

} // namespace

Spectrogram spectrogram(const IqBuffer& buf) {
    const Eigen::Index n = buf.samples.size();
    if (n < kFftSize)
        throw BufferTooShort("need at least 1024 samples for one frame");

    static const Eigen::ArrayXf window = hanning_window();
    static const float window_energy = window.square().sum();

    const Eigen::Index frames = (n - kFftSize) / kHopSize + 1;
    Spectrogram sg;
    sg.linear_power.resize(frames, kFftSize);

    thread_local FftwWorkspace fftw;
    const float norm = 1.0f / window_energy;
    constexpr int kHalf = kFftSize / 2;

    // Interleaved window (same factor for I and Q) so the multiply below is a
    // flat vectorizable float pass over the sample memory.
    static const Eigen::ArrayXf window_iq = [] {
        Eigen::ArrayXf w(2 * kFftSize);
        const Eigen::ArrayXf base = hanning_window();
        for (int i = 0; i < kFftSize; ++i)
            w[2 * i] = w[2 * i + 1] = base[i];
        return w;
    }();

    Eigen::ArrayXf windowed(2 * kFftSize);
    Eigen::ArrayXf out_f(2 * kFftSize);
    Eigen::ArrayXf power(kFftSize);
    auto in_map = Eigen::Map<Eigen::ArrayXd>(reinterpret_cast<double*>(fftw.in), 2 * kFftSize);
    auto out_map =
        Eigen::Map<const Eigen::ArrayXd>(reinterpret_cast<const double*>(fftw.out),
                                         2 * kFftSize);

    for (Eigen::Index f = 0; f < frames; ++f) {
        const auto* src = reinterpret_cast<const float*>(buf.samples.data() + f * kHopSize);
        windowed = Eigen::Map<const Eigen::ArrayXf>(src, 2 * kFftSize) * window_iq;
        in_map = windowed.cast<double>();
        fftw_execute(fftw.plan);

        out_f = out_map.cast<float>().square();
        for (int s = 0; s < kFftSize; ++s)
            power[s] = out_f[2 * s] + out_f[2 * s + 1];

        // fftshift: upper FFT half first, then the lower; both copies linear.
        auto row = sg.linear_power.row(f);
        row.head(kHalf) = power.tail(kHalf) * norm;
        row.tail(kHalf) = power.head(kHalf) * norm;
    }

    to_db_with_floor(sg.linear_power, sg.bins_db);
    return sg;
}

} // namespace tvws

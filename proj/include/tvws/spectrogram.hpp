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

#include <Eigen/Dense>

#include "tvws/waveform.hpp"

namespace tvws {

constexpr int kFftSize = 1024;
constexpr int kHopSize = 512; // 50% overlap
constexpr float kLogFloorDb = -120.0f;

using FrameGrid = Eigen::Array<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Log-magnitude time-frequency grid. Rows are frames, columns are frequency
/// bins in fftshifted order: column j covers (j - fft_size/2) * fs / fft_size
/// relative to the capture center. Values are dB, floored at -120 dB, with
/// |X|^2 normalized by the window energy so unit-power noise sits near 0 dB.
/// Row-major so each frame is contiguous.
struct Spectrogram {
    FrameGrid bins_db;
    int fft_size = kFftSize;
    double overlap = 0.5;
    /// Linear-power twin of bins_db, kept by spectrogram() so downstream
    /// consumers avoid re-exponentiating; empty when constructed by hand.
    FrameGrid linear_power;
};

/// STFT with a 1024-point FFT, 50% overlap and a Hanning window.
/// Frame count is floor((N - 1024)/512) + 1. Throws BufferTooShort for
/// buffers under one FFT length.
Spectrogram spectrogram(const IqBuffer& buf);

} // namespace tvws

// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/features.hpp"

#include <algorithm>
#include <cmath>

namespace tvws {

Eigen::Matrix<double, FeatureVector::kDim, 1> FeatureVector::as_vector() const {
    Eigen::Matrix<double, kDim, 1> v;
    v << total_energy_db, spectral_flatness, occupied_bw_hz, peak_to_mean_db, temporal_duty,
        spectral_kurtosis;
    return v;
}

FeatureVector extract_features(const Spectrogram& sg, double sample_rate_hz) {
    const Eigen::Index frames = sg.bins_db.rows();
    const Eigen::Index bins = sg.bins_db.cols();

    // Linear power per cell: reuse the spectrogram's cached grid, falling
    // back to exponentiation for hand-built inputs.
    constexpr float kDbToLn = 0.23025850929940458f; // ln(10)/10
    FrameGrid fallback;
    const bool cached =
        sg.linear_power.rows() == frames && sg.linear_power.cols() == bins;
    if (!cached)
        fallback = (sg.bins_db * kDbToLn).exp();
    const FrameGrid& p = cached ? sg.linear_power : fallback;

    // Row accumulation keeps the reduction contiguous over row-major frames.
    Eigen::ArrayXf spectrum_acc = Eigen::ArrayXf::Zero(bins);
    for (Eigen::Index i = 0; i < frames; ++i)
        spectrum_acc += p.row(i);
    Eigen::ArrayXd spectrum = (spectrum_acc / static_cast<float>(frames)).cast<double>();
    const double mean_power = spectrum.mean();

    FeatureVector f;
    f.total_energy_db = 10.0 * std::log10(std::max(mean_power, 1e-12));

    const double geo = std::exp(spectrum.max(1e-12).log().mean());
    f.spectral_flatness = std::min(1.0, geo / std::max(mean_power, 1e-12));

    // 99% occupied bandwidth: subtract the noise floor (median bin) so the
    // measurement follows the signal, then trim 0.5% of cumulative power per
    // tail.
    Eigen::ArrayXd sorted = spectrum;
    std::sort(sorted.data(), sorted.data() + sorted.size());
    const double noise_floor = sorted[sorted.size() / 2];
    const Eigen::ArrayXd residual = (spectrum - noise_floor).max(0.0);

    const double bin_hz = sample_rate_hz / sg.fft_size;
    const double total = residual.sum();
    if (total > 0.0) {
        const double tail_cut = 0.005 * total;
        double cum = 0.0;
        Eigen::Index j_lo = 0, j_hi = bins - 1;
        for (Eigen::Index j = 0; j < bins; ++j) {
            cum += residual[j];
            if (cum >= tail_cut) {
                j_lo = j;
                break;
            }
        }
        cum = 0.0;
        for (Eigen::Index j = bins - 1; j >= 0; --j) {
            cum += residual[j];
            if (cum >= tail_cut) {
                j_hi = j;
                break;
            }
        }
        f.occupied_bw_hz = j_hi >= j_lo ? (j_hi - j_lo + 1) * bin_hz : bin_hz;
    } else {
        f.occupied_bw_hz = bin_hz;
    }

    f.peak_to_mean_db =
        10.0 * std::log10(std::max(spectrum.maxCoeff(), 1e-12) / std::max(mean_power, 1e-12));

    // Frame activity: steady signals count as always-on; an all-floor grid as
    // silent. Otherwise threshold midway between the extremes in dB.
    Eigen::ArrayXd frame_db =
        (p.rowwise().mean().max(1e-12f).log10() * 10.0f).cast<double>();
    const double dmax = frame_db.maxCoeff();
    const double dmin = frame_db.minCoeff();
    if (dmax - dmin < 3.0) {
        f.temporal_duty = dmax > kLogFloorDb + 10.0 ? 1.0 : 0.0;
    } else {
        const double thr = 0.5 * (dmax + dmin);
        f.temporal_duty = static_cast<double>((frame_db > thr).count()) / frames;
    }

    const double m2 = (spectrum - mean_power).square().mean();
    const double m4 = (spectrum - mean_power).pow(4).mean();
    f.spectral_kurtosis = m2 > 1e-24 ? m4 / (m2 * m2) : 0.0;

    return f;
}

} // namespace tvws

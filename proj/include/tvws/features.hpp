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

#include "tvws/spectrogram.hpp"

namespace tvws {

/// Scalar summary of a spectrogram, the classifier's input.
struct FeatureVector {
    double total_energy_db = 0.0;
    double spectral_flatness = 0.0; ///< geometric/arithmetic mean ratio, [0,1]
    double occupied_bw_hz = 0.0;    ///< 99% power bandwidth
    double peak_to_mean_db = 0.0;
    double temporal_duty = 0.0;     ///< fraction of frames with signal activity, [0,1]
    double spectral_kurtosis = 0.0;

    static constexpr int kDim = 6;
    Eigen::Matrix<double, kDim, 1> as_vector() const;
};

/// Deterministic features over the time-averaged linear spectrum; occupied
/// bandwidth is measured by trimming 0.5% of cumulative power per tail.
FeatureVector extract_features(const Spectrogram& sg, double sample_rate_hz);

} // namespace tvws

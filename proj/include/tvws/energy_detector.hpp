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

/// Inverse of the Gaussian tail function Q(x) = P(Z > x).
double inverse_q(double p);

/// CFAR threshold for averaged power over n samples under the Gaussian
/// approximation: noise_power * (1 + Qinv(p_fa) * sqrt(1/n)).
double cfar_threshold(double noise_power, double p_fa, Eigen::Index n);

/// Binary hypothesis test: average |x|^2 against the CFAR threshold.
/// Throws InvalidPfa unless p_fa is in (0,1); NonPositiveInput for a
/// non-positive noise power.
bool energy_detect(const IqBuffer& buf, double noise_power, double p_fa);

} // namespace tvws

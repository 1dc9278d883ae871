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

#include "tvws/errors.hpp"

namespace tvws {

constexpr double kSpeedOfLightMps = 299'792'458.0;

/// Default receiver noise floor for a 6 MHz channel (kTB plus noise figure,
/// rounded). Overridable wherever a noise floor is consumed.
constexpr double kDefaultNoiseFloorDbm = -103.0;

/// Antenna heights, separation and carrier for one over-water link.
struct LinkGeometry {
    double h_t_m = 0.0;
    double h_r_m = 0.0;
    double distance_m = 0.0;
    double center_freq_hz = 0.0;
};

struct LinkBudgetParams {
    double p_t_dbm = 0.0;   ///< transmit EIRP component
    double g_t_dbi = 0.0;
    double g_r_dbi = 0.0;
    double fade_margin_db = 0.0;
};

/// Two-ray breakpoint distance 4*h_t*h_r/lambda with lambda = c/f.
double breakpoint_distance_m(double h_t_m, double h_r_m, double center_freq_hz);

/// Exact flat-earth two-ray path loss in dB: field sum of the direct ray and
/// a unity-magnitude, phase-inverted surface reflection. Continuous in d,
/// approaching 40 dB/decade beyond the breakpoint.
double two_ray_path_loss_db(const LinkGeometry& geom);

/// Far-field closed form the two-ray loss converges to: 20*log10(d^2/(h_t*h_r)).
double two_ray_far_field_loss_db(const LinkGeometry& geom);

/// Log-distance fallback: free-space loss at d0 = 1 m plus 10*n*log10(d).
double log_distance_path_loss_db(const LinkGeometry& geom, double exponent);

/// Link budget with an explicitly supplied path loss: P_t + G_t + G_r - L - M_f.
double received_power_dbm(const LinkBudgetParams& params, double path_loss_db);

/// Link budget using the two-ray loss for the given geometry.
double received_power_dbm(const LinkBudgetParams& params, const LinkGeometry& geom);

inline double snr_db(double received_dbm, double noise_floor_dbm) {
    return received_dbm - noise_floor_dbm;
}

/// End-to-end link SNR over the two-ray channel; feeds scenario SNR fields
/// and link-availability estimates.
double link_snr_db(const LinkBudgetParams& params, const LinkGeometry& geom,
                   double noise_floor_dbm = kDefaultNoiseFloorDbm);

} // namespace tvws

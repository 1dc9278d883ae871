// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/propagation.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace tvws {

namespace {

void check_positive(double v, const char* what) {
    if (!(v > 0.0))
        throw NonPositiveInput(std::string(what) + " must be positive");
}

void check_geometry(const LinkGeometry& g) {
    check_positive(g.h_t_m, "h_t");
    check_positive(g.h_r_m, "h_r");
    check_positive(g.distance_m, "distance");
    check_positive(g.center_freq_hz, "center frequency");
}

} // namespace

double breakpoint_distance_m(double h_t_m, double h_r_m, double center_freq_hz) {
    check_positive(h_t_m, "h_t");
    check_positive(h_r_m, "h_r");
    check_positive(center_freq_hz, "center frequency");
    const double lambda = kSpeedOfLightMps / center_freq_hz;
    return 4.0 * h_t_m * h_r_m / lambda;
}

double two_ray_path_loss_db(const LinkGeometry& geom) {
    check_geometry(geom);

    const double lambda = kSpeedOfLightMps / geom.center_freq_hz;
    const double k = 2.0 * std::numbers::pi / lambda;
    const double dh = geom.h_t_m - geom.h_r_m;
    const double sh = geom.h_t_m + geom.h_r_m;
    const double d_los = std::hypot(geom.distance_m, dh);
    const double d_ref = std::hypot(geom.distance_m, sh);

    // Field relative to a unit transmit amplitude referenced at 1 m.
    // Reflection coefficient is -1 (ideal sea surface).
    const std::complex<double> e_los = std::polar(1.0 / d_los, -k * d_los);
    const std::complex<double> e_ref = std::polar(1.0 / d_ref, -k * d_ref);
    const double field = std::abs(e_los - e_ref);

    // Power gain = (lambda/4pi)^2 * |field|^2; loss is its negation in dB.
    const double gain_db =
        20.0 * std::log10(lambda / (4.0 * std::numbers::pi)) + 20.0 * std::log10(field);
    return -gain_db;
}

double two_ray_far_field_loss_db(const LinkGeometry& geom) {
    check_geometry(geom);
    return 20.0 * std::log10(geom.distance_m * geom.distance_m / (geom.h_t_m * geom.h_r_m));
}

double log_distance_path_loss_db(const LinkGeometry& geom, double exponent) {
    check_geometry(geom);
    check_positive(exponent, "path loss exponent");
    const double lambda = kSpeedOfLightMps / geom.center_freq_hz;
    // Free-space reference at d0 = 1 m.
    const double l0 = -20.0 * std::log10(lambda / (4.0 * std::numbers::pi));
    return l0 + 10.0 * exponent * std::log10(geom.distance_m);
}

double received_power_dbm(const LinkBudgetParams& params, double path_loss_db) {
    return params.p_t_dbm + params.g_t_dbi + params.g_r_dbi - path_loss_db -
           params.fade_margin_db;
}

double received_power_dbm(const LinkBudgetParams& params, const LinkGeometry& geom) {
    return received_power_dbm(params, two_ray_path_loss_db(geom));
}

double link_snr_db(const LinkBudgetParams& params, const LinkGeometry& geom,
                   double noise_floor_dbm) {
    return snr_db(received_power_dbm(params, geom), noise_floor_dbm);
}

} // namespace tvws

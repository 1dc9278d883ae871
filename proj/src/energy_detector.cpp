// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/energy_detector.hpp"

#include <cmath>
#include <numbers>

#include "tvws/errors.hpp"

namespace tvws {

namespace {

/// Acklam's rational approximation of the inverse normal CDF, refined with
/// one Halley step against std::erfc.
double inverse_normal_cdf(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

} // namespace

double inverse_q(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw InvalidPfa("probability must lie in (0,1)");
    return inverse_normal_cdf(1.0 - p);
}

double cfar_threshold(double noise_power, double p_fa, Eigen::Index n) {
    if (!(noise_power > 0.0))
        throw NonPositiveInput("noise power must be positive");
    if (n <= 0)
        throw NonPositiveInput("sample count must be positive");
    return noise_power * (1.0 + inverse_q(p_fa) * std::sqrt(1.0 / static_cast<double>(n)));
}

bool energy_detect(const IqBuffer& buf, double noise_power, double p_fa) {
    const Eigen::Index n = buf.samples.size();
    const double avg_power = buf.samples.abs2().cast<double>().mean();
    return avg_power > cfar_threshold(noise_power, p_fa, n);
}

} // namespace tvws

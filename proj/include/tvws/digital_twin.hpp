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

#include <map>
#include <vector>

#include "tvws/paws_messages.hpp"
#include "tvws/spectrum.hpp"

namespace tvws {

/// Per-channel Beta(alpha, beta) belief about occupancy probability.
/// Advisory only: priors enrich audit records and rank candidate channels,
/// they never veto the compliance gate.
class OccupancyPrior {
  public:
    struct Params {
        double alpha = 1.0;
        double beta = 1.0;
    };

    Params params(ChannelId ch) const;
    void set_params(ChannelId ch, Params p);

    /// Conjugate Bernoulli update: occupied bumps alpha, vacant bumps beta.
    void update(ChannelId ch, bool observed_occupied);

    /// Posterior mean alpha/(alpha+beta); 0.5 for an untouched channel.
    double occupancy_probability(ChannelId ch) const;

    const std::map<std::uint32_t, Params>& all() const { return params_; }

  private:
    std::map<std::uint32_t, Params> params_;
};

/// Circular stand-in for a licensed transmitter protection contour.
struct ProtectionZone {
    paws::GeoLocation transmitter;
    ChannelId channel;
    double radius_m = 0.0;
};

/// Great-circle (haversine) distance on the WGS84 mean sphere.
double great_circle_distance_m(const paws::GeoLocation& a, const paws::GeoLocation& b);

/// true iff location is strictly inside any zone protecting ch.
bool in_protection_zone(const std::vector<ProtectionZone>& zones,
                        const paws::GeoLocation& location, ChannelId ch);

} // namespace tvws

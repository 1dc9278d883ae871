// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/digital_twin.hpp"

#include <cmath>
#include <numbers>

namespace tvws {

OccupancyPrior::Params OccupancyPrior::params(ChannelId ch) const {
    auto it = params_.find(ch.index);
    return it == params_.end() ? Params{} : it->second;
}

void OccupancyPrior::set_params(ChannelId ch, Params p) {
    params_[ch.index] = p;
}

void OccupancyPrior::update(ChannelId ch, bool observed_occupied) {
    Params p = params(ch);
    if (observed_occupied)
        p.alpha += 1.0;
    else
        p.beta += 1.0;
    params_[ch.index] = p;
}

double OccupancyPrior::occupancy_probability(ChannelId ch) const {
    const Params p = params(ch);
    return p.alpha / (p.alpha + p.beta);
}

double great_circle_distance_m(const paws::GeoLocation& a, const paws::GeoLocation& b) {
    constexpr double kEarthRadiusM = 6'371'000.0;
    const double to_rad = std::numbers::pi / 180.0;
    const double lat1 = a.lat_deg * to_rad;
    const double lat2 = b.lat_deg * to_rad;
    const double dlat = (b.lat_deg - a.lat_deg) * to_rad;
    const double dlon = (b.lon_deg - a.lon_deg) * to_rad;
    const double s = std::sin(dlat / 2.0) * std::sin(dlat / 2.0) +
                     std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2.0) * std::sin(dlon / 2.0);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(s)));
}

bool in_protection_zone(const std::vector<ProtectionZone>& zones,
                        const paws::GeoLocation& location, ChannelId ch) {
    for (const auto& zone : zones) {
        if (zone.channel != ch)
            continue;
        if (great_circle_distance_m(zone.transmitter, location) < zone.radius_m)
            return true;
    }
    return false;
}

} // namespace tvws

// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/spectrum.hpp"

#include <cmath>

namespace tvws {

std::string to_string(SignalClass c) {
    switch (c) {
    case SignalClass::TvBroadcast: return "TvBroadcast";
    case SignalClass::WirelessMic: return "WirelessMic";
    case SignalClass::OtherTvws: return "OtherTvws";
    case SignalClass::Vacant: return "Vacant";
    }
    return "Unknown";
}

SignalClass signal_class_from_string(const std::string& s) {
    if (s == "TvBroadcast") return SignalClass::TvBroadcast;
    if (s == "WirelessMic") return SignalClass::WirelessMic;
    if (s == "OtherTvws") return SignalClass::OtherTvws;
    if (s == "Vacant") return SignalClass::Vacant;
    throw InvalidConfig("unknown signal class: " + s);
}

ChannelPlan::ChannelPlan(double band_start_hz, double band_end_hz, double channel_width_hz)
    : band_start_hz_(band_start_hz),
      band_end_hz_(band_end_hz),
      channel_width_hz_(channel_width_hz) {
    channel_count_ =
        static_cast<std::uint32_t>(std::floor((band_end_hz_ - band_start_hz_) / channel_width_hz_));
}

double ChannelPlan::low_edge_hz(ChannelId ch) const {
    if (!contains(ch))
        throw ChannelOutOfRange("channel " + std::to_string(ch.index) + " not in plan");
    return band_start_hz_ + ch.index * channel_width_hz_;
}

double ChannelPlan::high_edge_hz(ChannelId ch) const {
    return low_edge_hz(ch) + channel_width_hz_;
}

std::vector<ChannelId> ChannelPlan::channels() const {
    std::vector<ChannelId> out;
    out.reserve(channel_count_);
    for (std::uint32_t i = 0; i < channel_count_; ++i)
        out.push_back(ChannelId{i});
    return out;
}

ChannelPlan build_plan(double band_start_hz, double band_end_hz, double channel_width_hz) {
    const bool width_ok = channel_width_hz == 6e6 || channel_width_hz == 7e6 ||
                          channel_width_hz == 8e6;
    if (!width_ok)
        throw InvalidWidth("channel width must be 6, 7 or 8 MHz");
    if (!(band_start_hz < band_end_hz))
        throw EmptyBand("band start must be below band end");
    ChannelPlan plan(band_start_hz, band_end_hz, channel_width_hz);
    if (plan.channel_count() < 1)
        throw EmptyBand("band narrower than one channel width");
    return plan;
}

double channel_center_hz(const ChannelPlan& plan, ChannelId ch) {
    if (!plan.contains(ch))
        throw ChannelOutOfRange("channel " + std::to_string(ch.index) + " not in plan");
    return plan.band_start_hz() + (ch.index + 0.5) * plan.channel_width_hz();
}

void GroundTruthOccupancy::add(ChannelId ch, SignalClass cls, double snr_db, double start_s,
                               double end_s) {
    if (!(start_s <= end_s))
        throw ScriptInvalid("occupancy interval must satisfy start <= end");
    entries_[ch.index].push_back(OccupancyEntry{cls, snr_db, start_s, end_s});
}

std::optional<OccupancyEntry> GroundTruthOccupancy::entry_at(ChannelId ch, double t) const {
    auto it = entries_.find(ch.index);
    if (it == entries_.end())
        return std::nullopt;
    // Later entries override earlier ones, so scan back to front.
    const auto& list = it->second;
    for (auto rit = list.rbegin(); rit != list.rend(); ++rit) {
        if (rit->start_s <= t && t <= rit->end_s)
            return *rit;
    }
    return std::nullopt;
}

SignalClass occupancy_at(const GroundTruthOccupancy& truth, ChannelId ch, double t) {
    auto e = truth.entry_at(ch, t);
    return e ? e->cls : SignalClass::Vacant;
}

} // namespace tvws

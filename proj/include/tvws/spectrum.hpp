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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvws/errors.hpp"

namespace tvws {

/// Four-way channel taxonomy. Vacant is hypothesis H0, everything else H1.
enum class SignalClass : std::uint8_t {
    TvBroadcast = 0,
    WirelessMic = 1,
    OtherTvws = 2,
    Vacant = 3,
};

constexpr int kNumSignalClasses = 4;

inline bool is_occupied(SignalClass c) { return c != SignalClass::Vacant; }

std::string to_string(SignalClass c);
SignalClass signal_class_from_string(const std::string& s);

/// 0-based channel index within a ChannelPlan.
struct ChannelId {
    std::uint32_t index = 0;

    friend auto operator<=>(const ChannelId&, const ChannelId&) = default;
};

/// A UHF band divided into fixed-width channels. Leftover bandwidth smaller
/// than one channel width at the top of the band is unused.
class ChannelPlan {
  public:
    ChannelPlan() = default;
    ChannelPlan(double band_start_hz, double band_end_hz, double channel_width_hz);

    double band_start_hz() const { return band_start_hz_; }
    double band_end_hz() const { return band_end_hz_; }
    double channel_width_hz() const { return channel_width_hz_; }
    std::uint32_t channel_count() const { return channel_count_; }

    bool contains(ChannelId ch) const { return ch.index < channel_count_; }
    double low_edge_hz(ChannelId ch) const;
    double high_edge_hz(ChannelId ch) const;

    std::vector<ChannelId> channels() const;

  private:
    double band_start_hz_ = 0.0;
    double band_end_hz_ = 0.0;
    double channel_width_hz_ = 0.0;
    std::uint32_t channel_count_ = 0;
};

/// Builds a plan with floor-division channel count.
/// Throws InvalidWidth unless the width is 6, 7 or 8 MHz; EmptyBand if the
/// band does not fit at least one channel.
ChannelPlan build_plan(double band_start_hz, double band_end_hz, double channel_width_hz);

/// Center frequency of a channel: band_start + (index + 0.5) * width.
/// Throws ChannelOutOfRange for indices past the end of the plan.
double channel_center_hz(const ChannelPlan& plan, ChannelId ch);

/// One scripted occupancy interval. The interval is closed: [start_s, end_s].
struct OccupancyEntry {
    SignalClass cls = SignalClass::Vacant;
    double snr_db = 0.0;
    double start_s = 0.0;
    double end_s = 0.0;
};

/// Scripted ground truth: per-channel occupancy intervals with SNR.
/// Later entries override earlier ones where intervals overlap.
class GroundTruthOccupancy {
  public:
    void add(ChannelId ch, SignalClass cls, double snr_db, double start_s, double end_s);

    /// The active entry at time t, or nullopt when no interval covers t.
    std::optional<OccupancyEntry> entry_at(ChannelId ch, double t) const;

    const std::map<std::uint32_t, std::vector<OccupancyEntry>>& entries() const {
        return entries_;
    }

  private:
    std::map<std::uint32_t, std::vector<OccupancyEntry>> entries_;
};

/// Vacant if no interval covers t, otherwise the active class.
SignalClass occupancy_at(const GroundTruthOccupancy& truth, ChannelId ch, double t);

} // namespace tvws

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

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tvws/compliance_gate.hpp"
#include "tvws/digital_twin.hpp"
#include "tvws/mode_controller.hpp"
#include "tvws/spectrum.hpp"
#include "tvws/waveform.hpp"

namespace tvws {

struct WsdbEvent {
    enum class Kind { OutageStart, OutageEnd, SetAvailability, SetLatency };
    double t_s = 0.0;
    Kind kind = Kind::OutageStart;
    ChannelId channel;        // SetAvailability
    bool available = false;   // SetAvailability
    double latency_s = 0.0;   // SetLatency
};

struct WaiverEvent {
    enum class Kind { Activate, Expire };
    double t_s = 0.0;
    Kind kind = Kind::Activate;
    EmergencyWaiver waiver; // Activate; activated_at is the event time
};

/// Declarative timeline executed by the harness. Loaded from the JSON config
/// document family shared with channel plans, WSDB configs and mode policies.
struct ScenarioScript {
    double duration_s = 0.0;
    double epoch_s = 1.0; ///< decision cadence; sensing runs once per epoch
    std::uint64_t seed = 0;
    ChannelPlan plan;
    GroundTruthOccupancy truth;

    std::set<std::uint32_t> initial_available_channels;
    std::set<std::uint32_t> mic_reserved_channels;
    double grant_lifetime_s = 12.0 * 3600.0;
    std::string ruleset_id = "tvws-artifact-ruleset-1";

    std::vector<WsdbEvent> wsdb_events;
    std::vector<WaiverEvent> waiver_events;
    std::vector<KpmSample> kpm_trace;                               // hold-last
    std::vector<std::pair<double, paws::GeoLocation>> vessel_track; // hold-last

    double capture_duration_s = 0.004;
    double per_channel_rate_hz = kDefaultChannelSampleRateHz;
    double theta_sense = 0.85;
    HysteresisPolicy mode_policy;
    /// Twin warm start; mic-heavy channels can carry a high prior so channel
    /// selection avoids them unless nothing else is admissible.
    OccupancyPrior initial_prior;

    /// Throws ScriptInvalid on any ill-formed field or out-of-range event.
    void validate() const;
};

ScenarioScript load_script(const std::string& path);
ScenarioScript parse_script(const std::string& json_text);
std::string script_to_json(const ScenarioScript& script);

/// Channel plan from the shared config document family.
ChannelPlan plan_from_json_text(const std::string& json_text);

/// Digital-twin warm-start serialization (config document family).
std::string twin_to_json(const OccupancyPrior& prior);
OccupancyPrior twin_from_json(const std::string& json_text);

} // namespace tvws

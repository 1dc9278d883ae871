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

#include <string>
#include <vector>

namespace tvws {

/// RAN and platform telemetry consumed by the mode controller.
struct KpmSample {
    double t_s = 0.0;
    double ul_throughput_mbps = 0.0;
    double prb_utilization = 0.0; // [0,1]
    int cqi = 0;                  // 0..15
    double bler = 0.0;            // [0,1]
    double gpu_utilization = 0.0; // [0,1]
    double thermal_headroom_c = 0.0;
};

enum class VideoMode { NativeHd, Degraded };

std::string to_string(VideoMode m);

struct ModeState {
    VideoMode mode = VideoMode::NativeHd;
    double entered_at_s = 0.0;
    std::string last_transition_cause;
};

/// Asymmetric thresholds with sustain windows and a minimum dwell time.
/// restore_threshold must exceed degrade_threshold.
struct HysteresisPolicy {
    double degrade_threshold_mbps = 3.0;
    double restore_threshold_mbps = 6.0;
    double degrade_sustain_s = 5.0;
    double restore_sustain_s = 10.0;
    double min_dwell_s = 10.0;
    double gpu_util_ceiling = 0.85;
    double thermal_floor_c = 10.0;
    /// Secondary degrade trigger; link-quality collapse can precede a
    /// throughput drop.
    double bler_degrade_threshold = 0.10;

    void validate() const;
};

enum class EncoderProfile { P1080p30, P480p15 };

struct Directive {
    enum class Kind { SetEncoder, EnableSr, DisableSr };
    Kind kind = Kind::SetEncoder;
    EncoderProfile encoder = EncoderProfile::P1080p30;

    friend bool operator==(const Directive&, const Directive&) = default;
};

std::string to_string(const Directive& d);

/// One controller tick. The window holds recent samples in time order; a
/// transition fires only when the triggering condition holds over a
/// contiguous trailing run of samples spanning the sustain time, the dwell
/// time has elapsed, and (for restore) the GPU/thermal guards pass across the
/// run. Pure function of its arguments.
std::pair<ModeState, std::vector<Directive>> step(const ModeState& state,
                                                  const HysteresisPolicy& policy,
                                                  const std::vector<KpmSample>& window,
                                                  double now_s);

/// Directive set consistent with the current mode; applying twice equals
/// applying once.
std::vector<Directive> directives_idempotent(const ModeState& state);

} // namespace tvws

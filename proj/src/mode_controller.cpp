// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/mode_controller.hpp"

#include <functional>

#include "tvws/errors.hpp"

namespace tvws {

std::string to_string(VideoMode m) {
    return m == VideoMode::NativeHd ? "NativeHd" : "Degraded";
}

std::string to_string(const Directive& d) {
    switch (d.kind) {
    case Directive::Kind::SetEncoder:
        return d.encoder == EncoderProfile::P1080p30 ? "SetEncoder(1080p30)"
                                                     : "SetEncoder(480p15)";
    case Directive::Kind::EnableSr: return "EnableSr";
    case Directive::Kind::DisableSr: return "DisableSr";
    }
    return "Unknown";
}

void HysteresisPolicy::validate() const {
    if (!(restore_threshold_mbps > degrade_threshold_mbps))
        throw InvalidConfig("restore threshold must exceed degrade threshold");
    if (!(degrade_sustain_s > 0.0 && restore_sustain_s > 0.0 && min_dwell_s > 0.0))
        throw InvalidConfig("sustain and dwell durations must be positive");
}

namespace {

struct TrailingRun {
    bool qualifies = false;
    std::size_t first = 0; ///< index of the oldest sample in the run
};

/// Longest contiguous run of samples (with t <= now) satisfying pred and
/// ending at the newest sample; qualifies when it spans at least sustain_s.
TrailingRun trailing_run(const std::vector<KpmSample>& window, double now_s, double sustain_s,
                         const std::function<bool(const KpmSample&)>& pred) {
    TrailingRun run;
    std::size_t end = window.size();
    while (end > 0 && window[end - 1].t_s > now_s)
        --end;
    if (end == 0)
        return run;
    if (!pred(window[end - 1]))
        return run;
    std::size_t first = end - 1;
    while (first > 0 && pred(window[first - 1]))
        --first;
    run.first = first;
    run.qualifies = window[end - 1].t_s - window[first].t_s >= sustain_s;
    return run;
}

bool guards_pass(const std::vector<KpmSample>& window, std::size_t first,
                 const HysteresisPolicy& policy, double now_s) {
    for (std::size_t i = first; i < window.size() && window[i].t_s <= now_s; ++i) {
        if (window[i].gpu_utilization > policy.gpu_util_ceiling)
            return false;
        if (window[i].thermal_headroom_c < policy.thermal_floor_c)
            return false;
    }
    return true;
}

} // namespace

std::pair<ModeState, std::vector<Directive>> step(const ModeState& state,
                                                  const HysteresisPolicy& policy,
                                                  const std::vector<KpmSample>& window,
                                                  double now_s) {
    policy.validate();

    const bool dwell_ok = now_s - state.entered_at_s >= policy.min_dwell_s;
    if (!dwell_ok)
        return {state, {}};

    if (state.mode == VideoMode::NativeHd) {
        const auto low = trailing_run(window, now_s, policy.degrade_sustain_s,
                                      [&](const KpmSample& s) {
                                          return s.ul_throughput_mbps <
                                                 policy.degrade_threshold_mbps;
                                      });
        const auto bad_bler = trailing_run(window, now_s, policy.degrade_sustain_s,
                                           [&](const KpmSample& s) {
                                               return s.bler > policy.bler_degrade_threshold;
                                           });
        if (low.qualifies || bad_bler.qualifies) {
            ModeState next;
            next.mode = VideoMode::Degraded;
            next.entered_at_s = now_s;
            next.last_transition_cause =
                low.qualifies ? "ul throughput below degrade threshold" : "sustained BLER";
            std::vector<Directive> directives{
                Directive{Directive::Kind::SetEncoder, EncoderProfile::P480p15}};
            // SR consumes GPU; only switch it on when the platform has room.
            const std::size_t first = low.qualifies ? low.first : bad_bler.first;
            if (guards_pass(window, first, policy, now_s))
                directives.push_back(Directive{Directive::Kind::EnableSr, {}});
            return {next, directives};
        }
        return {state, {}};
    }

    const auto high = trailing_run(window, now_s, policy.restore_sustain_s,
                                   [&](const KpmSample& s) {
                                       return s.ul_throughput_mbps >
                                              policy.restore_threshold_mbps;
                                   });
    if (high.qualifies && guards_pass(window, high.first, policy, now_s)) {
        ModeState next;
        next.mode = VideoMode::NativeHd;
        next.entered_at_s = now_s;
        next.last_transition_cause = "ul throughput above restore threshold";
        return {next,
                {Directive{Directive::Kind::SetEncoder, EncoderProfile::P1080p30},
                 Directive{Directive::Kind::DisableSr, {}}}};
    }
    return {state, {}};
}

std::vector<Directive> directives_idempotent(const ModeState& state) {
    if (state.mode == VideoMode::NativeHd)
        return {Directive{Directive::Kind::SetEncoder, EncoderProfile::P1080p30},
                Directive{Directive::Kind::DisableSr, {}}};
    return {Directive{Directive::Kind::SetEncoder, EncoderProfile::P480p15},
            Directive{Directive::Kind::EnableSr, {}}};
}

} // namespace tvws

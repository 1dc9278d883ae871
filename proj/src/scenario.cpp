// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tvws/errors.hpp"

namespace tvws {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    auto j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ScriptInvalid(std::string("malformed JSON in ") + what);
    return j;
}

ChannelPlan plan_from_json(const json& j) {
    try {
        return build_plan(j.at("band_start_hz").get<double>(),
                          j.at("band_end_hz").get<double>(),
                          j.at("channel_width_hz").get<double>());
    } catch (const json::exception& e) {
        throw ScriptInvalid(std::string("bad plan: ") + e.what());
    } catch (const Error& e) {
        throw ScriptInvalid(std::string("bad plan: ") + e.what());
    }
}

WsdbEvent wsdb_event_from_json(const json& j) {
    WsdbEvent e;
    e.t_s = j.at("t_s").get<double>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "outage_start") {
        e.kind = WsdbEvent::Kind::OutageStart;
    } else if (kind == "outage_end") {
        e.kind = WsdbEvent::Kind::OutageEnd;
    } else if (kind == "set_availability") {
        e.kind = WsdbEvent::Kind::SetAvailability;
        e.channel = ChannelId{j.at("channel").get<std::uint32_t>()};
        e.available = j.at("available").get<bool>();
    } else if (kind == "set_latency") {
        e.kind = WsdbEvent::Kind::SetLatency;
        e.latency_s = j.at("seconds").get<double>();
    } else {
        throw ScriptInvalid("unknown wsdb event kind: " + kind);
    }
    return e;
}

WaiverEvent waiver_event_from_json(const json& j) {
    WaiverEvent e;
    e.t_s = j.at("t_s").get<double>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "activate") {
        e.kind = WaiverEvent::Kind::Activate;
        e.waiver.waiver_id = j.value("waiver_id", std::string("waiver-0"));
        e.waiver.activated_at_s = e.t_s;
        e.waiver.max_duration_s = j.at("max_duration_s").get<double>();
        e.waiver.min_confidence = j.value("min_confidence", kThetaSense);
        e.waiver.max_eirp_dbm = j.value("max_eirp_dbm", paws::kDefaultEirpCapDbm);
    } else if (kind == "expire") {
        e.kind = WaiverEvent::Kind::Expire;
    } else {
        throw ScriptInvalid("unknown waiver event kind: " + kind);
    }
    return e;
}

KpmSample kpm_from_json(const json& j) {
    KpmSample s;
    s.t_s = j.at("t_s").get<double>();
    s.ul_throughput_mbps = j.at("ul_throughput_mbps").get<double>();
    s.prb_utilization = j.value("prb_utilization", 0.0);
    s.cqi = j.value("cqi", 10);
    s.bler = j.value("bler", 0.0);
    s.gpu_utilization = j.value("gpu_utilization", 0.0);
    s.thermal_headroom_c = j.value("thermal_headroom_c", 30.0);
    return s;
}

HysteresisPolicy policy_from_json(const json& j) {
    HysteresisPolicy p;
    p.degrade_threshold_mbps = j.value("degrade_threshold_mbps", p.degrade_threshold_mbps);
    p.restore_threshold_mbps = j.value("restore_threshold_mbps", p.restore_threshold_mbps);
    p.degrade_sustain_s = j.value("degrade_sustain_s", p.degrade_sustain_s);
    p.restore_sustain_s = j.value("restore_sustain_s", p.restore_sustain_s);
    p.min_dwell_s = j.value("min_dwell_s", p.min_dwell_s);
    p.gpu_util_ceiling = j.value("gpu_util_ceiling", p.gpu_util_ceiling);
    p.thermal_floor_c = j.value("thermal_floor_c", p.thermal_floor_c);
    p.bler_degrade_threshold = j.value("bler_degrade_threshold", p.bler_degrade_threshold);
    return p;
}

} // namespace

void ScenarioScript::validate() const {
    if (!(duration_s >= 0.0))
        throw ScriptInvalid("duration must be non-negative");
    if (!(epoch_s > 0.0))
        throw ScriptInvalid("epoch must be positive");
    if (plan.channel_count() < 1)
        throw ScriptInvalid("plan has no channels");
    if (!(capture_duration_s * per_channel_rate_hz >= 1024.0))
        throw ScriptInvalid("capture window shorter than one FFT frame");
    if (!(theta_sense > 0.0 && theta_sense < 1.0))
        throw ScriptInvalid("theta_sense must lie in (0,1)");
    mode_policy.validate();

    auto check_time = [&](double t, const char* what) {
        if (!(t >= 0.0 && t <= duration_s))
            throw ScriptInvalid(std::string(what) + " event outside [0, duration]");
    };
    for (const auto& e : wsdb_events)
        check_time(e.t_s, "wsdb");
    for (const auto& e : waiver_events)
        check_time(e.t_s, "waiver");
    for (const auto& [index, entries] : truth.entries()) {
        if (index >= plan.channel_count())
            throw ScriptInvalid("occupancy entry for channel outside the plan");
        for (const auto& entry : entries) {
            if (!(entry.start_s <= entry.end_s))
                throw ScriptInvalid("occupancy interval start exceeds end");
        }
    }
    for (std::uint32_t index : initial_available_channels) {
        if (index >= plan.channel_count())
            throw ScriptInvalid("available channel outside the plan");
    }
}

ScenarioScript parse_script(const std::string& json_text) {
    const json j = parse_json(json_text, "scenario script");
    try {
        ScenarioScript s;
        s.duration_s = j.at("duration_s").get<double>();
        s.epoch_s = j.value("epoch_s", 1.0);
        s.seed = j.value("seed", std::uint64_t{0});
        s.plan = plan_from_json(j.at("plan"));

        if (j.contains("truth")) {
            for (const auto& entry : j.at("truth")) {
                s.truth.add(ChannelId{entry.at("channel").get<std::uint32_t>()},
                            signal_class_from_string(entry.at("class").get<std::string>()),
                            entry.value("snr_db", 15.0), entry.at("start_s").get<double>(),
                            entry.at("end_s").get<double>());
            }
        }
        if (j.contains("wsdb")) {
            const auto& w = j.at("wsdb");
            for (const auto& ch : w.value("available_channels", std::vector<std::uint32_t>{}))
                s.initial_available_channels.insert(ch);
            for (const auto& ch :
                 w.value("mic_reserved_channels", std::vector<std::uint32_t>{}))
                s.mic_reserved_channels.insert(ch);
            s.grant_lifetime_s = w.value("grant_lifetime_s", s.grant_lifetime_s);
            s.ruleset_id = w.value("ruleset_id", s.ruleset_id);
            if (w.contains("events"))
                for (const auto& e : w.at("events"))
                    s.wsdb_events.push_back(wsdb_event_from_json(e));
        }
        if (j.contains("waivers"))
            for (const auto& e : j.at("waivers"))
                s.waiver_events.push_back(waiver_event_from_json(e));
        if (j.contains("kpm_trace"))
            for (const auto& e : j.at("kpm_trace"))
                s.kpm_trace.push_back(kpm_from_json(e));
        if (j.contains("vessel_track"))
            for (const auto& e : j.at("vessel_track"))
                s.vessel_track.emplace_back(
                    e.at("t_s").get<double>(),
                    paws::GeoLocation{e.at("lat_deg").get<double>(),
                                      e.at("lon_deg").get<double>()});
        if (j.contains("sensing")) {
            const auto& sj = j.at("sensing");
            s.capture_duration_s = sj.value("capture_duration_s", s.capture_duration_s);
            s.per_channel_rate_hz = sj.value("per_channel_rate_hz", s.per_channel_rate_hz);
            s.theta_sense = sj.value("theta_sense", s.theta_sense);
        }
        if (j.contains("mode_policy"))
            s.mode_policy = policy_from_json(j.at("mode_policy"));
        if (j.contains("twin"))
            s.initial_prior = twin_from_json(j.at("twin").dump());

        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw ScriptInvalid(std::string("bad scenario script: ") + e.what());
    } catch (const Error& e) {
        throw ScriptInvalid(e.what());
    }
}

ScenarioScript load_script(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ScriptInvalid("cannot open script: " + path);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return parse_script(buffer.str());
}

std::string script_to_json(const ScenarioScript& s) {
    nlohmann::ordered_json j;
    j["duration_s"] = s.duration_s;
    j["epoch_s"] = s.epoch_s;
    j["seed"] = s.seed;
    j["plan"] = {{"band_start_hz", s.plan.band_start_hz()},
                 {"band_end_hz", s.plan.band_end_hz()},
                 {"channel_width_hz", s.plan.channel_width_hz()}};
    auto truth = nlohmann::ordered_json::array();
    for (const auto& [index, entries] : s.truth.entries())
        for (const auto& e : entries)
            truth.push_back({{"channel", index},
                             {"class", to_string(e.cls)},
                             {"snr_db", e.snr_db},
                             {"start_s", e.start_s},
                             {"end_s", e.end_s}});
    j["truth"] = truth;
    return j.dump(2);
}

ChannelPlan plan_from_json_text(const std::string& json_text) {
    return plan_from_json(parse_json(json_text, "channel plan"));
}

std::string twin_to_json(const OccupancyPrior& prior) {
    nlohmann::ordered_json channels = nlohmann::ordered_json::array();
    for (const auto& [index, p] : prior.all())
        channels.push_back({{"channel", index}, {"alpha", p.alpha}, {"beta", p.beta}});
    nlohmann::ordered_json j;
    j["occupancy_prior"] = channels;
    return j.dump(2);
}

OccupancyPrior twin_from_json(const std::string& json_text) {
    const json j = parse_json(json_text, "twin state");
    OccupancyPrior prior;
    try {
        for (const auto& e : j.at("occupancy_prior")) {
            const auto alpha = e.at("alpha").get<double>();
            const auto beta = e.at("beta").get<double>();
            if (!(alpha > 0.0 && beta > 0.0))
                throw ScriptInvalid("twin prior parameters must be positive");
            prior.set_params(ChannelId{e.at("channel").get<std::uint32_t>()},
                             OccupancyPrior::Params{alpha, beta});
        }
    } catch (const json::exception& e) {
        throw ScriptInvalid(std::string("bad twin state: ") + e.what());
    }
    return prior;
}

} // namespace tvws

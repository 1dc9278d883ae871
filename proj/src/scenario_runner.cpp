// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/scenario_runner.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "tvws/errors.hpp"
#include "tvws/features.hpp"
#include "tvws/spectrogram.hpp"

namespace tvws {

SensingVerdict ModelSensor::sense(ChannelId ch, const IqBuffer* buf, double now_s) {
    if (buf == nullptr)
        throw InvalidConfig("model sensor requires IQ input");
    SensingVerdict v = sense_channel(*buf, model_, theta_sense_, ch);
    v.decided_at_s = now_s;
    return v;
}

SensingVerdict OracleSensor::sense(ChannelId ch, const IqBuffer* /*buf*/, double now_s) {
    SensingVerdict v;
    v.channel = ch;
    v.cls = occupancy_at(*truth_, ch, now_s);
    v.confidence = 1.0;
    v.occupied = is_occupied(v.cls);
    v.decided_at_s = now_s;
    v.decision_latency_s = 0.0;
    return v;
}

std::optional<ChannelId> select_channel(
    const std::vector<std::pair<ChannelId, SensingVerdict>>& candidates,
    const OccupancyPrior& prior) {
    std::optional<ChannelId> best;
    double best_prior = 0.0;
    double best_conf = 0.0;
    for (const auto& [ch, verdict] : candidates) {
        const double p = prior.occupancy_probability(ch);
        const bool better =
            !best || p < best_prior ||
            (p == best_prior && verdict.confidence > best_conf) ||
            (p == best_prior && verdict.confidence == best_conf && ch < *best);
        if (better) {
            best = ch;
            best_prior = p;
            best_conf = verdict.confidence;
        }
    }
    return best;
}

std::vector<LabeledFeature> make_feature_dataset(int examples_per_class, double snr_db,
                                                 std::uint64_t seed,
                                                 double capture_duration_s,
                                                 double sample_rate_hz) {
    static constexpr SignalClass kClasses[] = {SignalClass::TvBroadcast,
                                               SignalClass::WirelessMic,
                                               SignalClass::OtherTvws, SignalClass::Vacant};
    std::vector<LabeledFeature> dataset;
    dataset.reserve(static_cast<std::size_t>(examples_per_class) * 4);
    std::uint64_t draw = 0;
    for (SignalClass cls : kClasses) {
        for (int i = 0; i < examples_per_class; ++i, ++draw) {
            SynthConfig cfg;
            cfg.cls = cls;
            cfg.snr_db = snr_db;
            cfg.duration_s = capture_duration_s;
            cfg.seed = mix_seed(seed, draw);
            const IqBuffer buf = synth_channel(cfg, sample_rate_hz);
            dataset.push_back(
                LabeledFeature{extract_features(spectrogram(buf), sample_rate_hz), cls});
        }
    }
    return dataset;
}

ClassifierModel train_default_model(std::uint64_t seed, int examples_per_class,
                                    double snr_db) {
    auto dataset = make_feature_dataset(examples_per_class, snr_db, mix_seed(seed, 0x7472));
    ClassifierModel model = train_classifier(dataset, seed);
    std::ostringstream desc;
    desc << "synthetic features, " << examples_per_class << "/class at " << snr_db << " dB";
    model.dataset_descriptor = desc.str();
    return model;
}

namespace {

struct LatencyAccumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }

    double percentile(double q) {
        if (values.empty())
            return 0.0;
        std::sort(values.begin(), values.end());
        const auto idx = static_cast<std::size_t>(q * (values.size() - 1));
        return values[idx];
    }
};

paws::GeoLocation location_at(const ScenarioScript& script, double now_s) {
    paws::GeoLocation loc{13.10, -59.61}; // degenerate default: fixed coordinate
    for (const auto& [t, point] : script.vessel_track) {
        if (t <= now_s)
            loc = point;
        else
            break;
    }
    return loc;
}

std::vector<KpmSample> kpm_window(const ScenarioScript& script, double now_s) {
    std::vector<KpmSample> window;
    for (const auto& s : script.kpm_trace) {
        if (s.t_s <= now_s)
            window.push_back(s);
        else
            break;
    }
    constexpr std::size_t kMaxWindow = 256;
    if (window.size() > kMaxWindow)
        window.erase(window.begin(),
                     window.begin() + static_cast<std::ptrdiff_t>(window.size() - kMaxWindow));
    return window;
}

} // namespace

ScenarioReport run_scenario(const ScenarioScript& script, const RunOptions& opts) {
    script.validate();

    // Mock database bound in-process; simulated time drives grant lifetimes.
    double now_s = 0.0;
    paws::WsdbState initial;
    initial.available_channels = script.initial_available_channels;
    initial.mic_reserved_channels = script.mic_reserved_channels;
    initial.grant_lifetime_s = script.grant_lifetime_s;
    initial.ruleset_id = script.ruleset_id;
    auto wsdb = std::make_shared<paws::WsdbService>(initial);

    paws::ClientConfig client_config;
    client_config.device_id = "sim-vessel";
    paws::PawsClient client(paws::make_inprocess_transport(wsdb, [&now_s] { return now_s; }),
                            client_config);

    std::shared_ptr<ChannelSensor> sensor = opts.sensor;
    if (!sensor)
        sensor = std::make_shared<ModelSensor>(train_default_model(script.seed),
                                               script.theta_sense);

    std::string audit_path = opts.audit_path;
    const bool temp_audit = audit_path.empty();
    if (temp_audit) {
        audit_path = (std::filesystem::temp_directory_path() /
                      ("tvws-audit-" + std::to_string(::getpid()) + "-" +
                       std::to_string(script.seed) + ".log"))
                         .string();
        std::filesystem::remove(audit_path);
    }
    AuditLog audit(audit_path, SigningKey::from_seed(opts.audit_key_seed));
    ComplianceGate gate(audit);

    OccupancyPrior prior = script.initial_prior;
    for (const auto& [index, params] : opts.initial_prior.all())
        prior.set_params(ChannelId{index}, params);
    ModeState mode_state;
    std::optional<EmergencyWaiver> waiver;
    std::vector<paws::PawsGrant> grants;
    std::vector<ComplianceDecision> pending_waiver_decisions;

    ScenarioReport report;
    const auto epochs = static_cast<std::size_t>(script.duration_s / script.epoch_s);
    report.epochs = epochs;

    std::size_t wsdb_applied = 0, waiver_applied = 0;
    auto wsdb_events = script.wsdb_events;
    auto waiver_events = script.waiver_events;
    std::stable_sort(wsdb_events.begin(), wsdb_events.end(),
                     [](const auto& a, const auto& b) { return a.t_s < b.t_s; });
    std::stable_sort(waiver_events.begin(), waiver_events.end(),
                     [](const auto& a, const auto& b) { return a.t_s < b.t_s; });

    double next_query_s = 0.0;
    bool force_query = false;
    std::size_t allowed_epochs = 0;
    std::size_t verdict_matches = 0, verdict_total = 0;
    LatencyAccumulator latency;

    auto do_query = [&](double t) {
        if (!client.initialized()) {
            if (!client.init(location_at(script, t)).ok) {
                next_query_s = t + script.epoch_s;
                return;
            }
        }
        const paws::SpectrumResult result =
            client.query_spectrum(location_at(script, t), script.plan);
        if (result.ok) {
            grants = result.grants;
            // Fresh grants settle any sensing-only decisions made meanwhile.
            const ReconciliationReport rec = reconcile(pending_waiver_decisions, grants);
            report.reconcile_compared += rec.compared;
            report.reconcile_confirmed += rec.confirmed;
            report.discrepancies.insert(report.discrepancies.end(), rec.discrepancies.begin(),
                                        rec.discrepancies.end());
            pending_waiver_decisions.clear();
            next_query_s = t + script.grant_lifetime_s / 2.0;
        } else {
            next_query_s = t + script.epoch_s;
        }
    };

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        now_s = static_cast<double>(epoch) * script.epoch_s;

        while (wsdb_applied < wsdb_events.size() && wsdb_events[wsdb_applied].t_s <= now_s) {
            const auto& e = wsdb_events[wsdb_applied++];
            switch (e.kind) {
            case WsdbEvent::Kind::OutageStart: wsdb->set_outage(true); break;
            case WsdbEvent::Kind::OutageEnd:
                wsdb->set_outage(false);
                force_query = true;
                break;
            case WsdbEvent::Kind::SetAvailability:
                wsdb->set_availability(e.channel, e.available);
                break;
            case WsdbEvent::Kind::SetLatency: wsdb->set_injected_latency(e.latency_s); break;
            }
        }
        while (waiver_applied < waiver_events.size() &&
               waiver_events[waiver_applied].t_s <= now_s) {
            const auto& e = waiver_events[waiver_applied++];
            if (e.kind == WaiverEvent::Kind::Activate)
                waiver = e.waiver;
            else
                waiver.reset();
        }

        if (force_query || now_s >= next_query_s) {
            force_query = false;
            do_query(now_s);
        }

        const auto window = kpm_window(script, now_s);
        const auto [next_mode, directives] = step(mode_state, script.mode_policy, window, now_s);
        if (next_mode.mode != mode_state.mode)
            ++report.mode_transitions;
        mode_state = next_mode;
        (void)directives;

        std::map<ChannelId, IqBuffer> scene;
        if (sensor->needs_iq())
            scene = mix_scene(script.truth, script.plan, now_s, script.per_channel_rate_hz,
                              mix_seed(script.seed, epoch), script.capture_duration_s);

        std::vector<std::pair<ChannelId, SensingVerdict>> admissible;
        ChannelId fallback_channel{0};
        double fallback_conf = -1.0;
        std::map<std::uint32_t, SensingVerdict> verdicts;
        for (ChannelId ch : script.plan.channels()) {
            const IqBuffer* buf = nullptr;
            if (sensor->needs_iq())
                buf = &scene.at(ch);
            const SensingVerdict v = sensor->sense(ch, buf, now_s);
            verdicts[ch.index] = v;
            latency.add(v.decision_latency_s);
            ++verdict_total;
            if (v.cls == occupancy_at(script.truth, ch, now_s))
                ++verdict_matches;
            if (evaluate_decision(ch, now_s, grants, waiver, v).allowed)
                admissible.emplace_back(ch, v);
            // Fallback for an all-denied epoch: the most believable vacant
            // channel, else channel 0, still gets a logged denial.
            const double conf_if_vacant = v.cls == SignalClass::Vacant ? v.confidence : -0.5;
            if (conf_if_vacant > fallback_conf) {
                fallback_conf = conf_if_vacant;
                fallback_channel = ch;
            }
        }

        const std::optional<ChannelId> selected = select_channel(admissible, prior);
        const ChannelId decide_ch = selected.value_or(fallback_channel);
        const SensingVerdict& decide_verdict = verdicts.at(decide_ch.index);

        GateContext ctx;
        ctx.gps = location_at(script, now_s);
        ctx.prior_occupancy = prior.occupancy_probability(decide_ch);
        const ComplianceDecision decision =
            gate.decide(decide_ch, now_s, grants, waiver, decide_verdict, ctx);

        if (decision.allowed) {
            ++allowed_epochs;
            if (is_occupied(occupancy_at(script.truth, decide_ch, now_s)))
                ++report.violations;
            if (decision.basis == DecisionBasis::WaiverSensing)
                pending_waiver_decisions.push_back(decision);
        }

        for (const auto& [index, v] : verdicts)
            prior.update(ChannelId{index}, v.occupied);
    }

    report.availability =
        epochs > 0 ? static_cast<double>(allowed_epochs) / static_cast<double>(epochs) : 0.0;
    report.sensing_accuracy =
        verdict_total > 0 ? static_cast<double>(verdict_matches) /
                                static_cast<double>(verdict_total)
                          : 0.0;
    if (report.reconcile_compared > 0)
        report.confirmation_rate = static_cast<double>(report.reconcile_confirmed) /
                                   static_cast<double>(report.reconcile_compared);
    report.audit_entries = gate.decisions_made();
    report.decision_latency_median_s = latency.percentile(0.5);
    report.decision_latency_p95_s = latency.percentile(0.95);

    if (temp_audit)
        std::filesystem::remove(audit_path);
    return report;
}

std::string emit_report(const ScenarioReport& report, ReportFormat format,
                        bool include_timing) {
    nlohmann::ordered_json j;
    j["epochs"] = report.epochs;
    j["availability"] = report.availability;
    j["violations"] = report.violations;
    j["sensing_accuracy"] = report.sensing_accuracy;
    j["reconciliation"]["compared"] = report.reconcile_compared;
    j["reconciliation"]["confirmed"] = report.reconcile_confirmed;
    if (report.confirmation_rate)
        j["reconciliation"]["confirmation_rate"] = *report.confirmation_rate;
    else
        j["reconciliation"]["confirmation_rate"] = nullptr;
    auto discrepancies = nlohmann::ordered_json::array();
    for (const auto& d : report.discrepancies)
        discrepancies.push_back({{"channel", d.channel.index},
                                 {"sensing_said", to_string(d.sensing_said)},
                                 {"db_said", d.db_said == DbClaim::Reserved ? "Reserved"
                                                                            : "Granted"}});
    j["reconciliation"]["discrepancies"] = discrepancies;
    j["mode_transitions"] = report.mode_transitions;
    j["audit_entries"] = report.audit_entries;
    if (include_timing) {
        j["timing"]["decision_latency_median_s"] = report.decision_latency_median_s;
        j["timing"]["decision_latency_p95_s"] = report.decision_latency_p95_s;
    }

    if (format == ReportFormat::Structured)
        return j.dump(2) + "\n";

    std::ostringstream os;
    std::function<void(const nlohmann::ordered_json&, const std::string&)> walk =
        [&](const nlohmann::ordered_json& node, const std::string& prefix) {
            for (const auto& [key, value] : node.items()) {
                const std::string name = prefix.empty() ? key : prefix + "." + key;
                if (value.is_object())
                    walk(value, name);
                else
                    os << name << " = " << value.dump() << "\n";
            }
        };
    walk(j, "");
    return os.str();
}

} // namespace tvws

// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits non-zero if any requested criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "tvws/audit_log.hpp"
#include "tvws/compliance_gate.hpp"
#include "tvws/energy_detector.hpp"
#include "tvws/mode_controller.hpp"
#include "tvws/paws_client.hpp"
#include "tvws/propagation.hpp"
#include "tvws/scenario_runner.hpp"
#include "tvws/sensing.hpp"
#include "tvws/wsdb_server.hpp"

using namespace tvws;

namespace {

struct Criterion {
    int number;
    const char* summary;
    std::function<bool(std::ostringstream&)> run;
};

std::string scenario_path(const char* name) {
    return std::string(TVWS_SCENARIO_DIR) + "/" + name;
}

// ---------------------------------------------------------------- criterion 1

bool c1_breakpoint(std::ostringstream& log) {
    const double d = breakpoint_distance_m(25.0, 5.0, 550e6);
    const double with_hr10 = breakpoint_distance_m(25.0, 10.0, 550e6);
    log << "computed d_b(25 m, 5 m, 550 MHz) = " << d << " m; "
        << "published figure for this setup is approximately 1.8 km, which the "
        << "formula reproduces only with h_r = 10 m (d_b = " << with_hr10
        << " m) - flagged as a parameter discrepancy";
    return std::abs(d - 916.96) <= 0.5;
}

// ---------------------------------------------------------------- criterion 2

bool c2_link_budget(std::ostringstream& log) {
    Rng rng(2026);
    int affine_failures = 0, far_field_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const LinkBudgetParams params{rng.uniform(10.0, 36.0), rng.uniform(0.0, 12.0),
                                      rng.uniform(0.0, 12.0), rng.uniform(0.0, 15.0)};
        LinkGeometry geom{rng.uniform(5.0, 50.0), rng.uniform(2.0, 20.0), 0.0,
                          rng.uniform(470e6, 698e6)};
        const double d_b = breakpoint_distance_m(geom.h_t_m, geom.h_r_m, geom.center_freq_hz);
        geom.distance_m = rng.uniform(50.0, 300.0) * d_b;

        const double loss = two_ray_path_loss_db(geom);
        const double base = received_power_dbm(params, loss);
        LinkBudgetParams p = params;
        p.p_t_dbm += 1.0;
        affine_failures += std::abs(received_power_dbm(p, loss) - base - 1.0) > 1e-9;
        p = params;
        p.g_t_dbi += 1.0;
        affine_failures += std::abs(received_power_dbm(p, loss) - base - 1.0) > 1e-9;
        p = params;
        p.g_r_dbi += 1.0;
        affine_failures += std::abs(received_power_dbm(p, loss) - base - 1.0) > 1e-9;
        p = params;
        p.fade_margin_db += 1.0;
        affine_failures += std::abs(received_power_dbm(p, loss) - base + 1.0) > 1e-9;

        far_field_failures += std::abs(loss - two_ray_far_field_loss_db(geom)) > 0.5;
    }
    log << "1000 tuples: " << affine_failures << " affine failures, " << far_field_failures
        << " far-field failures";
    return affine_failures == 0 && far_field_failures == 0;
}

// ---------------------------------------------------------------- criterion 3

bool c3_sensing_accuracy(std::ostringstream& log) {
    const auto train_set = make_feature_dataset(500, 15.0, 31001);
    const auto test_set = make_feature_dataset(100, 15.0, 31002);
    const ClassifierModel model = train_classifier(train_set, 3);
    int correct = 0;
    for (const auto& ex : test_set)
        correct += classify(model, ex.features).first == ex.label;
    const double accuracy = static_cast<double>(correct) / test_set.size();
    log << "held-out accuracy " << accuracy << " on " << test_set.size()
        << " examples (bar 0.90; the published 94.2% used real captures and a CNN and is "
        << "not reproducible at desk scale)";
    return accuracy >= 0.90;
}

// ---------------------------------------------------------------- criterion 4

bool c4_cfar(std::ostringstream& log) {
    const Eigen::Index n = 100000;
    const int trials = 10000;
    Rng rng(404);

    IqBuffer buf;
    buf.sample_rate_hz = 8e6;
    buf.samples.resize(n);

    int alarms = 0;
    for (int t = 0; t < trials; ++t) {
        fill_complex_gaussian(rng, buf.samples, 1.0f);
        alarms += energy_detect(buf, 1.0, 0.01);
    }
    const double fa_rate = static_cast<double>(alarms) / trials;

    int detections = 0;
    Eigen::ArrayXcf sig(n);
    for (int t = 0; t < trials; ++t) {
        fill_complex_gaussian(rng, buf.samples, 1.0f);
        fill_complex_gaussian(rng, sig, 1.0f); // SNR 0 dB
        buf.samples += sig;
        detections += energy_detect(buf, 1.0, 0.01);
    }
    const double det_rate = static_cast<double>(detections) / trials;

    log << "empirical P_fa = " << fa_rate << " (target [0.005, 0.02]), detection rate = "
        << det_rate << " at 0 dB SNR over " << trials << " trials";
    return fa_rate >= 0.005 && fa_rate <= 0.02 && det_rate >= 0.99;
}

// ---------------------------------------------------------------- criterion 5

bool c5_outage_resilience(std::ostringstream& log) {
    const ScenarioScript script = load_script(scenario_path("outage_waiver.json"));

    RunOptions model_opts; // default sensor: classifier trained from the seed
    const ScenarioReport with_model = run_scenario(script, model_opts);

    RunOptions oracle_opts;
    oracle_opts.sensor = std::make_shared<OracleSensor>(script.truth);
    const ScenarioReport with_oracle = run_scenario(script, oracle_opts);

    log << "classifier run: availability = " << with_model.availability
        << ", violations = " << with_model.violations
        << "; oracle run: availability = " << with_oracle.availability
        << ", violations = " << with_oracle.violations;
    return with_model.availability == 1.0 && with_oracle.violations == 0 &&
           with_oracle.availability == 1.0;
}

// ---------------------------------------------------------------- criterion 6

bool c6_reconciliation(std::ostringstream& log) {
    const ScenarioScript script = load_script(scenario_path("reconciliation.json"));
    RunOptions opts;
    opts.sensor = std::make_shared<OracleSensor>(script.truth);
    const ScenarioReport report = run_scenario(script, opts);

    const bool has_rate = report.confirmation_rate.has_value();
    const double rate = has_rate ? *report.confirmation_rate : 0.0;
    bool all_mic = !report.discrepancies.empty();
    for (const auto& d : report.discrepancies)
        all_mic = all_mic && script.mic_reserved_channels.count(d.channel.index) > 0;

    log << "compared = " << report.reconcile_compared
        << ", confirmed = " << report.reconcile_confirmed << ", rate = " << rate
        << " (target 0.97 +/- 0.01), discrepancies = " << report.discrepancies.size()
        << (all_mic ? ", all on mic-reserved channels" : ", NOT all on mic reservations");
    return has_rate && std::abs(rate - 0.97) <= 0.01 && all_mic;
}

// ---------------------------------------------------------------- criterion 7

bool c7_hysteresis(std::ostringstream& log) {
    const HysteresisPolicy policy;
    Rng rng(71);
    int dwell_violations = 0;
    std::size_t steps_done = 0;

    ModeState state;
    state.entered_at_s = 0.0;
    std::vector<KpmSample> window;
    double last_transition = -1e9;
    double now = 0.0;
    for (int i = 0; i < 10000; ++i) {
        now += 1.0;
        KpmSample s;
        s.t_s = now;
        s.ul_throughput_mbps = rng.uniform(0.0, 12.0);
        s.bler = rng.uniform(0.0, 0.2);
        s.gpu_utilization = rng.uniform();
        s.thermal_headroom_c = rng.uniform(0.0, 40.0);
        window.push_back(s);
        if (window.size() > 64)
            window.erase(window.begin());
        const auto [next, directives] = step(state, policy, window, now);
        if (next.mode != state.mode) {
            if (now - last_transition < policy.min_dwell_s && last_transition > -1e8)
                ++dwell_violations;
            last_transition = now;
        }
        state = next;
        ++steps_done;
    }

    // Hovering strictly between the thresholds must never transition.
    int hover_transitions = 0;
    for (VideoMode start : {VideoMode::NativeHd, VideoMode::Degraded}) {
        ModeState hover;
        hover.mode = start;
        hover.entered_at_s = 0.0;
        std::vector<KpmSample> hover_window;
        double t = 0.0;
        for (int i = 0; i < 2000; ++i) {
            t += 1.0;
            KpmSample s;
            s.t_s = t;
            s.ul_throughput_mbps = rng.uniform(policy.degrade_threshold_mbps + 0.01,
                                               policy.restore_threshold_mbps - 0.01);
            s.thermal_headroom_c = 30.0;
            hover_window.push_back(s);
            if (hover_window.size() > 64)
                hover_window.erase(hover_window.begin());
            const auto [next, directives] = step(hover, policy, hover_window, t);
            hover_transitions += next.mode != hover.mode;
            hover = next;
        }
    }

    log << steps_done << " random steps: " << dwell_violations
        << " dwell violations; hover traces: " << hover_transitions << " transitions";
    return dwell_violations == 0 && hover_transitions == 0;
}

// ---------------------------------------------------------------- criterion 8

bool c8_audit_tamper(std::ostringstream& log) {
    const auto path =
        (std::filesystem::temp_directory_path() / "tvws_acceptance_audit.log").string();
    std::filesystem::remove(path);
    {
        AuditLog audit(path, SigningKey::from_seed(8));
        Rng rng(8);
        for (std::uint32_t i = 0; i < 1000; ++i) {
            AuditRecord r;
            r.timestamp_s = i;
            r.lat_deg = 13.0 + rng.uniform();
            r.lon_deg = -59.0 - rng.uniform();
            r.channel = ChannelId{static_cast<std::uint32_t>(rng.uniform_index(38))};
            r.eirp_dbm = rng.uniform(20.0, 36.0);
            r.grant_status = static_cast<GrantStatus>(rng.uniform_index(4));
            r.sensing_confidence = rng.uniform();
            r.basis = static_cast<DecisionBasis>(rng.uniform_index(3));
            r.prior_occupancy = rng.uniform();
            audit.append(r);
        }
    }
    if (!AuditLog::verify_file(path).ok) {
        log << "clean 1000-entry log failed verification";
        return false;
    }

    // Rebuild the file with a single mutated field in one entry; the chain
    // must fail exactly at that index.
    const auto entries = AuditLog::read_all(path);
    std::ifstream is(path, std::ios::binary);
    std::ostringstream raw;
    raw << is.rdbuf();
    const std::string original = raw.str();
    is.close();

    Rng rng(88);
    int detected = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const std::size_t k = rng.uniform_index(entries.size());
        SignedAuditEntry mutated = entries[k];
        switch (rng.uniform_index(7)) {
        case 0: mutated.record.timestamp_s += 1.0; break;
        case 1: mutated.record.lat_deg += 1e-6; break;
        case 2: mutated.record.channel.index += 1; break;
        case 3: mutated.record.eirp_dbm = mutated.record.eirp_dbm.value_or(0.0) + 0.5; break;
        case 4:
            mutated.record.grant_status =
                static_cast<GrantStatus>((static_cast<int>(mutated.record.grant_status) + 1) % 4);
            break;
        case 5:
            mutated.record.sensing_confidence =
                mutated.record.sensing_confidence.value_or(0.0) * 0.5 + 0.1;
            break;
        default:
            mutated.record.basis = static_cast<DecisionBasis>(
                (static_cast<int>(mutated.record.basis) + 1) % 3);
            break;
        }

        // Splice the re-serialized entry into a copy of the log.
        std::string copy = original;
        std::size_t offset = 44;
        for (std::size_t i = 0; i < k; ++i) {
            std::uint32_t len;
            std::memcpy(&len, copy.data() + offset, 4);
            offset += 4 + len;
        }
        const auto bytes = mutated.entry_bytes();
        std::uint32_t len;
        std::memcpy(&len, copy.data() + offset, 4);
        if (len != bytes.size()) {
            log << "mutated entry changed length";
            return false;
        }
        std::memcpy(copy.data() + offset + 4, bytes.data(), bytes.size());

        const auto tampered =
            (std::filesystem::temp_directory_path() / "tvws_acceptance_tampered.log").string();
        std::ofstream os(tampered, std::ios::binary | std::ios::trunc);
        os.write(copy.data(), static_cast<std::streamsize>(copy.size()));
        os.close();

        const VerifyResult result = AuditLog::verify_file(tampered);
        detected += !result.ok && result.first_bad_index == k;
        std::filesystem::remove(tampered);
    }
    std::filesystem::remove(path);
    log << "1000-entry log verified; " << detected << "/" << trials
        << " single-field mutations detected at the mutated index";
    return detected == trials;
}

// ---------------------------------------------------------------- criterion 9

bool c9_protocol(std::ostringstream& log) {
    using namespace tvws::paws;

    // Every checked-in golden vector must survive decode -> encode unchanged.
    int golden_ok = 0;
    const char* requests[] = {"paws_init_request.json", "paws_getspectrum_request.json"};
    const char* responses[] = {"paws_init_response.json", "paws_getspectrum_response.json",
                               "paws_null_ruleset_response.json"};
    for (const char* name : requests) {
        std::ifstream is(std::string(TVWS_GOLDEN_DIR) + "/" + name, std::ios::binary);
        std::ostringstream buf;
        buf << is.rdbuf();
        golden_ok += is.good() && encode_request(decode_request(buf.str())) == buf.str();
    }
    for (const char* name : responses) {
        std::ifstream is(std::string(TVWS_GOLDEN_DIR) + "/" + name, std::ios::binary);
        std::ostringstream buf;
        buf << is.rdbuf();
        golden_ok += is.good() && encode_response(decode_response(buf.str())) == buf.str();
    }
    if (golden_ok != 5) {
        log << "only " << golden_ok << "/5 golden vectors round-tripped bit-exactly";
        return false;
    }

    WsdbState state;
    state.available_channels = {3, 7};
    state.outage = true;
    state.outage_hold_s = 0.04;
    auto service = std::make_shared<WsdbService>(state);
    WsdbHttpServer server(service, "127.0.0.1", 0);
    server.start();

    ClientConfig config;
    config.deadline_s = 0.01;
    PawsClient client(make_http_transport("127.0.0.1", server.port()), config);

    int timeouts = 0;
    const int queries = 1000;
    for (int i = 0; i < queries; ++i) {
        const SpectrumResult r = client.init({13.1, -59.6});
        timeouts += !r.ok && r.cause == UnavailableCause::Timeout;
    }
    server.stop();

    log << "5/5 golden vectors bit-exact; " << timeouts << "/" << queries
        << " queries timed out under injected outage";
    return timeouts == queries;
}

// --------------------------------------------------------------- criterion 10

bool c10_latency(std::ostringstream& log) {
    const ClassifierModel model = train_default_model(1001, 60);

    SynthConfig cfg;
    cfg.cls = SignalClass::Vacant;
    cfg.duration_s = 0.2; // 200 ms capture window
    cfg.seed = 10;
    const IqBuffer buf = synth_channel(cfg, kDefaultChannelSampleRateHz);

    std::vector<double> latencies;
    for (int i = 0; i < 15; ++i)
        latencies.push_back(sense_channel(buf, model).decision_latency_s);
    std::sort(latencies.begin(), latencies.end());
    const double median_ms = latencies[latencies.size() / 2] * 1e3;
    const double p95_ms = latencies[static_cast<std::size_t>(0.95 * (latencies.size() - 1))] * 1e3;

    log << "sense_channel on a 200 ms capture: median " << median_ms << " ms, p95 " << p95_ms
        << " ms on this CPU (GPU-backed reference: 23 ms median, 31 ms P95 - not "
        << "reproducible here)";
    return median_ms < 50.0;
}

// --------------------------------------------------------------- criterion 11

bool c11_determinism(std::ostringstream& log) {
    // Full pipeline incl. in-run training, twice, byte-compared.
    ScenarioScript script = load_script(scenario_path("baseline.json"));
    script.seed = 2027;
    const std::string a = emit_report(run_scenario(script), ReportFormat::Structured);
    const std::string b = emit_report(run_scenario(script), ReportFormat::Structured);

    // Oracle path over the reconciliation reference.
    const ScenarioScript rec = load_script(scenario_path("reconciliation.json"));
    RunOptions opts;
    opts.sensor = std::make_shared<OracleSensor>(rec.truth);
    const std::string c = emit_report(run_scenario(rec, opts), ReportFormat::Structured);
    opts.sensor = std::make_shared<OracleSensor>(rec.truth);
    const std::string d = emit_report(run_scenario(rec, opts), ReportFormat::Structured);

    log << "classifier run " << (a == b ? "byte-identical" : "DIFFERS") << "; oracle run "
        << (c == d ? "byte-identical" : "DIFFERS");
    return a == b && c == d;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "two-ray breakpoint formula (916.96 m +/- 0.5 m, discrepancy flagged)",
         c1_breakpoint},
        {2, "link budget affine structure and far-field asymptote", c2_link_budget},
        {3, "feature classifier held-out accuracy >= 0.90", c3_sensing_accuracy},
        {4, "CFAR false-alarm and detection rates", c4_cfar},
        {5, "outage resilience: availability 1.0, oracle violations 0", c5_outage_resilience},
        {6, "reconciliation rate 0.97 with mic-reservation discrepancies", c6_reconciliation},
        {7, "mode-controller dwell and hover behaviour", c7_hysteresis},
        {8, "audit log tamper evidence", c8_audit_tamper},
        {9, "protocol round-trip and outage fault injection", c9_protocol},
        {10, "sensing decision latency on a 200 ms window", c10_latency},
        {11, "seeded runs produce byte-identical structured reports", c11_determinism},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));

    bool all_ok = true;
    for (const auto& criterion : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.number) == selected.end())
            continue;
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << criterion.number << ": "
                  << criterion.summary << " [" << detail.str() << "]" << std::endl;
    }
    return all_ok ? 0 : 1;
}

// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "tvws/errors.hpp"
#include "tvws/iq_io.hpp"
#include "tvws/scenario_runner.hpp"
#include "tvws/wsdb_server.hpp"

// httplib drags in resolv.h, whose _res macro mangles Eigen internals; it
// must come after any Eigen-including header.
#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitScriptInvalid = 2;
constexpr int kExitAuditFailure = 3;

volatile std::sig_atomic_t g_stop = 0;

void handle_signal(int) {
    g_stop = 1;
}

int cmd_run_scenario(const std::string& script_path, std::uint64_t seed, bool seed_set,
                     const std::string& report_path, const std::string& format,
                     const std::string& model_path, bool use_oracle,
                     const std::string& audit_path, bool with_timing) {
    tvws::ScenarioScript script;
    try {
        script = tvws::load_script(script_path);
    } catch (const tvws::ScriptInvalid& e) {
        std::cerr << "invalid script: " << e.what() << "\n";
        return kExitScriptInvalid;
    }
    if (seed_set)
        script.seed = seed;

    tvws::RunOptions opts;
    opts.audit_path = audit_path;
    if (use_oracle)
        opts.sensor = std::make_shared<tvws::OracleSensor>(script.truth);
    else if (!model_path.empty())
        opts.sensor = std::make_shared<tvws::ModelSensor>(tvws::load_model(model_path),
                                                          script.theta_sense);

    const tvws::ScenarioReport report = tvws::run_scenario(script, opts);
    const auto fmt =
        format == "text" ? tvws::ReportFormat::Text : tvws::ReportFormat::Structured;
    const std::string out = tvws::emit_report(report, fmt, with_timing);
    if (report_path.empty()) {
        std::cout << out;
    } else {
        std::ofstream os(report_path, std::ios::trunc);
        os << out;
        if (!os) {
            std::cerr << "cannot write report: " << report_path << "\n";
            return 1;
        }
    }
    return kExitOk;
}

int cmd_scan(const std::string& dataset, const std::string& model_path, double theta) {
    const tvws::ClassifierModel model = tvws::load_model(model_path);
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dataset)) {
        for (const auto& e : std::filesystem::directory_iterator(dataset))
            if (e.path().extension() == ".iq")
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
    } else {
        files.emplace_back(dataset);
    }
    std::uint32_t index = 0;
    for (const auto& path : files) {
        const tvws::LabeledIq item = tvws::read_iq_file(path.string());
        const tvws::SensingVerdict v =
            tvws::sense_channel(item.buffer, model, theta, tvws::ChannelId{index++});
        std::cout << tvws::verdict_to_json_line(v) << "\n";
    }
    return kExitOk;
}

int cmd_serve_wsdb(const std::string& config_path) {
    std::ifstream is(config_path);
    if (!is) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return kExitScriptInvalid;
    }
    nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
    if (j.is_discarded()) {
        std::cerr << "malformed config: " << config_path << "\n";
        return kExitScriptInvalid;
    }

    tvws::paws::WsdbState state;
    for (const auto& ch : j.value("available_channels", std::vector<std::uint32_t>{}))
        state.available_channels.insert(ch);
    for (const auto& ch : j.value("mic_reserved_channels", std::vector<std::uint32_t>{}))
        state.mic_reserved_channels.insert(ch);
    state.ruleset_id = j.value("ruleset_id", state.ruleset_id);
    state.grant_lifetime_s = j.value("grant_lifetime_s", state.grant_lifetime_s);
    state.outage = j.value("outage", false);
    state.injected_latency_s = j.value("injected_latency_s", 0.0);
    state.null_ruleset = j.value("null_ruleset", false);
    state.outage_hold_s = j.value("outage_hold_s", state.outage_hold_s);

    const auto host = j.value("host", std::string("127.0.0.1"));
    const int port = j.value("port", 8737);

    auto service = std::make_shared<tvws::paws::WsdbService>(state);
    tvws::paws::WsdbHttpServer server(service, host, port);
    try {
        server.start();
    } catch (const tvws::BindFailure& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    std::cout << "wsdb listening on " << host << ":" << server.port() << "\n";
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop)
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
    return kExitOk;
}

int cmd_verify_audit(const std::string& log_path) {
    const tvws::VerifyResult result = tvws::AuditLog::verify_file(log_path);
    if (result.ok) {
        std::cout << "ok: " << result.entries << " entries verified\n";
        return kExitOk;
    }
    std::cout << "FAIL at entry " << result.first_bad_index << " (byte offset "
              << result.first_bad_offset << "): " << result.reason << "\n";
    return kExitAuditFailure;
}

int admin_post(const std::string& host, int port, const std::string& path,
               const nlohmann::json& body) {
    httplib::Client cli(host, port);
    auto res = cli.Post(path, body.dump(), "application/json");
    if (!res || res->status != 200) {
        std::cerr << "admin request failed\n";
        return 1;
    }
    std::cout << res->body << "\n";
    return kExitOk;
}

int cmd_train_model(const std::string& out_path, std::uint64_t seed, int per_class,
                    double snr_db) {
    tvws::ClassifierModel model = tvws::train_default_model(seed, per_class, snr_db);
    tvws::save_model(out_path, model);
    std::cout << "model written to " << out_path << "\n";
    return kExitOk;
}

int cmd_synth_dataset(const std::string& out_dir, int per_class, double snr_db,
                      std::uint64_t seed, double duration_s) {
    std::filesystem::create_directories(out_dir);
    static constexpr tvws::SignalClass kClasses[] = {
        tvws::SignalClass::TvBroadcast, tvws::SignalClass::WirelessMic,
        tvws::SignalClass::OtherTvws, tvws::SignalClass::Vacant};
    std::uint64_t draw = 0;
    for (tvws::SignalClass cls : kClasses) {
        for (int i = 0; i < per_class; ++i, ++draw) {
            tvws::SynthConfig cfg;
            cfg.cls = cls;
            cfg.snr_db = snr_db;
            cfg.duration_s = duration_s;
            cfg.seed = tvws::mix_seed(seed, draw);
            const tvws::IqBuffer buf =
                tvws::synth_channel(cfg, tvws::kDefaultChannelSampleRateHz);
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%04d.iq", tvws::to_string(cls).c_str(), i);
            tvws::write_iq_file((std::filesystem::path(out_dir) / name).string(), buf, cls,
                                snr_db);
        }
    }
    std::cout << "wrote " << draw << " buffers to " << out_dir << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TV white space control-plane toolkit"};
    app.require_subcommand(1);

    // run-scenario
    std::string script_path, report_path, format = "structured", model_path, audit_path;
    std::uint64_t seed = 0;
    bool use_oracle = false, with_timing = false;
    auto* run = app.add_subcommand("run-scenario", "execute a scripted scenario");
    run->add_option("script", script_path, "scenario script (JSON)")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the script seed");
    run->add_option("--report", report_path, "write the report here instead of stdout");
    run->add_option("--format", format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    run->add_option("--model", model_path, "classifier model file");
    run->add_flag("--oracle", use_oracle, "use the ground-truth oracle sensor");
    run->add_option("--audit", audit_path, "persist the audit log here");
    run->add_flag("--with-timing", with_timing,
                  "include wall-clock latency stats (not reproducible)");

    // scan
    std::string dataset_path, scan_model;
    double theta = tvws::kThetaSense;
    auto* scan = app.add_subcommand("scan", "offline sensing over exported IQ containers");
    scan->add_option("dataset", dataset_path, ".iq file or directory")->required();
    scan->add_option("--model", scan_model, "classifier model file")->required();
    scan->add_option("--theta", theta, "candidacy threshold");

    // serve-wsdb
    std::string wsdb_config;
    auto* serve = app.add_subcommand("serve-wsdb", "run the mock whitespace database");
    serve->add_option("config", wsdb_config, "server config (JSON)")->required();

    // verify-audit
    std::string audit_file;
    auto* verify = app.add_subcommand("verify-audit", "check an audit log chain");
    verify->add_option("logfile", audit_file, "audit log path")->required();

    // wsdb-admin
    std::string admin_host = "127.0.0.1";
    int admin_port = 8737;
    auto* admin = app.add_subcommand("wsdb-admin", "fault injection on a running server");
    admin->add_option("--host", admin_host, "server host");
    admin->add_option("--port", admin_port, "server port");
    bool outage_value = false;
    auto* set_outage = admin->add_subcommand("set-outage", "toggle outage");
    set_outage->add_option("outage", outage_value, "true|false")->required();
    double latency_value = 0.0;
    auto* set_latency = admin->add_subcommand("set-latency", "inject response latency");
    set_latency->add_option("seconds", latency_value, "seconds")->required();
    std::uint32_t avail_channel = 0;
    bool avail_value = false;
    auto* set_avail = admin->add_subcommand("set-availability", "set channel availability");
    set_avail->add_option("channel", avail_channel, "channel index")->required();
    set_avail->add_option("available", avail_value, "true|false")->required();
    bool null_ruleset_value = false;
    auto* set_null = admin->add_subcommand("set-null-ruleset", "model an unregistered jurisdiction");
    set_null->add_option("enabled", null_ruleset_value, "true|false")->required();

    // train-model
    std::string model_out = "model.tvwsmdl";
    std::uint64_t train_seed = 7;
    int per_class = 120;
    double train_snr = 15.0;
    auto* train = app.add_subcommand("train-model", "train the default feature classifier");
    train->add_option("--out", model_out, "output model path");
    train->add_option("--seed", train_seed, "training seed");
    train->add_option("--per-class", per_class, "examples per class");
    train->add_option("--snr", train_snr, "training SNR (dB)");

    // synth-dataset
    std::string synth_dir = "dataset";
    int synth_per_class = 25;
    double synth_snr = 15.0;
    std::uint64_t synth_seed = 11;
    double synth_duration = 0.004;
    auto* synth = app.add_subcommand("synth-dataset", "export labeled IQ containers");
    synth->add_option("outdir", synth_dir, "output directory")->required();
    synth->add_option("--per-class", synth_per_class, "buffers per class");
    synth->add_option("--snr", synth_snr, "SNR (dB)");
    synth->add_option("--seed", synth_seed, "seed");
    synth->add_option("--duration", synth_duration, "buffer duration (s)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run_scenario(script_path, seed, seed_opt->count() > 0, report_path,
                                    format, model_path, use_oracle, audit_path, with_timing);
        if (scan->parsed())
            return cmd_scan(dataset_path, scan_model, theta);
        if (serve->parsed())
            return cmd_serve_wsdb(wsdb_config);
        if (verify->parsed())
            return cmd_verify_audit(audit_file);
        if (admin->parsed()) {
            if (set_outage->parsed())
                return admin_post(admin_host, admin_port, "/admin/outage",
                                  {{"outage", outage_value}});
            if (set_latency->parsed())
                return admin_post(admin_host, admin_port, "/admin/latency",
                                  {{"seconds", latency_value}});
            if (set_avail->parsed())
                return admin_post(admin_host, admin_port, "/admin/availability",
                                  {{"channel", avail_channel}, {"available", avail_value}});
            if (set_null->parsed())
                return admin_post(admin_host, admin_port, "/admin/null-ruleset",
                                  {{"enabled", null_ruleset_value}});
            std::cerr << "wsdb-admin requires a subcommand\n";
            return 1;
        }
        if (train->parsed())
            return cmd_train_model(model_out, train_seed, per_class, train_snr);
        if (synth->parsed())
            return cmd_synth_dataset(synth_dir, synth_per_class, synth_snr, synth_seed,
                                     synth_duration);
    } catch (const tvws::ScriptInvalid& e) {
        std::cerr << "invalid script: " << e.what() << "\n";
        return kExitScriptInvalid;
    } catch (const tvws::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}

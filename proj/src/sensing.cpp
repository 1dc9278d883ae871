// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/sensing.hpp"

#include <chrono>

#include <json.hpp>

#include "tvws/errors.hpp"
#include "tvws/spectrogram.hpp"

namespace tvws {

SensingVerdict sense_channel(const IqBuffer& buf, const ClassifierModel& model,
                             double theta_sense, ChannelId ch) {
    if (!(theta_sense > 0.0 && theta_sense < 1.0))
        throw InvalidConfig("theta_sense must lie in (0,1)");

    const auto t0 = std::chrono::steady_clock::now();
    const Spectrogram sg = spectrogram(buf);
    const FeatureVector features = extract_features(sg, buf.sample_rate_hz);
    const auto [cls, confidence] = classify(model, features);
    const auto t1 = std::chrono::steady_clock::now();

    SensingVerdict v;
    v.channel = ch;
    v.cls = cls;
    v.confidence = confidence;
    v.occupied = is_occupied(cls);
    v.decided_at_s = buf.capture_time_s;
    v.decision_latency_s = std::chrono::duration<double>(t1 - t0).count();
    return v;
}

bool is_transmit_candidate(const SensingVerdict& v, double theta_sense) {
    return v.cls == SignalClass::Vacant && v.confidence >= theta_sense;
}

std::string verdict_to_json_line(const SensingVerdict& v) {
    nlohmann::ordered_json j;
    j["channel"] = v.channel.index;
    j["class"] = to_string(v.cls);
    j["confidence"] = v.confidence;
    j["occupied"] = v.occupied;
    j["decided_at_s"] = v.decided_at_s;
    j["decision_latency_s"] = v.decision_latency_s;
    return j.dump();
}

SensingVerdict verdict_from_json_line(const std::string& line) {
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
        throw ProtocolError("malformed verdict record");
    try {
        SensingVerdict v;
        v.channel = ChannelId{j.at("channel").get<std::uint32_t>()};
        v.cls = signal_class_from_string(j.at("class").get<std::string>());
        v.confidence = j.at("confidence").get<double>();
        v.occupied = j.at("occupied").get<bool>();
        v.decided_at_s = j.at("decided_at_s").get<double>();
        v.decision_latency_s = j.at("decision_latency_s").get<double>();
        return v;
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("malformed verdict record: ") + e.what());
    }
}

void VerdictBoard::publish(const SensingVerdict& v) {
    {
        std::lock_guard lock(mutex_);
        latest_[v.channel.index] = v;
    }
    version_.fetch_add(1);
}

void VerdictBoard::publish_batch(const std::vector<SensingVerdict>& batch) {
    {
        std::lock_guard lock(mutex_);
        for (const auto& v : batch)
            latest_[v.channel.index] = v;
    }
    version_.fetch_add(1);
}

std::vector<SensingVerdict> VerdictBoard::snapshot() const {
    std::lock_guard lock(mutex_);
    std::vector<SensingVerdict> out;
    out.reserve(latest_.size());
    for (const auto& [_, v] : latest_)
        out.push_back(v);
    return out;
}

SensingService::SensingService(CaptureFn capture, VerdictBoard& board, double cadence_hz)
    : capture_(std::move(capture)), board_(board), cadence_hz_(cadence_hz) {
    if (!(cadence_hz_ > 0.0))
        throw InvalidConfig("cadence must be positive");
}

SensingService::~SensingService() {
    stop();
}

void SensingService::start() {
    if (running_.exchange(true))
        return;
    worker_ = std::thread([this] {
        const auto period =
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(1.0 / cadence_hz_));
        auto next = std::chrono::steady_clock::now();
        while (running_.load()) {
            board_.publish_batch(capture_());
            batches_.fetch_add(1);
            next += period;
            while (running_.load() && std::chrono::steady_clock::now() < next)
                std::this_thread::sleep_for(std::chrono::milliseconds(1));
        }
    });
}

void SensingService::stop() {
    if (!running_.exchange(false))
        return;
    if (worker_.joinable())
        worker_.join();
}

} // namespace tvws

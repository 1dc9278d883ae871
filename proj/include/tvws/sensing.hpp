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

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "tvws/classifier.hpp"
#include "tvws/waveform.hpp"

namespace tvws {

/// Minimum classifier confidence for a vacant verdict to qualify a channel
/// for waiver-based transmission.
constexpr double kThetaSense = 0.85;

struct SensingVerdict {
    ChannelId channel;
    SignalClass cls = SignalClass::Vacant;
    double confidence = 0.0;
    bool occupied = false;
    double decided_at_s = 0.0;
    double decision_latency_s = 0.0;
};

/// Runs spectrogram -> features -> classify on one capture and records the
/// wall-clock decision latency. theta_sense must lie in (0,1); it does not
/// alter the verdict (candidacy is consumed by the compliance gate) and is
/// validated here so misconfiguration surfaces at the sensing boundary.
SensingVerdict sense_channel(const IqBuffer& buf, const ClassifierModel& model,
                             double theta_sense = kThetaSense, ChannelId ch = {});

/// Candidate for transmission: vacant verdict with confidence >= theta.
bool is_transmit_candidate(const SensingVerdict& v, double theta_sense);

/// One line per verdict, fixed field order:
/// {"channel":..,"class":..,"confidence":..,"occupied":..,"decided_at_s":..,
///  "decision_latency_s":..}
std::string verdict_to_json_line(const SensingVerdict& v);
SensingVerdict verdict_from_json_line(const std::string& line);

/// Latest-wins mailbox between the sensing cadence and consumers. Publishing
/// never blocks on readers; a slow consumer simply observes the newest
/// verdict per channel.
class VerdictBoard {
  public:
    void publish(const SensingVerdict& v);
    void publish_batch(const std::vector<SensingVerdict>& batch);
    std::vector<SensingVerdict> snapshot() const;
    std::uint64_t version() const { return version_.load(); }

  private:
    mutable std::mutex mutex_;
    std::map<std::uint32_t, SensingVerdict> latest_;
    std::atomic<std::uint64_t> version_{0};
};

/// Drives a capture callback on a fixed cadence (default 1 Hz) and posts the
/// resulting verdict batch to a VerdictBoard.
class SensingService {
  public:
    using CaptureFn = std::function<std::vector<SensingVerdict>()>;

    SensingService(CaptureFn capture, VerdictBoard& board, double cadence_hz = 1.0);
    ~SensingService();

    void start();
    void stop();
    std::uint64_t batches_published() const { return batches_.load(); }

  private:
    CaptureFn capture_;
    VerdictBoard& board_;
    double cadence_hz_;
    std::atomic<bool> running_{false};
    std::atomic<std::uint64_t> batches_{0};
    std::thread worker_;
};

} // namespace tvws

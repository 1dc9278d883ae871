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

#include <memory>
#include <optional>

#include "tvws/paws_client.hpp"
#include "tvws/scenario.hpp"
#include "tvws/sensing.hpp"

namespace tvws {

/// Pluggable per-channel verdict source: the trained feature classifier by
/// default, or a ground-truth oracle for attribution experiments.
class ChannelSensor {
  public:
    virtual ~ChannelSensor() = default;
    /// Whether the harness must synthesize IQ for this sensor.
    virtual bool needs_iq() const = 0;
    virtual SensingVerdict sense(ChannelId ch, const IqBuffer* buf, double now_s) = 0;
};

class ModelSensor final : public ChannelSensor {
  public:
    ModelSensor(ClassifierModel model, double theta_sense = kThetaSense)
        : model_(std::move(model)), theta_sense_(theta_sense) {}

    bool needs_iq() const override { return true; }
    SensingVerdict sense(ChannelId ch, const IqBuffer* buf, double now_s) override;

  private:
    ClassifierModel model_;
    double theta_sense_;
};

/// Reads scripted ground truth directly; confidence is always 1.
class OracleSensor final : public ChannelSensor {
  public:
    explicit OracleSensor(const GroundTruthOccupancy& truth) : truth_(&truth) {}

    bool needs_iq() const override { return false; }
    SensingVerdict sense(ChannelId ch, const IqBuffer* buf, double now_s) override;

  private:
    const GroundTruthOccupancy* truth_;
};

struct ScenarioReport {
    std::size_t epochs = 0;
    double availability = 0.0;
    std::size_t violations = 0;
    double sensing_accuracy = 0.0;
    std::size_t reconcile_compared = 0;
    std::size_t reconcile_confirmed = 0;
    std::optional<double> confirmation_rate;
    std::vector<Discrepancy> discrepancies;
    std::size_t mode_transitions = 0;
    std::size_t audit_entries = 0;
    double decision_latency_median_s = 0.0;
    double decision_latency_p95_s = 0.0;
};

struct RunOptions {
    std::shared_ptr<ChannelSensor> sensor; ///< default: feature classifier
                                           ///< trained from the script seed
    std::string audit_path;                ///< default: temp file, deleted after
    std::uint64_t audit_key_seed = 1;
    OccupancyPrior initial_prior;          ///< twin warm start
};

/// Discrete-time driver: one sensing sweep, one controller step and exactly
/// one gate decision per epoch; reconciliation runs at every successful
/// re-query after an outage. Deterministic for a fixed (script, seed).
ScenarioReport run_scenario(const ScenarioScript& script, const RunOptions& opts = {});

/// Among gate-admissible candidates: lowest prior occupancy, then highest
/// confidence, then lowest index. Empty input yields nullopt.
std::optional<ChannelId> select_channel(
    const std::vector<std::pair<ChannelId, SensingVerdict>>& candidates,
    const OccupancyPrior& prior);

enum class ReportFormat { Text, Structured };

/// Stable field order in both forms; timing is emitted only on request since
/// wall-clock latencies are not reproducible across runs.
std::string emit_report(const ScenarioReport& report, ReportFormat format,
                        bool include_timing = false);

/// Default model used when RunOptions.sensor is unset: trained on synthetic
/// features, deterministic in the seed.
ClassifierModel train_default_model(std::uint64_t seed, int examples_per_class = 120,
                                    double snr_db = 15.0);

/// Generates a labeled synthetic feature dataset (the trainer input).
std::vector<LabeledFeature> make_feature_dataset(int examples_per_class, double snr_db,
                                                 std::uint64_t seed,
                                                 double capture_duration_s = 0.004,
                                                 double sample_rate_hz =
                                                     kDefaultChannelSampleRateHz);

} // namespace tvws

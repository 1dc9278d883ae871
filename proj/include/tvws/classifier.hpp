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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tvws/features.hpp"
#include "tvws/spectrum.hpp"

namespace tvws {

struct LabeledFeature {
    FeatureVector features;
    SignalClass label = SignalClass::Vacant;
};

/// Multinomial logistic regression over standardized features. The class
/// list is ordered as encountered during training; posteriors are emitted
/// over that list and sum to 1 within 1e-6.
struct ClassifierModel {
    std::vector<SignalClass> classes;
    Eigen::VectorXd feature_mean;
    Eigen::VectorXd feature_scale;
    Eigen::MatrixXd weights; ///< classes x (features + 1), bias in column 0
    std::uint64_t training_seed = 0;
    std::string dataset_descriptor;

    Eigen::VectorXd posterior(const FeatureVector& features) const;
};

/// Trains with full-batch gradient descent plus momentum; stops when the
/// gradient norm drops below 1e-6 or after 500 epochs. Deterministic in
/// (dataset order, seed). Requires at least 25 examples for every class
/// present in the dataset, else throws InsufficientData.
ClassifierModel train_classifier(const std::vector<LabeledFeature>& dataset,
                                 std::uint64_t seed);

/// Argmax class and its posterior probability.
std::pair<SignalClass, double> classify(const ClassifierModel& model,
                                        const FeatureVector& features);

// Versioned binary model container, little-endian:
//   bytes 0..7  magic "TVWSMDL1"
//   u32         version (1)
//   u64         training seed
//   u32         class count, then per class u8 ordinal
//   u32         feature count
//   f64 * n     feature means
//   f64 * n     feature scales
//   f64 * c*(n+1) weights, row-major
//   u32 + bytes dataset descriptor
void save_model(const std::string& path, const ClassifierModel& model);
ClassifierModel load_model(const std::string& path);

} // namespace tvws

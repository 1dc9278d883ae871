// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "tvws/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "model container writer assumes a little-endian host");

namespace tvws {

namespace {

constexpr char kMagic[8] = {'T', 'V', 'W', 'S', 'M', 'D', 'L', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr int kMinExamplesPerClass = 25;
constexpr int kMaxEpochs = 500;
constexpr double kGradTolerance = 1e-6;

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
    Eigen::VectorXd z = logits.array() - logits.maxCoeff();
    Eigen::VectorXd e = z.array().exp();
    return e / e.sum();
}

} // namespace

Eigen::VectorXd ClassifierModel::posterior(const FeatureVector& features) const {
    const Eigen::Index dim = feature_mean.size();
    Eigen::VectorXd x(dim + 1);
    x[0] = 1.0;
    x.tail(dim) =
        (features.as_vector() - feature_mean).cwiseQuotient(feature_scale);
    return softmax(weights * x);
}

ClassifierModel train_classifier(const std::vector<LabeledFeature>& dataset,
                                 std::uint64_t seed) {
    // Class list ordered by first appearance; counts checked per present class.
    std::vector<SignalClass> classes;
    std::map<SignalClass, int> counts;
    for (const auto& ex : dataset) {
        if (counts[ex.label]++ == 0)
            classes.push_back(ex.label);
    }
    if (classes.empty())
        throw InsufficientData("empty training set");
    for (auto [cls, count] : counts) {
        if (count < kMinExamplesPerClass)
            throw InsufficientData("need at least 25 examples for class " + to_string(cls));
    }

    const Eigen::Index n = static_cast<Eigen::Index>(dataset.size());
    const Eigen::Index dim = FeatureVector::kDim;
    const Eigen::Index c = static_cast<Eigen::Index>(classes.size());

    Eigen::MatrixXd raw(n, dim);
    Eigen::VectorXi labels(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        raw.row(i) = dataset[static_cast<std::size_t>(i)].features.as_vector().transpose();
        const auto it = std::find(classes.begin(), classes.end(),
                                  dataset[static_cast<std::size_t>(i)].label);
        labels[i] = static_cast<int>(it - classes.begin());
    }

    ClassifierModel model;
    model.classes = classes;
    model.training_seed = seed;
    model.feature_mean = raw.colwise().mean();
    Eigen::VectorXd var =
        ((raw.rowwise() - model.feature_mean.transpose()).array().square().colwise().mean());
    model.feature_scale = var.array().sqrt().max(1e-9);

    // Design matrix with bias column.
    Eigen::MatrixXd x(n, dim + 1);
    x.col(0).setOnes();
    x.rightCols(dim) = (raw.rowwise() - model.feature_mean.transpose()).array().rowwise() /
                       model.feature_scale.transpose().array();

    Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, c);
    for (Eigen::Index i = 0; i < n; ++i)
        onehot(i, labels[i]) = 1.0;

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(c, dim + 1);
    Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(c, dim + 1);
    const double lr = 0.5;
    const double momentum = 0.9;
    const double l2 = 1e-4;

    for (int epoch = 0; epoch < kMaxEpochs; ++epoch) {
        Eigen::MatrixXd logits = x * w.transpose(); // n x c
        Eigen::MatrixXd probs(n, c);
        for (Eigen::Index i = 0; i < n; ++i)
            probs.row(i) = softmax(logits.row(i).transpose()).transpose();

        Eigen::MatrixXd grad = ((probs - onehot).transpose() * x) / static_cast<double>(n);
        grad += l2 * w;
        if (grad.norm() < kGradTolerance)
            break;
        velocity = momentum * velocity - lr * grad;
        w += velocity;
    }

    model.weights = w;
    return model;
}

std::pair<SignalClass, double> classify(const ClassifierModel& model,
                                        const FeatureVector& features) {
    const Eigen::VectorXd p = model.posterior(features);
    Eigen::Index best = 0;
    p.maxCoeff(&best);
    return {model.classes[static_cast<std::size_t>(best)], p[best]};
}

namespace {

template <typename T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is, const char* what) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw IoError(std::string("truncated model file reading ") + what);
    return v;
}

} // namespace

void save_model(const std::string& path, const ClassifierModel& model) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot open for writing: " + path);
    os.write(kMagic, sizeof(kMagic));
    put(os, kVersion);
    put(os, model.training_seed);
    put(os, static_cast<std::uint32_t>(model.classes.size()));
    for (SignalClass cls : model.classes)
        put(os, static_cast<std::uint8_t>(cls));
    const auto dim = static_cast<std::uint32_t>(model.feature_mean.size());
    put(os, dim);
    for (Eigen::Index i = 0; i < model.feature_mean.size(); ++i)
        put(os, model.feature_mean[i]);
    for (Eigen::Index i = 0; i < model.feature_scale.size(); ++i)
        put(os, model.feature_scale[i]);
    for (Eigen::Index r = 0; r < model.weights.rows(); ++r)
        for (Eigen::Index col = 0; col < model.weights.cols(); ++col)
            put(os, model.weights(r, col));
    put(os, static_cast<std::uint32_t>(model.dataset_descriptor.size()));
    os.write(model.dataset_descriptor.data(),
             static_cast<std::streamsize>(model.dataset_descriptor.size()));
    if (!os)
        throw IoError("short write: " + path);
}

ClassifierModel load_model(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open for reading: " + path);
    char magic[8];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("not a model container: " + path);
    if (get<std::uint32_t>(is, "version") != kVersion)
        throw IoError("unsupported model version: " + path);

    ClassifierModel model;
    model.training_seed = get<std::uint64_t>(is, "seed");
    const auto n_classes = get<std::uint32_t>(is, "class count");
    if (n_classes == 0 || n_classes > kNumSignalClasses)
        throw IoError("bad class count: " + path);
    for (std::uint32_t i = 0; i < n_classes; ++i) {
        const auto ordinal = get<std::uint8_t>(is, "class");
        if (ordinal >= kNumSignalClasses)
            throw IoError("bad class ordinal: " + path);
        model.classes.push_back(static_cast<SignalClass>(ordinal));
    }
    const auto dim = get<std::uint32_t>(is, "feature count");
    if (dim == 0 || dim > 64)
        throw IoError("bad feature count: " + path);
    model.feature_mean.resize(dim);
    model.feature_scale.resize(dim);
    for (std::uint32_t i = 0; i < dim; ++i)
        model.feature_mean[i] = get<double>(is, "mean");
    for (std::uint32_t i = 0; i < dim; ++i)
        model.feature_scale[i] = get<double>(is, "scale");
    model.weights.resize(n_classes, dim + 1);
    for (std::uint32_t r = 0; r < n_classes; ++r)
        for (std::uint32_t col = 0; col < dim + 1; ++col)
            model.weights(r, col) = get<double>(is, "weights");
    const auto desc_len = get<std::uint32_t>(is, "descriptor length");
    model.dataset_descriptor.resize(desc_len);
    if (desc_len > 0 &&
        !is.read(model.dataset_descriptor.data(), static_cast<std::streamsize>(desc_len)))
        throw IoError("truncated model file reading descriptor: " + path);
    return model;
}

} // namespace tvws

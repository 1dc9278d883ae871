// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/iq_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "tvws/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "IQ container writer assumes a little-endian host");

namespace tvws {

namespace {

constexpr char kMagic[8] = {'T', 'V', 'W', 'S', 'I', 'Q', '1', '\n'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kUnlabeled = 0xFFFFFFFFu;

template <typename T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is, const char* what) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw IoError(std::string("truncated IQ file reading ") + what);
    return v;
}

} // namespace

void write_iq_file(const std::string& path, const IqBuffer& buf,
                   std::optional<SignalClass> label, std::optional<double> snr_db) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot open for writing: " + path);

    os.write(kMagic, sizeof(kMagic));
    put(os, kVersion);
    put(os, label ? static_cast<std::uint32_t>(*label) : kUnlabeled);
    put(os, buf.sample_rate_hz);
    put(os, buf.center_freq_hz);
    put(os, snr_db ? *snr_db : std::numeric_limits<double>::quiet_NaN());
    put(os, buf.capture_time_s);
    put(os, static_cast<std::uint64_t>(buf.samples.size()));
    for (Eigen::Index i = 0; i < buf.samples.size(); ++i) {
        put(os, buf.samples[i].real());
        put(os, buf.samples[i].imag());
    }
    if (!os)
        throw IoError("short write: " + path);
}

LabeledIq read_iq_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open for reading: " + path);

    char magic[8];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("not an IQ container: " + path);
    if (get<std::uint32_t>(is, "version") != kVersion)
        throw IoError("unsupported IQ container version: " + path);

    LabeledIq out;
    const auto label = get<std::uint32_t>(is, "label");
    if (label != kUnlabeled) {
        if (label >= kNumSignalClasses)
            throw IoError("bad class label in IQ container: " + path);
        out.label = static_cast<SignalClass>(label);
    }
    out.buffer.sample_rate_hz = get<double>(is, "sample rate");
    out.buffer.center_freq_hz = get<double>(is, "center frequency");
    const double snr = get<double>(is, "snr");
    if (std::isfinite(snr)) {
        out.snr_db = snr;
        out.has_snr = true;
    }
    out.buffer.capture_time_s = get<double>(is, "capture time");
    const auto count = get<std::uint64_t>(is, "sample count");
    if (count == 0)
        throw IoError("empty IQ container: " + path);

    out.buffer.samples.resize(static_cast<Eigen::Index>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        const float re = get<float>(is, "samples");
        const float im = get<float>(is, "samples");
        out.buffer.samples[static_cast<Eigen::Index>(i)] = std::complex<float>(re, im);
    }
    return out;
}

} // namespace tvws

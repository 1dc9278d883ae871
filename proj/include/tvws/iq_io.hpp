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

#include <optional>
#include <string>

#include "tvws/waveform.hpp"

namespace tvws {

// Labeled IQ container, little-endian throughout:
//   bytes 0..7   magic "TVWSIQ1\n"
//   u32          format version (1)
//   u32          class label ordinal, 0xFFFFFFFF when unlabeled
//   f64          sample_rate_hz
//   f64          center_freq_hz
//   f64          snr_db (NaN when unknown)
//   f64          capture_time_s
//   u64          sample count
//   payload      count * (f32 I, f32 Q)

struct LabeledIq {
    IqBuffer buffer;
    std::optional<SignalClass> label;
    double snr_db = 0.0;
    bool has_snr = false;
};

void write_iq_file(const std::string& path, const IqBuffer& buf,
                   std::optional<SignalClass> label = std::nullopt,
                   std::optional<double> snr_db = std::nullopt);

LabeledIq read_iq_file(const std::string& path);

} // namespace tvws

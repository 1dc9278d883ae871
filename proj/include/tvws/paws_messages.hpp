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

#include <cstdint>
#include <string>
#include <vector>

#include "tvws/spectrum.hpp"

namespace tvws::paws {

// Wire format: JSON-RPC 2.0 envelope over a plain request/response transport.
// Methods follow the whitespace-database verbs: "spectrum.paws.init" and
// "spectrum.paws.getSpectrum". Implemented subset: Init and AvailableSpectrum
// only; registration, spectrum-use notification and batch queries are
// deliberately omitted. Error code -201 (outside coverage / no ruleset)
// signals an unregistered jurisdiction.

constexpr double kDefaultEirpCapDbm = 36.0;
constexpr int kErrorNoRuleset = -201;

enum class Method { Init, GetSpectrum };

struct GeoLocation {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

struct PawsRequest {
    Method method = Method::Init;
    std::string device_id;
    GeoLocation location;
    double antenna_height_m = 0.0;
    std::uint64_t request_id = 0;
};

/// Time-bounded per-channel authorization. Valid over [granted_at, expires_at).
struct PawsGrant {
    ChannelId channel;
    double max_eirp_dbm = kDefaultEirpCapDbm;
    double granted_at_s = 0.0;
    double expires_at_s = 0.0;
    std::string ruleset_id;
};

struct PawsResponse {
    Method method = Method::Init;
    std::uint64_t request_id = 0;
    bool ok = false;
    int error_code = 0;
    std::string error_message;
    std::string ruleset_id;        // Init
    std::vector<PawsGrant> grants; // GetSpectrum
};

/// Encoders produce canonical bytes (stable key order); golden vectors in the
/// test suite pin the exact serialization.
std::string encode_request(const PawsRequest& req);
PawsRequest decode_request(const std::string& body);
std::string encode_response(const PawsResponse& resp);
PawsResponse decode_response(const std::string& body);

/// true iff the grant covers ch and now lies in [granted_at, expires_at).
bool grant_valid(const PawsGrant& grant, double now_s, ChannelId ch);

} // namespace tvws::paws

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
#include <string>
#include <vector>

#include "tvws/paws_messages.hpp"
#include "tvws/wsdb_server.hpp"

namespace tvws::paws {

enum class UnavailableCause { Timeout, ConnectionRefused, NullRuleset };

std::string to_string(UnavailableCause cause);

/// Outcome of a spectrum query. Unavailability is a value, not an error:
/// it is the disaster-critical path the compliance gate handles.
struct SpectrumResult {
    bool ok = false;
    UnavailableCause cause = UnavailableCause::Timeout;
    std::vector<PawsGrant> grants;
};

struct TransportReply {
    enum class Status { Ok, Timeout, ConnectionRefused };
    Status status = Status::ConnectionRefused;
    std::string body;
};

/// Request/response transport abstraction: HTTP for deployments and tests,
/// in-process for deterministic simulation.
class PawsTransport {
  public:
    virtual ~PawsTransport() = default;
    virtual TransportReply post(const std::string& body, double deadline_s) = 0;
};

std::shared_ptr<PawsTransport> make_http_transport(const std::string& host, int port);

/// Direct binding against a WsdbService. Outages and injected latency are
/// evaluated against the client deadline without sleeping, which keeps
/// scenario runs deterministic.
std::shared_ptr<PawsTransport> make_inprocess_transport(std::shared_ptr<WsdbService> service,
                                                        std::function<double()> now_fn);

struct ClientConfig {
    std::string device_id = "tvws-node-0";
    double antenna_height_m = 5.0;
    double deadline_s = 1.0;
};

/// Session-scoped client; request ids increase strictly within the session.
/// No automatic retries: the compliance gate owns the retry/reconcile loop.
class PawsClient {
  public:
    PawsClient(std::shared_ptr<PawsTransport> transport, ClientConfig config);

    /// Init exchange; must succeed before query_spectrum.
    SpectrumResult init(const GeoLocation& location);

    /// AvailableSpectrum query. Grants are validated against the plan; a
    /// grant for an out-of-plan channel is a ProtocolError.
    SpectrumResult query_spectrum(const GeoLocation& location, const ChannelPlan& plan);

    bool initialized() const { return initialized_; }
    std::uint64_t last_request_id() const { return next_request_id_ - 1; }

  private:
    SpectrumResult roundtrip(const PawsRequest& req);

    std::shared_ptr<PawsTransport> transport_;
    ClientConfig config_;
    std::uint64_t next_request_id_ = 1;
    bool initialized_ = false;
};

} // namespace tvws::paws

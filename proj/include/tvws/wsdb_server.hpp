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

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include "tvws/paws_messages.hpp"

namespace tvws::paws {

/// Mutable mock-database state. Mutations go through WsdbService so they are
/// serialized behind one writer lock.
struct WsdbState {
    std::set<std::uint32_t> available_channels;
    /// Channels present in the database but reserved for incumbent wireless
    /// microphones; never granted, listed separately for reconciliation
    /// scenarios.
    std::set<std::uint32_t> mic_reserved_channels;
    std::string ruleset_id = "tvws-artifact-ruleset-1";
    bool outage = false;
    double injected_latency_s = 0.0;
    bool null_ruleset = false;
    double grant_lifetime_s = 12.0 * 3600.0;
    double max_eirp_dbm = kDefaultEirpCapDbm;
    /// How long an HTTP handler stalls before failing a request during an
    /// outage; clients with shorter deadlines observe a timeout.
    double outage_hold_s = 0.05;
};

/// Transport-independent mock whitespace database: answers decoded requests
/// and exposes the fault-injection admin surface as in-process calls.
class WsdbService {
  public:
    explicit WsdbService(WsdbState initial = {});

    PawsResponse handle(const PawsRequest& req, double now_s);

    void set_outage(bool outage);
    void set_injected_latency(double seconds);
    void set_availability(ChannelId ch, bool available);
    void set_mic_reserved(ChannelId ch, bool reserved);
    void set_null_ruleset(bool enabled);
    void set_grant_lifetime(double seconds);

    WsdbState state() const;

  private:
    mutable std::mutex mutex_;
    WsdbState state_;
};

/// HTTP front end for the mock database. PAWS requests POST to /paws; fault
/// injection POSTs to /admin/outage, /admin/latency, /admin/availability and
/// /admin/null-ruleset. Throws BindFailure when the endpoint is taken.
class WsdbHttpServer {
  public:
    WsdbHttpServer(std::shared_ptr<WsdbService> service, std::string host, int port);
    ~WsdbHttpServer();

    void start();
    void stop();
    int port() const { return port_; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::shared_ptr<WsdbService> service_;
    std::string host_;
    int port_;
};

} // namespace tvws::paws

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
#include <vector>

#include "tvws/audit_log.hpp"
#include "tvws/paws_messages.hpp"
#include "tvws/sensing.hpp"

namespace tvws {

/// Pre-cleared, time-bounded permission to transmit on sensing evidence when
/// the database is unreachable. Activation is an explicit operator/scenario
/// event; the gate never self-activates a waiver.
struct EmergencyWaiver {
    std::string waiver_id;
    double activated_at_s = 0.0;
    double max_duration_s = 0.0;
    double min_confidence = kThetaSense;
    double max_eirp_dbm = paws::kDefaultEirpCapDbm;

    /// Half-open activity window: closed at activation, open at expiry.
    bool active_at(double now_s) const {
        return now_s >= activated_at_s && now_s < activated_at_s + max_duration_s;
    }
};

struct ComplianceDecision {
    ChannelId channel;
    bool allowed = false;
    DecisionBasis basis = DecisionBasis::Denied;
    std::optional<double> eirp_cap_dbm;
    std::optional<double> sensing_confidence;
    double decided_at_s = 0.0;
};

/// Side inputs attached to the audit record.
struct GateContext {
    paws::GeoLocation gps;
    std::optional<double> prior_occupancy;
};

/// Decision precedence, in order:
///   1. a valid grant for the channel allows transmission at the grant cap
///      (database governance wins even over an occupied-looking verdict,
///      which is flagged on the record instead);
///   2. else an active waiver plus a vacant verdict at or above the waiver's
///      confidence floor allows transmission at the waiver cap;
///   3. else denied. Denial is a value, not an error.
/// Pure; no audit side effects.
ComplianceDecision evaluate_decision(ChannelId ch, double now_s,
                                     const std::vector<paws::PawsGrant>& grants,
                                     const std::optional<EmergencyWaiver>& waiver,
                                     const std::optional<SensingVerdict>& verdict);

/// The policy engine: evaluate_decision plus exactly one audit record per call.
class ComplianceGate {
  public:
    explicit ComplianceGate(AuditLog& log) : log_(log) {}

    ComplianceDecision decide(ChannelId ch, double now_s,
                              const std::vector<paws::PawsGrant>& grants,
                              const std::optional<EmergencyWaiver>& waiver,
                              const std::optional<SensingVerdict>& verdict,
                              const GateContext& ctx = {});

    std::size_t decisions_made() const { return decisions_; }

  private:
    AuditLog& log_;
    std::size_t decisions_ = 0;
};

enum class DbClaim : std::uint8_t { Granted, Reserved };

struct Discrepancy {
    ChannelId channel;
    SignalClass sensing_said = SignalClass::Vacant;
    DbClaim db_said = DbClaim::Reserved;
};

struct ReconciliationReport {
    std::size_t compared = 0;
    std::size_t confirmed = 0;
    std::vector<Discrepancy> discrepancies;
    /// confirmed/compared; absent when nothing was compared.
    std::optional<double> confirmation_rate;
};

/// Post-outage check: every waiver-based transmission decision is confirmed
/// iff its channel appears in the freshly obtained grants.
ReconciliationReport reconcile(const std::vector<ComplianceDecision>& prior_decisions,
                               const std::vector<paws::PawsGrant>& fresh_grants);

} // namespace tvws

// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/compliance_gate.hpp"

#include <algorithm>

namespace tvws {

ComplianceDecision evaluate_decision(ChannelId ch, double now_s,
                                     const std::vector<paws::PawsGrant>& grants,
                                     const std::optional<EmergencyWaiver>& waiver,
                                     const std::optional<SensingVerdict>& verdict) {
    ComplianceDecision d;
    d.channel = ch;
    d.decided_at_s = now_s;
    if (verdict)
        d.sensing_confidence = verdict->confidence;

    for (const auto& g : grants) {
        if (paws::grant_valid(g, now_s, ch)) {
            d.allowed = true;
            d.basis = DecisionBasis::ValidGrant;
            d.eirp_cap_dbm = g.max_eirp_dbm;
            return d;
        }
    }

    if (waiver && waiver->active_at(now_s) && verdict &&
        verdict->cls == SignalClass::Vacant && verdict->confidence >= waiver->min_confidence) {
        d.allowed = true;
        d.basis = DecisionBasis::WaiverSensing;
        d.eirp_cap_dbm = waiver->max_eirp_dbm;
        return d;
    }

    d.allowed = false;
    d.basis = DecisionBasis::Denied;
    return d;
}

namespace {

GrantStatus grant_status_for(ChannelId ch, double now_s,
                             const std::vector<paws::PawsGrant>& grants,
                             const std::optional<EmergencyWaiver>& waiver,
                             const ComplianceDecision& d) {
    if (d.basis == DecisionBasis::ValidGrant)
        return GrantStatus::Valid;
    if (d.basis == DecisionBasis::WaiverSensing)
        return GrantStatus::WaiverActive;
    const bool had_grant = std::any_of(grants.begin(), grants.end(),
                                       [&](const auto& g) { return g.channel == ch; });
    if (had_grant)
        return GrantStatus::Expired;
    if (waiver && waiver->active_at(now_s))
        return GrantStatus::WaiverActive;
    return GrantStatus::None;
}

} // namespace

ComplianceDecision ComplianceGate::decide(ChannelId ch, double now_s,
                                          const std::vector<paws::PawsGrant>& grants,
                                          const std::optional<EmergencyWaiver>& waiver,
                                          const std::optional<SensingVerdict>& verdict,
                                          const GateContext& ctx) {
    const ComplianceDecision d = evaluate_decision(ch, now_s, grants, waiver, verdict);

    AuditRecord record;
    record.timestamp_s = now_s;
    record.lat_deg = ctx.gps.lat_deg;
    record.lon_deg = ctx.gps.lon_deg;
    record.channel = ch;
    record.eirp_dbm = d.eirp_cap_dbm;
    record.grant_status = grant_status_for(ch, now_s, grants, waiver, d);
    record.sensing_confidence = d.sensing_confidence;
    record.basis = d.basis;
    // A valid grant overrides an occupied-looking verdict; flag the conflict
    // for post-event review rather than vetoing the grant.
    record.sensing_conflict =
        d.basis == DecisionBasis::ValidGrant && verdict && verdict->occupied;
    record.prior_occupancy = ctx.prior_occupancy;
    log_.append(record);
    ++decisions_;
    return d;
}

ReconciliationReport reconcile(const std::vector<ComplianceDecision>& prior_decisions,
                               const std::vector<paws::PawsGrant>& fresh_grants) {
    ReconciliationReport report;
    for (const auto& d : prior_decisions) {
        if (!(d.allowed && d.basis == DecisionBasis::WaiverSensing))
            continue;
        ++report.compared;
        const bool granted =
            std::any_of(fresh_grants.begin(), fresh_grants.end(),
                        [&](const auto& g) { return g.channel == d.channel; });
        if (granted) {
            ++report.confirmed;
        } else {
            // Waiver decisions rest on a vacant verdict; the database claims
            // the channel is reserved.
            report.discrepancies.push_back(
                Discrepancy{d.channel, SignalClass::Vacant, DbClaim::Reserved});
        }
    }
    if (report.compared > 0)
        report.confirmation_rate =
            static_cast<double>(report.confirmed) / static_cast<double>(report.compared);
    return report;
}

} // namespace tvws

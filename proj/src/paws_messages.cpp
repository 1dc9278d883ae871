// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/paws_messages.hpp"

#include <json.hpp>

#include "tvws/errors.hpp"

namespace tvws::paws {

namespace {

using nlohmann::json;

const char* method_name(Method m) {
    return m == Method::Init ? "spectrum.paws.init" : "spectrum.paws.getSpectrum";
}

Method method_from_name(const std::string& name) {
    if (name == "spectrum.paws.init")
        return Method::Init;
    if (name == "spectrum.paws.getSpectrum")
        return Method::GetSpectrum;
    throw ProtocolError("unknown method: " + name);
}

void check_location(const GeoLocation& loc) {
    if (!(loc.lat_deg >= -90.0 && loc.lat_deg <= 90.0))
        throw ProtocolError("latitude out of range");
    if (!(loc.lon_deg >= -180.0 && loc.lon_deg <= 180.0))
        throw ProtocolError("longitude out of range");
}

json parse(const std::string& body) {
    auto j = json::parse(body, nullptr, false);
    if (j.is_discarded())
        throw ProtocolError("malformed JSON");
    return j;
}

} // namespace

std::string encode_request(const PawsRequest& req) {
    check_location(req.location);
    json params = {
        {"antenna", {{"height", req.antenna_height_m}}},
        {"deviceDesc", {{"serialNumber", req.device_id}}},
        {"location",
         {{"point",
           {{"center",
             {{"latitude", req.location.lat_deg}, {"longitude", req.location.lon_deg}}}}}}},
    };
    json j = {
        {"id", req.request_id},
        {"jsonrpc", "2.0"},
        {"method", method_name(req.method)},
        {"params", params},
    };
    return j.dump();
}

PawsRequest decode_request(const std::string& body) {
    const json j = parse(body);
    try {
        if (j.at("jsonrpc").get<std::string>() != "2.0")
            throw ProtocolError("unsupported envelope version");
        PawsRequest req;
        req.method = method_from_name(j.at("method").get<std::string>());
        req.request_id = j.at("id").get<std::uint64_t>();
        const auto& params = j.at("params");
        req.device_id = params.at("deviceDesc").at("serialNumber").get<std::string>();
        req.antenna_height_m = params.at("antenna").at("height").get<double>();
        const auto& center = params.at("location").at("point").at("center");
        req.location.lat_deg = center.at("latitude").get<double>();
        req.location.lon_deg = center.at("longitude").get<double>();
        check_location(req.location);
        return req;
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("malformed request: ") + e.what());
    }
}

std::string encode_response(const PawsResponse& resp) {
    json j;
    j["id"] = resp.request_id;
    j["jsonrpc"] = "2.0";
    if (!resp.ok) {
        j["error"] = {{"code", resp.error_code}, {"message", resp.error_message}};
        return j.dump();
    }
    json result;
    result["type"] = resp.method == Method::Init ? "INIT_RESP" : "AVAIL_SPECTRUM_RESP";
    result["rulesetId"] = resp.ruleset_id;
    if (resp.method == Method::GetSpectrum) {
        json grants = json::array();
        for (const auto& g : resp.grants) {
            grants.push_back({
                {"channel", g.channel.index},
                {"expiresAt", g.expires_at_s},
                {"grantedAt", g.granted_at_s},
                {"maxEirpDbm", g.max_eirp_dbm},
                {"rulesetId", g.ruleset_id},
            });
        }
        result["grants"] = grants;
    }
    j["result"] = result;
    return j.dump();
}

PawsResponse decode_response(const std::string& body) {
    const json j = parse(body);
    try {
        PawsResponse resp;
        resp.request_id = j.at("id").get<std::uint64_t>();
        if (j.contains("error")) {
            resp.ok = false;
            resp.error_code = j.at("error").at("code").get<int>();
            resp.error_message = j.at("error").at("message").get<std::string>();
            return resp;
        }
        const auto& result = j.at("result");
        resp.ok = true;
        resp.method = result.at("type").get<std::string>() == "INIT_RESP" ? Method::Init
                                                                          : Method::GetSpectrum;
        resp.ruleset_id = result.at("rulesetId").get<std::string>();
        if (result.contains("grants")) {
            for (const auto& g : result.at("grants")) {
                PawsGrant grant;
                grant.channel = ChannelId{g.at("channel").get<std::uint32_t>()};
                grant.max_eirp_dbm = g.at("maxEirpDbm").get<double>();
                grant.granted_at_s = g.at("grantedAt").get<double>();
                grant.expires_at_s = g.at("expiresAt").get<double>();
                grant.ruleset_id = g.at("rulesetId").get<std::string>();
                if (!(grant.expires_at_s > grant.granted_at_s))
                    throw ProtocolError("grant expiry precedes grant time");
                resp.grants.push_back(std::move(grant));
            }
        }
        return resp;
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("malformed response: ") + e.what());
    }
}

bool grant_valid(const PawsGrant& grant, double now_s, ChannelId ch) {
    return grant.channel == ch && now_s >= grant.granted_at_s && now_s < grant.expires_at_s;
}

} // namespace tvws::paws

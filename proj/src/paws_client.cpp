// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/paws_client.hpp"

#include <cmath>

#include <httplib.h>

#include "tvws/errors.hpp"

namespace tvws::paws {

std::string to_string(UnavailableCause cause) {
    switch (cause) {
    case UnavailableCause::Timeout: return "Timeout";
    case UnavailableCause::ConnectionRefused: return "ConnectionRefused";
    case UnavailableCause::NullRuleset: return "NullRuleset";
    }
    return "Unknown";
}

namespace {

class HttpTransport final : public PawsTransport {
  public:
    HttpTransport(std::string host, int port) : host_(std::move(host)), port_(port) {}

    TransportReply post(const std::string& body, double deadline_s) override {
        httplib::Client cli(host_, port_);
        const auto usec = static_cast<time_t>(deadline_s * 1e6);
        cli.set_connection_timeout(0, usec);
        cli.set_read_timeout(0, usec);
        cli.set_write_timeout(0, usec);

        auto res = cli.Post("/paws", body, "application/json");
        TransportReply reply;
        if (!res) {
            reply.status = res.error() == httplib::Error::Read ||
                                   res.error() == httplib::Error::Write ||
                                   res.error() == httplib::Error::ConnectionTimeout
                               ? TransportReply::Status::Timeout
                               : TransportReply::Status::ConnectionRefused;
            return reply;
        }
        if (res->status != 200) {
            reply.status = TransportReply::Status::ConnectionRefused;
            return reply;
        }
        reply.status = TransportReply::Status::Ok;
        reply.body = res->body;
        return reply;
    }

  private:
    std::string host_;
    int port_;
};

class InProcessTransport final : public PawsTransport {
  public:
    InProcessTransport(std::shared_ptr<WsdbService> service, std::function<double()> now_fn)
        : service_(std::move(service)), now_fn_(std::move(now_fn)) {}

    TransportReply post(const std::string& body, double deadline_s) override {
        const WsdbState st = service_->state();
        TransportReply reply;
        if (st.outage || st.injected_latency_s > deadline_s) {
            reply.status = TransportReply::Status::Timeout;
            return reply;
        }
        const PawsRequest req = decode_request(body);
        reply.status = TransportReply::Status::Ok;
        reply.body = encode_response(service_->handle(req, now_fn_()));
        return reply;
    }

  private:
    std::shared_ptr<WsdbService> service_;
    std::function<double()> now_fn_;
};

} // namespace

std::shared_ptr<PawsTransport> make_http_transport(const std::string& host, int port) {
    return std::make_shared<HttpTransport>(host, port);
}

std::shared_ptr<PawsTransport> make_inprocess_transport(std::shared_ptr<WsdbService> service,
                                                        std::function<double()> now_fn) {
    return std::make_shared<InProcessTransport>(std::move(service), std::move(now_fn));
}

PawsClient::PawsClient(std::shared_ptr<PawsTransport> transport, ClientConfig config)
    : transport_(std::move(transport)), config_(std::move(config)) {}

SpectrumResult PawsClient::roundtrip(const PawsRequest& req) {
    const TransportReply reply = transport_->post(encode_request(req), config_.deadline_s);
    SpectrumResult result;
    switch (reply.status) {
    case TransportReply::Status::Timeout:
        result.cause = UnavailableCause::Timeout;
        return result;
    case TransportReply::Status::ConnectionRefused:
        result.cause = UnavailableCause::ConnectionRefused;
        return result;
    case TransportReply::Status::Ok:
        break;
    }
    const PawsResponse resp = decode_response(reply.body);
    if (resp.request_id != req.request_id)
        throw ProtocolError("response id does not match request");
    if (!resp.ok) {
        if (resp.error_code == kErrorNoRuleset) {
            result.cause = UnavailableCause::NullRuleset;
            return result;
        }
        throw ProtocolError("database error " + std::to_string(resp.error_code) + ": " +
                            resp.error_message);
    }
    result.ok = true;
    result.grants = resp.grants;
    return result;
}

SpectrumResult PawsClient::init(const GeoLocation& location) {
    PawsRequest req;
    req.method = Method::Init;
    req.device_id = config_.device_id;
    req.location = location;
    req.antenna_height_m = config_.antenna_height_m;
    req.request_id = next_request_id_++;
    SpectrumResult result = roundtrip(req);
    initialized_ = result.ok;
    return result;
}

SpectrumResult PawsClient::query_spectrum(const GeoLocation& location, const ChannelPlan& plan) {
    if (!initialized_)
        throw ProtocolError("client not initialized: Init exchange required first");
    PawsRequest req;
    req.method = Method::GetSpectrum;
    req.device_id = config_.device_id;
    req.location = location;
    req.antenna_height_m = config_.antenna_height_m;
    req.request_id = next_request_id_++;
    SpectrumResult result = roundtrip(req);
    for (const auto& g : result.grants) {
        if (!plan.contains(g.channel))
            throw ProtocolError("grant for channel outside the plan");
        if (g.max_eirp_dbm > kDefaultEirpCapDbm + 1e-9)
            throw ProtocolError("grant exceeds the EIRP cap");
    }
    return result;
}

} // namespace tvws::paws

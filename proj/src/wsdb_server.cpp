// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/wsdb_server.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "tvws/errors.hpp"

namespace tvws::paws {

WsdbService::WsdbService(WsdbState initial) : state_(std::move(initial)) {}

PawsResponse WsdbService::handle(const PawsRequest& req, double now_s) {
    std::lock_guard lock(mutex_);
    PawsResponse resp;
    resp.method = req.method;
    resp.request_id = req.request_id;

    if (req.method == Method::Init) {
        resp.ok = true;
        resp.ruleset_id = state_.null_ruleset ? "" : state_.ruleset_id;
        return resp;
    }

    if (state_.null_ruleset) {
        resp.ok = false;
        resp.error_code = kErrorNoRuleset;
        resp.error_message = "no registered ruleset for this jurisdiction";
        return resp;
    }

    resp.ok = true;
    resp.ruleset_id = state_.ruleset_id;
    for (std::uint32_t index : state_.available_channels) {
        if (state_.mic_reserved_channels.count(index))
            continue;
        PawsGrant g;
        g.channel = ChannelId{index};
        g.max_eirp_dbm = state_.max_eirp_dbm;
        g.granted_at_s = now_s;
        g.expires_at_s = now_s + state_.grant_lifetime_s;
        g.ruleset_id = state_.ruleset_id;
        resp.grants.push_back(std::move(g));
    }
    return resp;
}

void WsdbService::set_outage(bool outage) {
    std::lock_guard lock(mutex_);
    state_.outage = outage;
}

void WsdbService::set_injected_latency(double seconds) {
    std::lock_guard lock(mutex_);
    state_.injected_latency_s = seconds;
}

void WsdbService::set_availability(ChannelId ch, bool available) {
    std::lock_guard lock(mutex_);
    if (available)
        state_.available_channels.insert(ch.index);
    else
        state_.available_channels.erase(ch.index);
}

void WsdbService::set_mic_reserved(ChannelId ch, bool reserved) {
    std::lock_guard lock(mutex_);
    if (reserved)
        state_.mic_reserved_channels.insert(ch.index);
    else
        state_.mic_reserved_channels.erase(ch.index);
}

void WsdbService::set_null_ruleset(bool enabled) {
    std::lock_guard lock(mutex_);
    state_.null_ruleset = enabled;
}

void WsdbService::set_grant_lifetime(double seconds) {
    std::lock_guard lock(mutex_);
    state_.grant_lifetime_s = seconds;
}

WsdbState WsdbService::state() const {
    std::lock_guard lock(mutex_);
    return state_;
}

struct WsdbHttpServer::Impl {
    httplib::Server server;
    std::thread worker;
};

namespace {

double wall_clock_s() {
    return std::chrono::duration<double>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

} // namespace

WsdbHttpServer::WsdbHttpServer(std::shared_ptr<WsdbService> service, std::string host, int port)
    : impl_(std::make_unique<Impl>()), service_(std::move(service)), host_(std::move(host)),
      port_(port) {
    auto& svr = impl_->server;

    // SO_REUSEADDR only; the default SO_REUSEPORT would let a second server
    // silently share the endpoint instead of failing to bind.
    svr.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes),
                   sizeof(yes));
    });

    svr.Post("/paws", [this](const httplib::Request& req, httplib::Response& res) {
        const WsdbState st = service_->state();
        if (st.injected_latency_s > 0.0)
            std::this_thread::sleep_for(std::chrono::duration<double>(st.injected_latency_s));
        if (st.outage) {
            // Stall, then fail; a client with a shorter deadline times out.
            std::this_thread::sleep_for(std::chrono::duration<double>(st.outage_hold_s));
            res.status = 503;
            return;
        }
        try {
            const PawsRequest parsed = decode_request(req.body);
            res.set_content(encode_response(service_->handle(parsed, wall_clock_s())),
                            "application/json");
        } catch (const ProtocolError& e) {
            res.status = 400;
            res.set_content(e.what(), "text/plain");
        }
    });

    svr.Post("/admin/outage", [this](const httplib::Request& req, httplib::Response& res) {
        const auto j = nlohmann::json::parse(req.body);
        service_->set_outage(j.at("outage").get<bool>());
        res.set_content("{\"ok\":true}", "application/json");
    });
    svr.Post("/admin/latency", [this](const httplib::Request& req, httplib::Response& res) {
        const auto j = nlohmann::json::parse(req.body);
        service_->set_injected_latency(j.at("seconds").get<double>());
        res.set_content("{\"ok\":true}", "application/json");
    });
    svr.Post("/admin/availability", [this](const httplib::Request& req, httplib::Response& res) {
        const auto j = nlohmann::json::parse(req.body);
        service_->set_availability(ChannelId{j.at("channel").get<std::uint32_t>()},
                                   j.at("available").get<bool>());
        res.set_content("{\"ok\":true}", "application/json");
    });
    svr.Post("/admin/null-ruleset", [this](const httplib::Request& req, httplib::Response& res) {
        const auto j = nlohmann::json::parse(req.body);
        service_->set_null_ruleset(j.at("enabled").get<bool>());
        res.set_content("{\"ok\":true}", "application/json");
    });
}

WsdbHttpServer::~WsdbHttpServer() {
    stop();
}

void WsdbHttpServer::start() {
    auto& svr = impl_->server;
    if (port_ == 0) {
        port_ = svr.bind_to_any_port(host_);
        if (port_ <= 0)
            throw BindFailure("cannot bind " + host_);
    } else if (!svr.bind_to_port(host_, port_)) {
        throw BindFailure("cannot bind " + host_ + ":" + std::to_string(port_));
    }
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    svr.wait_until_ready();
}

void WsdbHttpServer::stop() {
    if (impl_->worker.joinable()) {
        impl_->server.stop();
        impl_->worker.join();
    }
}

} // namespace tvws::paws

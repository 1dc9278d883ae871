// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "tvws/errors.hpp"
#include "tvws/mode_controller.hpp"
#include "tvws/rng.hpp"

using namespace tvws;

namespace {

KpmSample sample_at(double t, double mbps, double gpu = 0.3, double thermal = 25.0,
                    double bler = 0.01) {
    KpmSample s;
    s.t_s = t;
    s.ul_throughput_mbps = mbps;
    s.prb_utilization = 0.5;
    s.cqi = 11;
    s.bler = bler;
    s.gpu_utilization = gpu;
    s.thermal_headroom_c = thermal;
    return s;
}

bool has_directive(const std::vector<Directive>& ds, Directive::Kind kind) {
    return std::any_of(ds.begin(), ds.end(),
                       [&](const Directive& d) { return d.kind == kind; });
}

/// What a consumer holds after applying directives; used for idempotence.
struct ConsumerState {
    EncoderProfile encoder = EncoderProfile::P1080p30;
    bool sr_enabled = false;

    void apply(const std::vector<Directive>& ds) {
        for (const auto& d : ds) {
            switch (d.kind) {
            case Directive::Kind::SetEncoder: encoder = d.encoder; break;
            case Directive::Kind::EnableSr: sr_enabled = true; break;
            case Directive::Kind::DisableSr: sr_enabled = false; break;
            }
        }
    }

    friend bool operator==(const ConsumerState&, const ConsumerState&) = default;
};

} // namespace

TEST_SUITE("mode") {

TEST_CASE("steady throughput above the degrade threshold never transitions") {
    const HysteresisPolicy policy;
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        ModeState state;
        state.entered_at_s = 0.0;
        std::vector<KpmSample> window;
        double now = 0.0;
        for (int i = 0; i < 200; ++i) {
            now += 1.0;
            window.push_back(sample_at(now, 20.0 + rng.uniform(-1.0, 1.0)));
            auto [next, directives] = step(state, policy, window, now);
            CHECK(next.mode == VideoMode::NativeHd);
            CHECK(directives.empty());
            state = next;
        }
    }
}

TEST_CASE("a sustained drop degrades with encoder and SR directives") {
    const HysteresisPolicy policy;
    ModeState state;
    state.entered_at_s = 0.0;
    std::vector<KpmSample> window;
    double now = 0.0;
    bool transitioned = false;
    for (int i = 0; i < 60 && !transitioned; ++i) {
        now += 1.0;
        window.push_back(sample_at(now, 1.0));
        auto [next, directives] = step(state, policy, window, now);
        if (next.mode == VideoMode::Degraded) {
            transitioned = true;
            CHECK(has_directive(directives, Directive::Kind::SetEncoder));
            CHECK(has_directive(directives, Directive::Kind::EnableSr));
            const auto enc = std::find_if(directives.begin(), directives.end(),
                                          [](const Directive& d) {
                                              return d.kind == Directive::Kind::SetEncoder;
                                          });
            CHECK(enc->encoder == EncoderProfile::P480p15);
            // Sustain plus dwell bounds the earliest possible transition.
            CHECK(now >= policy.degrade_sustain_s);
        }
        state = next;
    }
    CHECK(transitioned);
}

TEST_CASE("square-wave input flaps at most once per dwell period") {
    HysteresisPolicy policy;
    policy.min_dwell_s = 10.0;
    policy.degrade_sustain_s = 1.0;
    policy.restore_sustain_s = 1.0;

    ModeState state;
    state.entered_at_s = 0.0;
    std::vector<KpmSample> window;
    std::vector<double> transition_times;
    // 1 Hz square wave across both thresholds (1 and 20 Mbps, 0.5 s phases).
    for (double now = 0.5; now <= 300.0; now += 0.5) {
        const double mbps = std::fmod(now, 1.0) < 0.5 ? 1.0 : 20.0;
        window.push_back(sample_at(now, mbps));
        if (window.size() > 64)
            window.erase(window.begin());
        auto [next, directives] = step(state, policy, window, now);
        if (next.mode != state.mode)
            transition_times.push_back(now);
        state = next;
    }
    for (std::size_t i = 1; i < transition_times.size(); ++i)
        CHECK(transition_times[i] - transition_times[i - 1] >= policy.min_dwell_s);
}

TEST_CASE("no flapping on random traces: dwell always respected") {
    const HysteresisPolicy policy;
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        ModeState state;
        state.entered_at_s = 0.0;
        std::vector<KpmSample> window;
        std::vector<double> transitions;
        double now = 0.0;
        for (int i = 0; i < 1000; ++i) {
            now += 1.0;
            window.push_back(sample_at(now, rng.uniform(0.0, 12.0), rng.uniform(),
                                       rng.uniform(0.0, 40.0), rng.uniform(0.0, 0.2)));
            if (window.size() > 64)
                window.erase(window.begin());
            auto [next, directives] = step(state, policy, window, now);
            if (next.mode != state.mode)
                transitions.push_back(now);
            state = next;
        }
        for (std::size_t i = 1; i < transitions.size(); ++i)
            CHECK(transitions[i] - transitions[i - 1] >= policy.min_dwell_s);
    }
}

TEST_CASE("hovering between the thresholds causes zero transitions") {
    const HysteresisPolicy policy; // degrade 3, restore 6
    Rng rng(5);
    for (VideoMode start : {VideoMode::NativeHd, VideoMode::Degraded}) {
        ModeState state;
        state.mode = start;
        state.entered_at_s = 0.0;
        std::vector<KpmSample> window;
        double now = 0.0;
        for (int i = 0; i < 300; ++i) {
            now += 1.0;
            window.push_back(sample_at(now, rng.uniform(3.01, 5.99)));
            if (window.size() > 64)
                window.erase(window.begin());
            auto [next, directives] = step(state, policy, window, now);
            CHECK(next.mode == start);
            state = next;
        }
    }
}

TEST_CASE("SR never enables while the GPU guard fails in the trigger window") {
    HysteresisPolicy policy;
    ModeState state;
    state.entered_at_s = 0.0;
    std::vector<KpmSample> window;
    double now = 0.0;
    for (int i = 0; i < 30; ++i) {
        now += 1.0;
        window.push_back(sample_at(now, 1.0, /*gpu=*/0.95));
        auto [next, directives] = step(state, policy, window, now);
        CHECK_FALSE(has_directive(directives, Directive::Kind::EnableSr));
        if (next.mode == VideoMode::Degraded) {
            // Degradation itself still happens; only SR stays off.
            CHECK(has_directive(directives, Directive::Kind::SetEncoder));
            break;
        }
        state = next;
    }
}

TEST_CASE("restore requires throughput, dwell and platform guards") {
    HysteresisPolicy policy;
    ModeState state;
    state.mode = VideoMode::Degraded;
    state.entered_at_s = 0.0;
    std::vector<KpmSample> window;
    double now = 0.0;

    // Hot GPU blocks restore despite good throughput.
    for (int i = 0; i < 40; ++i) {
        now += 1.0;
        window.push_back(sample_at(now, 20.0, /*gpu=*/0.95));
        auto [next, directives] = step(state, policy, window, now);
        CHECK(next.mode == VideoMode::Degraded);
        state = next;
    }
    // GPU cools; restore fires once sustain is met again.
    bool restored = false;
    std::vector<KpmSample> cool_window;
    for (int i = 0; i < 40 && !restored; ++i) {
        now += 1.0;
        cool_window.push_back(sample_at(now, 20.0, 0.2));
        auto [next, directives] = step(state, policy, cool_window, now);
        if (next.mode == VideoMode::NativeHd) {
            restored = true;
            CHECK(has_directive(directives, Directive::Kind::DisableSr));
        }
        state = next;
    }
    CHECK(restored);
}

TEST_CASE("BLER is a secondary degrade trigger") {
    const HysteresisPolicy policy;
    ModeState state;
    state.entered_at_s = 0.0;
    std::vector<KpmSample> window;
    double now = 0.0;
    bool degraded = false;
    for (int i = 0; i < 30 && !degraded; ++i) {
        now += 1.0;
        window.push_back(sample_at(now, 10.0, 0.3, 25.0, /*bler=*/0.25));
        auto [next, directives] = step(state, policy, window, now);
        degraded = next.mode == VideoMode::Degraded;
        state = next;
    }
    CHECK(degraded);
}

TEST_CASE("step is deterministic") {
    const HysteresisPolicy policy;
    ModeState state;
    std::vector<KpmSample> window{sample_at(1.0, 1.0), sample_at(2.0, 1.0),
                                  sample_at(12.0, 1.0)};
    const auto a = step(state, policy, window, 12.0);
    const auto b = step(state, policy, window, 12.0);
    CHECK(a.first.mode == b.first.mode);
    CHECK(a.second == b.second);
}

TEST_CASE("idempotent directive re-emission") {
    ModeState hd;
    hd.mode = VideoMode::NativeHd;
    ModeState degraded;
    degraded.mode = VideoMode::Degraded;

    const auto hd_set = directives_idempotent(hd);
    REQUIRE(hd_set.size() == 2);
    CHECK(hd_set[0] == Directive{Directive::Kind::SetEncoder, EncoderProfile::P1080p30});
    CHECK(hd_set[1].kind == Directive::Kind::DisableSr);

    const auto deg_set = directives_idempotent(degraded);
    REQUIRE(deg_set.size() == 2);
    CHECK(deg_set[0] == Directive{Directive::Kind::SetEncoder, EncoderProfile::P480p15});
    CHECK(deg_set[1].kind == Directive::Kind::EnableSr);

    // Applying twice equals applying once.
    ConsumerState once, twice;
    once.apply(deg_set);
    twice.apply(deg_set);
    twice.apply(deg_set);
    CHECK(once == twice);
}

TEST_CASE("policy validation") {
    HysteresisPolicy bad;
    bad.restore_threshold_mbps = bad.degrade_threshold_mbps;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
    bad = HysteresisPolicy{};
    bad.min_dwell_s = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
}

} // TEST_SUITE

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

#include "tvws/digital_twin.hpp"
#include "tvws/rng.hpp"
#include "tvws/scenario.hpp"

using namespace tvws;

TEST_SUITE("twin") {

TEST_CASE("conjugate updates") {
    OccupancyPrior prior;
    CHECK(prior.occupancy_probability(ChannelId{0}) == doctest::Approx(0.5));

    prior.update(ChannelId{0}, true);
    const auto p = prior.params(ChannelId{0});
    CHECK(p.alpha == doctest::Approx(2.0));
    CHECK(p.beta == doctest::Approx(1.0));
    CHECK(prior.occupancy_probability(ChannelId{0}) == doctest::Approx(2.0 / 3.0));

    OccupancyPrior q;
    for (int i = 0; i < 99; ++i)
        q.update(ChannelId{1}, false);
    CHECK(q.occupancy_probability(ChannelId{1}) == doctest::Approx(1.0 / 101.0));
}

TEST_CASE("update order does not matter for equal observation multisets") {
    Rng rng(8);
    std::vector<bool> obs;
    for (int i = 0; i < 50; ++i)
        obs.push_back(rng.uniform() < 0.4);

    OccupancyPrior forward, backward;
    for (bool o : obs)
        forward.update(ChannelId{2}, o);
    for (auto it = obs.rbegin(); it != obs.rend(); ++it)
        backward.update(ChannelId{2}, *it);
    CHECK(forward.occupancy_probability(ChannelId{2}) ==
          doctest::Approx(backward.occupancy_probability(ChannelId{2})));
}

TEST_CASE("posterior mean converges at the conjugate rate") {
    for (int n : {1, 5, 20, 100, 1000}) {
        OccupancyPrior prior;
        for (int i = 0; i < n; ++i)
            prior.update(ChannelId{0}, true);
        const double mean = prior.occupancy_probability(ChannelId{0});
        CHECK(std::abs(mean - 1.0) <= 2.0 / (n + 2));
        CHECK(mean > 0.0);
        CHECK(mean < 1.0); // never exactly 0 or 1
    }
}

TEST_CASE("fixed prior ratios") {
    OccupancyPrior prior;
    prior.set_params(ChannelId{3}, {10.0, 1.0});
    CHECK(prior.occupancy_probability(ChannelId{3}) == doctest::Approx(10.0 / 11.0));
    prior.set_params(ChannelId{3}, {1.0, 10.0});
    CHECK(prior.occupancy_probability(ChannelId{3}) == doctest::Approx(1.0 / 11.0));
}

TEST_CASE("protection zones use strict great-circle containment") {
    const paws::GeoLocation tx{13.10, -59.61};
    std::vector<ProtectionZone> zones{{tx, ChannelId{4}, 1000.0}};

    CHECK(in_protection_zone(zones, tx, ChannelId{4})); // at the transmitter
    CHECK_FALSE(in_protection_zone(zones, tx, ChannelId{5})); // other channel

    const paws::GeoLocation antipode{-13.10, 180.0 - 59.61};
    CHECK_FALSE(in_protection_zone(zones, antipode, ChannelId{4}));

    // A point at exactly the radius is outside (strict inequality).
    paws::GeoLocation nearby = tx;
    nearby.lat_deg += 0.01;
    const double d = great_circle_distance_m(tx, nearby);
    zones[0].radius_m = d;
    CHECK_FALSE(in_protection_zone(zones, nearby, ChannelId{4}));
    zones[0].radius_m = d + 1.0;
    CHECK(in_protection_zone(zones, nearby, ChannelId{4}));
}

TEST_CASE("zone checks are order independent") {
    const paws::GeoLocation at{10.0, 10.0};
    std::vector<ProtectionZone> zones{
        {{10.0, 10.0}, ChannelId{1}, 500.0},
        {{40.0, 40.0}, ChannelId{1}, 500.0},
        {{10.0, 10.0}, ChannelId{2}, 500.0},
    };
    const bool a = in_protection_zone(zones, at, ChannelId{1});
    std::reverse(zones.begin(), zones.end());
    CHECK(a == in_protection_zone(zones, at, ChannelId{1}));
}

TEST_CASE("twin state round-trips through the config format") {
    OccupancyPrior prior;
    prior.update(ChannelId{0}, true);
    prior.update(ChannelId{3}, false);
    prior.update(ChannelId{3}, false);

    const OccupancyPrior back = twin_from_json(twin_to_json(prior));
    CHECK(back.occupancy_probability(ChannelId{0}) ==
          doctest::Approx(prior.occupancy_probability(ChannelId{0})));
    CHECK(back.occupancy_probability(ChannelId{3}) ==
          doctest::Approx(prior.occupancy_probability(ChannelId{3})));

    CHECK_THROWS_AS(twin_from_json("{}"), ScriptInvalid);
    CHECK_THROWS_AS(
        twin_from_json("{\"occupancy_prior\":[{\"channel\":0,\"alpha\":0,\"beta\":1}]}"),
        ScriptInvalid);
}

} // TEST_SUITE

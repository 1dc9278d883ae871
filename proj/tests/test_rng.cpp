// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>

#include <doctest.h>

#include "tvws/rng.hpp"

using namespace tvws;

TEST_SUITE("rng") {

TEST_CASE("same seed yields the same stream") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i)
        CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("forked streams differ from each other and the parent") {
    Rng base(1);
    Rng f1 = base.fork(1);
    Rng f2 = base.fork(2);
    int equal12 = 0, equal01 = 0;
    Rng base2(1);
    for (int i = 0; i < 64; ++i) {
        const auto a = f1.next_u64();
        const auto b = f2.next_u64();
        const auto c = base2.next_u64();
        equal12 += a == b;
        equal01 += a == c;
    }
    CHECK(equal12 == 0);
    CHECK(equal01 == 0);
}

TEST_CASE("uniform stays in range with plausible mean") {
    Rng rng(99);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal moments") {
    Rng rng(5);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(0.02));
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("complex gaussian fill hits the requested power") {
    Rng rng(17);
    Eigen::ArrayXcf buf(200000);
    fill_complex_gaussian(rng, buf, 2.5f);
    const double p = buf.abs2().cast<double>().mean();
    CHECK(p == doctest::Approx(2.5).epsilon(0.05));
}

TEST_CASE("mix_seed separates nearby inputs") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
}

} // TEST_SUITE

// Copyright 2026 The bellfake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <numbers>
#include <random>

#include "bellfake/errors.hpp"
#include "bellfake/inequalities.hpp"
#include "doctest.h"

using namespace bellfake;

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
}

TEST_CASE("correlation from counts") {
    CHECK(correlation_from_counts(10, 0, 0, 10) == 1.0);
    CHECK(correlation_from_counts(0, 5, 5, 0) == -1.0);
    CHECK(correlation_from_counts(3, 1, 1, 3) == doctest::Approx(0.5));
    CHECK_THROWS_AS(correlation_from_counts(0, 0, 0, 0, "a0b1"), AllZeroCoincidences);
    try {
        correlation_from_counts(0, 0, 0, 0, "a0b1");
    } catch (const AllZeroCoincidences& e) {
        CHECK(std::string(e.what()).find("a0b1") != std::string::npos);
    }
}

TEST_CASE("similar to different ratio of 3 + 2 sqrt 2 gives 1/sqrt 2") {
    // Integer counts close to the irrational ratio; exact value follows from the ratio used.
    std::uint64_t const n_dif = 1000000000;
    auto const n_sim = static_cast<std::uint64_t>(std::llround((3.0 + 2.0 * kSqrt2) * n_dif));
    double const e = correlation_from_counts(n_sim, n_dif, n_dif, n_sim);
    CHECK(e == doctest::Approx(1.0 / kSqrt2).epsilon(1e-9));
}

TEST_CASE("correlation is scale invariant and bounded") {
    std::mt19937_64 gen(8);
    std::uniform_int_distribution<std::uint64_t> count(0, 100000);
    for (int i = 0; i < 20000; ++i) {
        std::uint64_t pp = count(gen), pm = count(gen), mp = count(gen), mm = count(gen);
        if (pp + pm + mp + mm == 0) {
            continue;
        }
        double const e = correlation_from_counts(pp, pm, mp, mm);
        CHECK(std::abs(e) <= 1.0);
        for (std::uint64_t k : {2u, 7u, 1000u}) {
            CHECK(correlation_from_counts(k * pp, k * pm, k * mp, k * mm) ==
                  doctest::Approx(e).epsilon(1e-14).scale(1.0));
        }
    }
}

TEST_CASE("correlation standard error") {
    CHECK(correlation_stderr(50, 50, 50, 50) == doctest::Approx(std::sqrt(1.0 / 200.0)));
    CHECK(correlation_stderr(10, 0, 0, 10) == 0.0);
}

TEST_CASE("chsh combination") {
    CHECK(chsh_value(ChshCombination::create(1, 1, 1, -1)) == 4.0);
    double const r = 1.0 / kSqrt2;
    CHECK(chsh_value(ChshCombination::create(r, r, r, -r)) == doctest::Approx(2.0 * kSqrt2));
    CHECK(chsh_value(ChshCombination::create(1, 1, 1, 1)) == 2.0);
    CHECK_THROWS_AS(ChshCombination::create(1.1, 0, 0, 0), InvalidArgument);
    // by_setting is indexed a0b0, a1b0, a0b1, a1b1.
    auto const c = ChshCombination::from_settings({0.1, 0.2, 0.3, 0.4});
    CHECK(c.e00 == 0.1);
    CHECK(c.e10 == 0.2);
    CHECK(c.e01 == 0.3);
    CHECK(c.e11 == 0.4);
}

TEST_CASE("recalibrated local bound") {
    CHECK(gm_bound(1.0) == 2.0);
    CHECK(gm_bound(2.0 * (kSqrt2 - 1.0)) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-14));
    CHECK(gm_bound(0.5) == 4.0);
    CHECK(gm_bound(2.0 / 3.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(gm_bound(0.0), InvalidArgument);
    CHECK_THROWS_AS(gm_bound(1.01), InvalidArgument);

    double prev = gm_bound(0.001);
    for (int i = 2; i <= 1000; ++i) {
        double const g = gm_bound(i * 0.001);
        CHECK(g <= prev);
        CHECK(prev - g < 0.01);  // no jumps
        prev = g;
    }
}

TEST_CASE("similar to different ratio") {
    CHECK(nsim_ndif_ratio(0.0) == 1.0);
    CHECK(nsim_ndif_ratio(1.0 / kSqrt2) == doctest::Approx(3.0 + 2.0 * kSqrt2).epsilon(1e-14));
    CHECK(nsim_ndif_ratio(-1.0 / kSqrt2) == doctest::Approx(3.0 - 2.0 * kSqrt2).epsilon(1e-14));
    CHECK_THROWS_AS(nsim_ndif_ratio(1.0), SingularRatio);
    CHECK_THROWS_AS(nsim_ndif_ratio(-1.5), InvalidArgument);
}

TEST_CASE("ratio round trip over counts") {
    for (std::uint64_t sim = 1; sim < 60; ++sim) {
        for (std::uint64_t dif = 1; dif < 60; ++dif) {
            double const e = correlation_from_counts(sim, dif, dif, sim);
            CHECK(nsim_ndif_ratio(e) == doctest::Approx(static_cast<double>(sim) / dif));
        }
    }
}

TEST_CASE("symmetric correlation for a target S") {
    CHECK(symmetric_e_for_s(2.0 * kSqrt2) == doctest::Approx(1.0 / kSqrt2));
    CHECK(symmetric_e_for_s(4.0) == 1.0);
    CHECK(symmetric_e_for_s(0.0) == 0.0);
    CHECK_THROWS_AS(symmetric_e_for_s(4.5), InvalidArgument);
}

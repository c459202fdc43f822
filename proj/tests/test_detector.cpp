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
#include <sstream>

#include "bellfake/detector.hpp"
#include "bellfake/errors.hpp"
#include "doctest.h"

using namespace bellfake;

TEST_CASE("step threshold") {
    auto const d = DetectorModel::step(1.0);
    CHECK(click_probability(d, 0.99) == 0.0);
    CHECK(click_probability(d, 1.0) == 1.0);
    CHECK(click_probability(d, 0.0) == 0.0);
    Rng rng(5, 0);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_click(d, 2.0, rng));
        CHECK_FALSE(sample_click(d, 0.0, rng));
    }
    CHECK_THROWS_AS(DetectorModel::step(0.0), InvalidArgument);
    CHECK_THROWS_AS(DetectorModel::step(-1.0), InvalidArgument);
}

TEST_CASE("two-threshold linear ramp") {
    auto const d = DetectorModel::two_threshold(0.8, 1.2);
    CHECK(click_probability(d, 1.0) == doctest::Approx(0.5));
    CHECK(click_probability(d, 0.8) == 0.0);
    CHECK(click_probability(d, 0.5) == 0.0);
    CHECK(click_probability(d, 1.2) == 1.0);
    CHECK(click_probability(d, 0.9) == doctest::Approx(0.25));
    CHECK_THROWS_AS(DetectorModel::two_threshold(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(DetectorModel::two_threshold(1.2, 0.8), InvalidArgument);
    CHECK_THROWS_AS(DetectorModel::two_threshold(-0.1, 0.8), InvalidArgument);
}

TEST_CASE("two-threshold sampling converges to the ramp value") {
    auto const d = DetectorModel::two_threshold(0.8, 1.2);
    Rng rng(17, 0);
    int const n = 1000000;
    int clicks = 0;
    for (int i = 0; i < n; ++i) {
        clicks += sample_click(d, 1.0, rng);
    }
    CHECK(std::abs(static_cast<double>(clicks) / n - 0.5) < 0.002);
}

TEST_CASE("two-threshold tabulated profile") {
    std::vector<CurvePoint> profile{{0.0, 0.0}, {0.5, 0.8}, {1.0, 1.0}};
    auto const d = DetectorModel::two_threshold(1.0, 2.0, profile);
    CHECK(click_probability(d, 1.25) == doctest::Approx(0.4));
    CHECK(click_probability(d, 1.5) == doctest::Approx(0.8));
    CHECK(click_probability(d, 1.75) == doctest::Approx(0.9));
    CHECK(click_probability(d, 2.0) == 1.0);
    CHECK_THROWS_AS(DetectorModel::two_threshold(1.0, 2.0, {{0.0, 0.0}, {1.0, 0.9}}),
                    MalformedCurve);
    CHECK_THROWS_AS(DetectorModel::two_threshold(1.0, 2.0, {{0.0, 0.0}, {0.5, 0.9}, {1.0, 0.8}}),
                    MalformedCurve);
}

TEST_CASE("two-threshold converges to the step model as the ramp narrows") {
    auto const step = DetectorModel::step(1.0);
    for (double w : {0.1, 0.01, 0.001, 1e-6}) {
        auto const d = DetectorModel::two_threshold(1.0 - w, 1.0 + w);
        for (double x : {0.5, 0.9, 0.99, 1.01, 1.1, 2.0}) {
            if (std::abs(x - 1.0) > w) {
                CHECK(click_probability(d, x) == click_probability(step, x));
            }
        }
    }
}

TEST_CASE("empirical curves") {
    auto const d = load_response_curve({{0.1, 0.0}, {0.2, 1.0}});
    CHECK(click_probability(d, 0.15) == doctest::Approx(0.5));
    CHECK(click_probability(d, 0.05) == 0.0);
    CHECK(click_probability(d, 5.0) == 1.0);

    auto const partial = load_response_curve({{0.5, 0.3}, {1.0, 0.9}});
    CHECK(click_probability(partial, 0.4) == 0.0);
    CHECK(click_probability(partial, 0.5) == doctest::Approx(0.3));
    CHECK(click_probability(partial, 3.0) == doctest::Approx(0.9));

    CHECK_THROWS_AS(load_response_curve({{0.1, 0.5}, {0.2, 0.4}}), MalformedCurve);
    CHECK_THROWS_AS(load_response_curve({{0.1, 0.5}}), MalformedCurve);
    CHECK_THROWS_AS(load_response_curve({{0.2, 0.1}, {0.1, 0.5}}), MalformedCurve);
    CHECK_THROWS_AS(load_response_curve({{0.1, 0.1}, {0.1, 0.5}}), MalformedCurve);
    CHECK_THROWS_AS(load_response_curve({{0.1, 0.1}, {0.2, 1.5}}), MalformedCurve);
    CHECK_THROWS_AS(load_response_curve({{-0.1, 0.0}, {0.2, 1.0}}), MalformedCurve);
}

TEST_CASE("every model is monotone and bounded") {
    std::vector<DetectorModel> models{
        DetectorModel::step(1.0),
        DetectorModel::two_threshold(0.8, 1.2),
        DetectorModel::two_threshold(0.5, 1.5, {{0.0, 0.0}, {0.2, 0.6}, {1.0, 1.0}}),
        load_response_curve({{0.3, 0.0}, {0.5, 0.4}, {0.8, 0.9}, {1.0, 1.0}}),
    };
    for (auto const& m : models) {
        double prev = 0.0;
        for (int i = 0; i <= 3000; ++i) {
            double const x = i * 0.001;
            double const p = click_probability(m, x);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p >= prev);
            prev = p;
        }
    }
}

TEST_CASE("response curve csv") {
    std::istringstream good("\xEF\xBB\xBF" "energy,click_probability\n# comment\n0.5,0.4\n\n1.0,1.0\n");
    auto const d = read_response_curve_csv(good);
    CHECK(click_probability(d, 0.75) == doctest::Approx(0.7));

    std::istringstream bad_header("e,p\n0.5,0.4\n1.0,1.0\n");
    CHECK_THROWS_AS(read_response_curve_csv(bad_header), InvalidArgument);
    std::istringstream bad_number("energy,click_probability\n0.5,abc\n1.0,1.0\n");
    CHECK_THROWS_AS(read_response_curve_csv(bad_number), InvalidArgument);
    std::istringstream extra_column("energy,click_probability\n0.5,0.4,1\n1.0,1.0\n");
    CHECK_THROWS_AS(read_response_curve_csv(extra_column), InvalidArgument);
    std::istringstream decreasing("energy,click_probability\n0.5,0.4\n1.0,0.3\n");
    CHECK_THROWS_AS(read_response_curve_csv(decreasing), MalformedCurve);
}

TEST_CASE("bundled synthetic curve matches the half-intensity click rate") {
    auto const d = read_response_curve_csv(std::filesystem::path(BELLFAKE_SOURCE_DIR) / "data" /
                                           "synthetic_response_curve.csv");
    CHECK(click_probability(d, 1.0) == 1.0);
    CHECK(click_probability(d, 0.5) == doctest::Approx(0.40));
}

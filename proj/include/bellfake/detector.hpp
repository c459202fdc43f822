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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bellfake/rng.hpp"

namespace bellfake {

//! Ideal blinded detector: clicks iff intensity >= i_th.
struct StepThreshold {
    double i_th = 1.0;
};

//! Sampled (x, p) point on a curve.
struct CurvePoint {
    double x = 0.0;
    double p = 0.0;

    friend bool operator==(CurvePoint, CurvePoint) = default;
};

/*!
 * Noisy blinded detector with a never-click and an always-click level.
 *
 * Between the two levels the click probability follows either a straight
 * ramp (`profile` empty) or a tabulated ramp shape: points (x, p) where x is
 * the fractional position inside [i_never, i_always].
 */
struct TwoThreshold {
    enum class Interpolation { Linear, Tabulated };

    double i_never = 0.0;
    double i_always = 1.0;
    Interpolation interpolation = Interpolation::Linear;
    std::vector<CurvePoint> profile;
};

//! Measured response: (energy, click probability) rows.
struct Empirical {
    std::vector<CurvePoint> curve;
};

//---------------------------------------------------------------------------//
/*!
 * Click-probability response of one blinded detector.
 *
 * Instances are immutable and always valid; the factories reject parameter
 * sets that break monotonicity or the [0, 1] range.
 */
class DetectorModel {
  public:
    using Variant = std::variant<StepThreshold, TwoThreshold, Empirical>;

    static DetectorModel step(double i_th = 1.0);
    static DetectorModel two_threshold(double i_never, double i_always);
    //! Ramp shape must start at (0, 0), end at (1, 1) and be monotone.
    static DetectorModel two_threshold(double i_never, double i_always,
                                       std::vector<CurvePoint> profile);
    static DetectorModel empirical(std::vector<CurvePoint> curve);

    const Variant& variant() const noexcept { return model_; }

    double click_probability(double intensity) const;
    bool sample_click(double intensity, Rng& rng) const {
        return rng.bernoulli(click_probability(intensity));
    }

    //! Short human-readable description.
    std::string describe() const;

  private:
    explicit DetectorModel(Variant v) : model_(std::move(v)) {}

    Variant model_;
};

//! Free-function forms of the member operations.
inline double click_probability(const DetectorModel& m, double intensity) {
    return m.click_probability(intensity);
}
inline bool sample_click(const DetectorModel& m, double intensity, Rng& rng) {
    return m.sample_click(intensity, rng);
}

//! Validate a response table. Throws MalformedCurve.
DetectorModel load_response_curve(std::vector<CurvePoint> rows);

//! Parse `energy,click_probability` CSV (header row required).
DetectorModel read_response_curve_csv(std::istream& in);
DetectorModel read_response_curve_csv(const std::filesystem::path& path);

}  // namespace bellfake

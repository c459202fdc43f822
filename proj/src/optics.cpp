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

#include "bellfake/optics.hpp"

#include <cmath>

#include "bellfake/errors.hpp"

namespace bellfake {

ArmIntensities malus_split(Angle incoming, Angle analyzer, double intensity) {
    if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
        throw InvalidArgument("intensity must be finite and non-negative");
    }
    double const delta = Angle(separation(analyzer, incoming)).radians();
    double const c = std::cos(delta);
    double fraction = c * c;
    // Snap numerically matched or orthogonal angles so that a pulse at exactly
    // the threshold still lands entirely on one detector.
    constexpr double snap = 1e-12;
    if (fraction < snap) {
        fraction = 0.0;
    } else if (fraction > 1.0 - snap) {
        fraction = 1.0;
    }
    double const transmitted = intensity * fraction;
    // Complement instead of sin^2 keeps the two arms summing to the input.
    return {transmitted, intensity - transmitted};
}

AnalyzerResult analyze(const Pulse& pulse, Angle basis, const DetectorModel& detector_plus,
                       const DetectorModel& detector_minus, DoubleClickPolicy policy, Rng& rng) {
    if (pulse.is_vacuum()) {
        return {};
    }
    auto const arms = malus_split(*pulse.polarization(), basis, pulse.intensity());
    bool const plus = detector_plus.sample_click(arms.transmitted, rng);
    bool const minus = detector_minus.sample_click(arms.reflected, rng);

    if (plus && !minus) {
        return {Outcome::Plus, false};
    }
    if (minus && !plus) {
        return {Outcome::Minus, false};
    }
    if (!plus) {
        return {};
    }
    switch (policy) {
        case DoubleClickPolicy::Discard: return {Outcome::Inconclusive, true};
        case DoubleClickPolicy::Randomize:
            return {rng.coin() ? Outcome::Plus : Outcome::Minus, true};
        case DoubleClickPolicy::Flag: return {Outcome::Double, true};
    }
    return {Outcome::Inconclusive, true};
}

}  // namespace bellfake

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

#include "bellfake/core.hpp"
#include "bellfake/detector.hpp"
#include "bellfake/rng.hpp"

namespace bellfake {

//! Intensities reaching the transmitted ("+") and reflected ("-") detectors.
struct ArmIntensities {
    double transmitted = 0.0;
    double reflected = 0.0;
};

/*!
 * Malus-law split at a polarizing beamsplitter whose transmitted axis sits at
 * `analyzer`. The wave plate is folded into the analyzer angle.
 */
ArmIntensities malus_split(Angle incoming, Angle analyzer, double intensity);

struct AnalyzerResult {
    Outcome outcome = Outcome::Inconclusive;
    //! Both detectors clicked, regardless of how the policy reported it.
    bool double_click = false;
};

/*!
 * Measure one pulse in one party's analyzer.
 *
 * The transmitted detector reports "+" and the reflected one "-". Vacuum
 * never clicks. A double click is resolved by `policy`.
 */
AnalyzerResult analyze(const Pulse& pulse, Angle basis, const DetectorModel& detector_plus,
                       const DetectorModel& detector_minus, DoubleClickPolicy policy, Rng& rng);

}  // namespace bellfake

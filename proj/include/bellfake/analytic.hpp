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

#include <array>

#include "bellfake/core.hpp"
#include "bellfake/strategies.hpp"

namespace bellfake {

//! Closed-form statistics of a strategy.
struct Prediction {
    //! Symmetric efficiency, sqrt(coincidence_prob).
    double eta = 0.0;
    double s = 0.0;
    //! Indexed by SettingPair::index().
    std::array<double, 4> e_per_setting{};
    double coincidence_prob = 0.0;
};

/*!
 * Mixture of the deterministic existing model (eta = 1/2, S = 4) with
 * probability 1 - p2 and midpoint pulses (eta = 1, S = 2) with probability p2.
 */
Prediction improved_predict(double p2);

//! Perfect model: |E| = a / (a + b), coincidence probability (a + b) / 2.
Prediction perfect_predict(double a, double b);

struct AbParameters {
    double a = 0.0;
    double b = 0.0;
    double e = 0.0;
};

//! (a, b) that place the perfect model on the local bound at efficiency eta.
AbParameters ab_from_eta(double eta);

Prediction existing_predict(double e_target);

//! Honest source with detection efficiency eta_true on both sides.
Prediction quantum_predict(const QuantumSpec& spec, const MeasurementSettings& settings);

//! Inverse of improved_predict(p2).s by bisection, |error| < 1e-10.
double p2_for_s(double s_target);

}  // namespace bellfake

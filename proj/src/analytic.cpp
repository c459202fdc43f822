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

#include "bellfake/analytic.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bellfake/errors.hpp"
#include "bellfake/inequalities.hpp"

namespace bellfake {
namespace {

// Index order a0b0, a1b0, a0b1, a1b1; only a0b1 enters S with a minus sign.
std::array<double, 4> chsh_pattern(double e) { return {e, e, -e, e}; }

double s_from_settings(const std::array<double, 4>& e) { return e[0] + e[1] + e[3] - e[2]; }

constexpr double kEta1 = 0.5;
constexpr double kS1 = 4.0;
constexpr double kEta2 = 1.0;
constexpr double kS2 = 2.0;

}  // namespace

Prediction improved_predict(double p2) {
    if (!(p2 >= 0.0 && p2 <= 1.0)) {
        throw InvalidArgument(fmt::format("p2 must lie in [0, 1], got {}", p2));
    }
    double const p1 = 1.0 - p2;
    double const w1 = p1 * kEta1 * kEta1;
    double const w2 = p2 * kEta2 * kEta2;
    double const eta_sq = w1 + w2;

    Prediction pred;
    pred.coincidence_prob = eta_sq;
    pred.eta = std::sqrt(eta_sq);
    pred.s = (w1 * kS1 + w2 * kS2) / eta_sq;
    // Method 1 gives |E| = 1 with the CHSH sign pattern, method 2 gives E = +1
    // everywhere, so only the a0b1 correlation is diluted.
    pred.e_per_setting = {1.0, 1.0, (w2 - w1) / eta_sq, 1.0};
    return pred;
}

Prediction perfect_predict(double a, double b) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
        throw InvalidArgument(fmt::format("a and b must lie in [0, 1] (a={}, b={})", a, b));
    }
    if (a + b == 0.0) {
        throw InvalidArgument("a = b = 0 produces no coincidences");
    }
    double const e = a / (a + b);
    Prediction pred;
    pred.coincidence_prob = a / 2.0 + b / 2.0;
    pred.eta = std::sqrt(pred.coincidence_prob);
    pred.e_per_setting = chsh_pattern(e);
    pred.s = 4.0 * e;
    return pred;
}

AbParameters ab_from_eta(double eta) {
    if (!(eta >= 2.0 / 3.0 && eta <= 1.0)) {
        throw InvalidArgument(fmt::format("eta must lie in [2/3, 1], got {}", eta));
    }
    double const e = gm_bound(eta) / 4.0;
    double const eta_sq = eta * eta;
    return {2.0 * e * eta_sq, 2.0 * (1.0 - e) * eta_sq, e};
}

Prediction existing_predict(double e_target) {
    if (!(e_target >= 0.0 && e_target <= 1.0)) {
        throw InvalidArgument(fmt::format("e_target must lie in [0, 1], got {}", e_target));
    }
    Prediction pred;
    pred.eta = kEta1;
    pred.coincidence_prob = kEta1 * kEta1;
    pred.e_per_setting = chsh_pattern(e_target);
    pred.s = 4.0 * e_target;
    return pred;
}

Prediction quantum_predict(const QuantumSpec& spec, const MeasurementSettings& settings) {
    Prediction pred;
    for (auto const sp : all_setting_pairs) {
        pred.e_per_setting[sp.index()] =
            quantum_correlation(settings.alice(sp.alice), settings.bob(sp.bob), spec.state);
    }
    pred.s = s_from_settings(pred.e_per_setting);
    pred.eta = spec.eta_true;
    pred.coincidence_prob = spec.eta_true * spec.eta_true;
    return pred;
}

double p2_for_s(double s_target) {
    if (!(s_target >= 2.0 && s_target <= 4.0)) {
        throw InvalidArgument(fmt::format("target S must lie in [2, 4], got {}", s_target));
    }
    if (s_target == 4.0) {
        return 0.0;
    }
    if (s_target == 2.0) {
        return 1.0;
    }
    // S is strictly decreasing in p2.
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-13) {
        double const mid = 0.5 * (lo + hi);
        if (improved_predict(mid).s > s_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace bellfake

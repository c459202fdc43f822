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
#include <cstdint>

namespace bellfake {

//! The four correlations entering S, in the order they are summed.
struct ChshCombination {
    double e00 = 0.0;
    double e10 = 0.0;
    double e11 = 0.0;
    double e01 = 0.0;

    //! Rejects components outside [-1, 1].
    static ChshCombination create(double e00, double e10, double e11, double e01);
    //! From correlations indexed by SettingPair::index() (a0b0, a1b0, a0b1, a1b1).
    static ChshCombination from_settings(const std::array<double, 4>& by_setting);
};

/*!
 * Post-selected correlation of one setting from its coincidence counts.
 * Throws AllZeroCoincidences when all four counts are zero; `setting` names
 * the setting in that message.
 */
double correlation_from_counts(std::uint64_t n_pp, std::uint64_t n_pm, std::uint64_t n_mp,
                               std::uint64_t n_mm, const char* setting = "?");

//! Binomial standard error of the correlation estimate, sqrt((1 - E^2) / n).
double correlation_stderr(std::uint64_t n_pp, std::uint64_t n_pm, std::uint64_t n_mp,
                          std::uint64_t n_mm);

//! S = E00 + E10 + E11 - E01.
double chsh_value(const ChshCombination& c) noexcept;

//! Efficiency-dependent local bound min(4, 4/eta - 2). Rejects eta outside (0, 1].
double gm_bound(double eta);

//! (1 + e) / (1 - e). Throws SingularRatio at e = 1.
double nsim_ndif_ratio(double e);

//! |E| per setting when all four settings contribute equally to s.
double symmetric_e_for_s(double s);

}  // namespace bellfake

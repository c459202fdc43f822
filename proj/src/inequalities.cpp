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

#include "bellfake/inequalities.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bellfake/errors.hpp"

namespace bellfake {
namespace {

void require_correlation(double e, const char* name) {
    if (!(e >= -1.0 && e <= 1.0)) {
        throw InvalidArgument(fmt::format("{} must lie in [-1, 1], got {}", name, e));
    }
}

}  // namespace

ChshCombination ChshCombination::create(double e00, double e10, double e11, double e01) {
    require_correlation(e00, "e00");
    require_correlation(e10, "e10");
    require_correlation(e11, "e11");
    require_correlation(e01, "e01");
    return {e00, e10, e11, e01};
}

ChshCombination ChshCombination::from_settings(const std::array<double, 4>& by_setting) {
    return create(by_setting[0], by_setting[1], by_setting[3], by_setting[2]);
}

double correlation_from_counts(std::uint64_t n_pp, std::uint64_t n_pm, std::uint64_t n_mp,
                               std::uint64_t n_mm, const char* setting) {
    std::uint64_t const same = n_pp + n_mm;
    std::uint64_t const diff = n_pm + n_mp;
    std::uint64_t const total = same + diff;
    if (total == 0) {
        throw AllZeroCoincidences(setting);
    }
    return (static_cast<double>(same) - static_cast<double>(diff)) / static_cast<double>(total);
}

double correlation_stderr(std::uint64_t n_pp, std::uint64_t n_pm, std::uint64_t n_mp,
                          std::uint64_t n_mm) {
    std::uint64_t const total = n_pp + n_pm + n_mp + n_mm;
    if (total == 0) {
        return 0.0;
    }
    double const e = correlation_from_counts(n_pp, n_pm, n_mp, n_mm);
    return std::sqrt(std::max(0.0, 1.0 - e * e) / static_cast<double>(total));
}

double chsh_value(const ChshCombination& c) noexcept { return c.e00 + c.e10 + c.e11 - c.e01; }

double gm_bound(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw InvalidArgument(fmt::format("efficiency must lie in (0, 1], got {}", eta));
    }
    return std::min(4.0, 4.0 / eta - 2.0);
}

double nsim_ndif_ratio(double e) {
    if (e == 1.0) {
        throw SingularRatio("N_sim/N_dif diverges at E = 1");
    }
    require_correlation(e, "E");
    return (1.0 + e) / (1.0 - e);
}

double symmetric_e_for_s(double s) {
    if (!(std::abs(s) <= 4.0)) {
        throw InvalidArgument(fmt::format("|S| must not exceed 4, got {}", s));
    }
    return s / 4.0;
}

}  // namespace bellfake

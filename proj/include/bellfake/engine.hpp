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

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "bellfake/core.hpp"
#include "bellfake/detector.hpp"
#include "bellfake/strategies.hpp"

namespace bellfake {

using StrategyConfig =
    std::variant<ExistingModelSpec, ImprovedModelSpec, PerfectModelSpec, QuantumSpec>;

inline constexpr std::uint64_t kDefaultBatchSize = std::uint64_t{1} << 16;

/*!
 * Everything that determines a simulation run.
 *
 * The trial index space is cut into batches of `batch_size`; batch k draws
 * from the random stream (seed, k). Results therefore depend on the batch
 * size but never on `threads`.
 */
struct RunConfig {
    StrategyConfig strategy = PerfectModelSpec{};
    MeasurementSettings settings = MeasurementSettings::defaults();
    std::uint64_t n_trials = 1;
    std::uint64_t seed = 0;
    DoubleClickPolicy double_click_policy = DoubleClickPolicy::Discard;
    //! Used by the strategies that send light through the analyzers.
    DetectorModel detector_model = DetectorModel::step();
    unsigned threads = 1;
    std::uint64_t batch_size = kDefaultBatchSize;
};

std::string strategy_label(const StrategyConfig& strategy);

//! Throws InvalidArgument or InfeasibleGeometry for unusable configurations.
void validate(const RunConfig& config);

std::uint64_t batch_count(const RunConfig& config);

//! Counts from batches [first_batch, last_batch), run on config.threads threads.
CoincidenceCounts run_batches(const RunConfig& config, std::uint64_t first_batch,
                              std::uint64_t last_batch);

//! Statistics from raw counts. Throws AllZeroCoincidences naming the setting.
RunSummary summarize(const CoincidenceCounts& counts, std::uint64_t seed, std::string label,
                     const MeasurementSettings& settings);

RunSummary run(const RunConfig& config);

/*!
 * Combine summaries of the same configuration. Counts add; statistics are
 * recomputed; the reported seed is the smallest contributing seed, which
 * keeps the operation commutative.
 */
RunSummary merge(std::span<const RunSummary> summaries);

struct NoSignallingReport {
    //! Largest |P(o | own, remote 0) - P(o | own, remote 1)| over both parties.
    double max_discrepancy = 0.0;
    //! Largest discrepancy in units of its pooled standard error.
    double max_z = 0.0;
    bool pass = true;
    //! Where max_z was attained, e.g. "alice a0 outcome +".
    std::string worst;
};

/*!
 * Check that each party's outcome marginals do not depend on the remote
 * setting, using pooled two-proportion standard errors.
 */
NoSignallingReport empirical_no_signalling(const CoincidenceCounts& counts, double k_sigma = 4.0);

/*!
 * Exact counterpart on per-setting distributions over {+, -, ?}^2, indexed by
 * SettingPair::index(). Returns the largest marginal discrepancy.
 */
double analytic_no_signalling_discrepancy(const std::array<JointDistribution, 4>& by_setting);

}  // namespace bellfake

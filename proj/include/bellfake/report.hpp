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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bellfake/config.hpp"
#include "bellfake/core.hpp"

namespace bellfake {

//! Twelve significant digits, shortest form ("%.12g").
std::string format_real(double x);

/*!
 * Per-setting table followed by footer rows S, eta_alice, eta_bob,
 * eta_symmetric and seed.
 */
void write_summary_csv(std::ostream& out, const RunSummary& summary);

//! Human-readable report for the terminal.
void print_summary(std::ostream& out, const RunSummary& summary);

//---------------------------------------------------------------------------//
struct SweepSpec {
    enum class Variable { P2, Eta, ETarget };

    Variable variable = Variable::P2;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;

    //! Requires start < stop and steps >= 2.
    static SweepSpec create(Variable variable, double start, double stop, int steps);
    //! Evenly spaced grid including both end points.
    std::vector<double> grid() const;
};

std::optional<SweepSpec::Variable> parse_sweep_variable(std::string_view name) noexcept;

struct SweepRow {
    double x = 0.0;
    double eta_analytic = 0.0;
    double s_analytic = 0.0;
    std::optional<double> eta_mc;
    std::optional<double> s_mc;
    std::optional<double> se_s;
    double gm_bound = 0.0;
};

/*!
 * Analytic curve (and optional Monte Carlo points) over the grid. The base
 * configuration's strategy kind must match the swept variable: p2 sweeps the
 * improved model, eta the perfect model and etarget the existing model.
 * Grid point i is simulated with seed derive_seed(base seed, i).
 */
std::vector<SweepRow> run_sweep(const SweepSpec& sweep, const RunConfig& base, bool monte_carlo);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

//---------------------------------------------------------------------------//
//! Control-row feasibility table for the perfect model in `config`.
void write_feasibility_report(std::ostream& out, const RunConfig& config);

}  // namespace bellfake

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

#include "bellfake/report.hpp"

#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "bellfake/analytic.hpp"
#include "bellfake/errors.hpp"
#include "bellfake/inequalities.hpp"
#include "bellfake/rng.hpp"

namespace bellfake {

std::string format_real(double x) { return fmt::format("{:.12g}", x); }

void write_summary_csv(std::ostream& out, const RunSummary& summary) {
    out << "setting,n_pp,n_pm,n_mp,n_mm,n_singles_a,n_singles_b,n_neither,n_double,E\n";
    for (auto const sp : all_setting_pairs) {
        auto const& c = summary.counts[sp];
        out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", sp.label(), c.n_pp(), c.n_pm(),
                           c.n_mp(), c.n_mm(), c.n_alice_only(), c.n_bob_only(), c.n_neither(),
                           c.double_events(), format_real(summary.correlations[sp.index()]));
    }
    out << "S," << format_real(summary.s_value) << '\n';
    out << "eta_alice," << format_real(summary.eta_alice) << '\n';
    out << "eta_bob," << format_real(summary.eta_bob) << '\n';
    out << "eta_symmetric," << format_real(summary.eta_symmetric) << '\n';
    out << "seed," << summary.seed << '\n';
}

void print_summary(std::ostream& out, const RunSummary& summary) {
    fmt::print(out, "strategy       {}\n", summary.strategy_label);
    fmt::print(out, "trials         {}\n", summary.counts.trials());
    fmt::print(out, "seed           {}\n\n", summary.seed);
    fmt::print(out, "{:<8}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}{:>16}\n", "setting", "++",
               "+-", "-+", "--", "+?/-?", "?+/?-", "??", "double", "E");
    for (auto const sp : all_setting_pairs) {
        auto const& c = summary.counts[sp];
        fmt::print(out, "{:<8}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}{:>16}\n", sp.label(),
                   c.n_pp(), c.n_pm(), c.n_mp(), c.n_mm(), c.n_alice_only(), c.n_bob_only(),
                   c.n_neither(), c.double_events(), format_real(summary.correlations[sp.index()]));
    }
    fmt::print(out, "\nS              {} +/- {}\n", format_real(summary.s_value),
               format_real(summary.s_stderr));
    fmt::print(out, "eta_alice      {}\n", format_real(summary.eta_alice));
    fmt::print(out, "eta_bob        {}\n", format_real(summary.eta_bob));
    fmt::print(out, "eta_symmetric  {} +/- {}\n", format_real(summary.eta_symmetric),
               format_real(summary.eta_symmetric_stderr));
    fmt::print(out, "double clicks  {}\n", summary.counts.double_events());
    if (summary.eta_symmetric > 0.0 && summary.eta_symmetric <= 1.0) {
        fmt::print(out, "local bound    {} at eta_symmetric\n",
                   format_real(gm_bound(summary.eta_symmetric)));
    }
}

//---------------------------------------------------------------------------//
SweepSpec SweepSpec::create(Variable variable, double start, double stop, int steps) {
    if (!(start < stop)) {
        throw InvalidArgument(fmt::format("sweep needs start < stop (got {} and {})", start, stop));
    }
    if (steps < 2) {
        throw InvalidArgument(fmt::format("sweep needs at least 2 steps, got {}", steps));
    }
    return {variable, start, stop, steps};
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> xs(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        xs[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    xs.back() = stop;
    return xs;
}

std::optional<SweepSpec::Variable> parse_sweep_variable(std::string_view name) noexcept {
    if (name == "p2") return SweepSpec::Variable::P2;
    if (name == "eta") return SweepSpec::Variable::Eta;
    if (name == "etarget") return SweepSpec::Variable::ETarget;
    return std::nullopt;
}

std::vector<SweepRow> run_sweep(const SweepSpec& sweep, const RunConfig& base, bool monte_carlo) {
    auto const xs = sweep.grid();
    std::vector<SweepRow> rows;
    rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double const x = xs[i];
        RunConfig config = base;
        Prediction pred;
        switch (sweep.variable) {
            case SweepSpec::Variable::P2: {
                auto const* spec = std::get_if<ImprovedModelSpec>(&base.strategy);
                if (!spec) {
                    throw InvalidArgument("a p2 sweep needs an improved-model configuration");
                }
                pred = improved_predict(x);
                config.strategy = ImprovedModelSpec::create(x, base.settings, spec->trigger_intensity);
                break;
            }
            case SweepSpec::Variable::Eta: {
                auto const* spec = std::get_if<PerfectModelSpec>(&base.strategy);
                if (!spec) {
                    throw InvalidArgument("an eta sweep needs a perfect-model configuration");
                }
                auto const ab = ab_from_eta(x);
                pred = perfect_predict(ab.a, ab.b);
                config.strategy = PerfectModelSpec::create(ab.a, ab.b, spec->mode, spec->role_reversal);
                break;
            }
            case SweepSpec::Variable::ETarget: {
                if (!std::holds_alternative<ExistingModelSpec>(base.strategy)) {
                    throw InvalidArgument("an etarget sweep needs an existing-model configuration");
                }
                pred = existing_predict(x);
                config.strategy = ExistingModelSpec::create(x);
                break;
            }
        }
        SweepRow row;
        row.x = x;
        row.eta_analytic = pred.eta;
        row.s_analytic = pred.s;
        row.gm_bound = gm_bound(pred.eta);
        if (monte_carlo) {
            config.seed = derive_seed(base.seed, i);
            auto const summary = run(config);
            row.eta_mc = summary.eta_symmetric;
            row.s_mc = summary.s_value;
            row.se_s = summary.s_stderr;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    out << "x,eta_analytic,s_analytic,eta_mc,s_mc,se_s,gm_bound\n";
    for (auto const& r : rows) {
        out << format_real(r.x) << ',' << format_real(r.eta_analytic) << ','
            << format_real(r.s_analytic) << ',' << opt(r.eta_mc) << ',' << opt(r.s_mc) << ','
            << opt(r.se_s) << ',' << format_real(r.gm_bound) << '\n';
    }
}

//---------------------------------------------------------------------------//
void write_feasibility_report(std::ostream& out, const RunConfig& config) {
    auto const* spec = std::get_if<PerfectModelSpec>(&config.strategy);
    if (!spec) {
        throw InvalidArgument("feasibility check needs a perfect-model configuration");
    }
    if (spec->a < spec->b) {
        throw InvalidArgument(
            fmt::format("control rows need a >= b (a={}, b={})", format_real(spec->a), format_real(spec->b)));
    }
    auto const& s = config.settings;
    fmt::print(out, "a = {}, b = {}\n", format_real(spec->a), format_real(spec->b));
    fmt::print(out, "{:<7}{:<8}{:<21}{:>14}{:>14}   {:<32}{:>14}\n", "party", "light", "row",
               "probability", "polarization", "window", "intensity");

    struct Party {
        const char* name;
        const char* symbol;
        Angle x0;
        Angle x1;
    };
    for (auto const& party : {Party{"alice", "alpha", s.alpha0(), s.alpha1()},
                              Party{"bob", "beta", s.beta0(), s.beta1()}}) {
        for (int own_index = 0; own_index < 2; ++own_index) {
            Angle const own = own_index == 0 ? party.x0 : party.x1;
            Angle const partner = own_index == 0 ? party.x1 : party.x0;
            auto const geo = table3_geometry(own, partner);
            std::string const light = fmt::format("{}{}", party.symbol, own_index);
            for (auto const row : all_table3_rows) {
                double const prob = row == Table3Row::Plain    ? spec->a - spec->b
                                    : row == Table3Row::Vacuum ? 1.0 - spec->a
                                                               : spec->b / 2.0;
                if (row == Table3Row::Vacuum) {
                    fmt::print(out, "{:<7}{:<8}{:<21}{:>14}{:>14}   {:<32}{:>14}\n", party.name,
                               light, to_string(row), format_real(prob), "-", "-", "0");
                    continue;
                }
                auto const w = feasible_intensity_window(row, geo.phi0, geo.phi1);
                std::string pol = "-";
                std::string window = "INFEASIBLE";
                std::string intensity = "-";
                if (!w.empty()) {
                    auto const pulse = control_pulse_for(row, own, partner);
                    pol = format_real(pulse.polarization()->degrees());
                    window = fmt::format("[{}, {})", format_real(w.lower), format_real(w.upper));
                    intensity = format_real(w.chosen());
                }
                fmt::print(out, "{:<7}{:<8}{:<21}{:>14}{:>14}   {:<32}{:>14}\n", party.name, light,
                           to_string(row), format_real(prob), pol, window, intensity);
            }
        }
    }
}

}  // namespace bellfake

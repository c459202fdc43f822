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

#include "bellfake/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "bellfake/config.hpp"
#include "bellfake/errors.hpp"
#include "bellfake/report.hpp"

namespace bellfake {
namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> threads;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--seed", seed, "override engine.seed");
        cmd.add_option("--trials", trials, "override engine.trials")->check(CLI::PositiveNumber);
        cmd.add_option("--threads", threads, "override engine.threads")->check(CLI::PositiveNumber);
    }

    void apply(RunConfig& config) const {
        if (seed) config.seed = *seed;
        if (trials) config.n_trials = *trials;
        if (threads) config.threads = *threads;
    }
};

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream file(path);
    if (!file) {
        throw Error("cannot write " + path.string());
    }
    return file;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulate local-hidden-variable attacks on CHSH Bell tests", "bellfake"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;

    auto* run_cmd = app.add_subcommand("run", "run one simulation and print its summary");
    run_cmd->add_option("config", config_path, "configuration file")->required();
    std::string run_out;
    run_cmd->add_option("--out", run_out, "write the summary CSV here (overrides output.summary_csv)");
    overrides.add_to(*run_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one strategy parameter and write a curve CSV");
    sweep_cmd->add_option("config", config_path, "base configuration file")->required();
    std::string var_name;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string sweep_out;
    bool monte_carlo = true;
    sweep_cmd->add_option("--var", var_name, "swept variable")
        ->required()
        ->check(CLI::IsMember({"p2", "eta", "etarget"}));
    sweep_cmd->add_option("--from", from, "first grid value")->required();
    sweep_cmd->add_option("--to", to, "last grid value")->required();
    sweep_cmd->add_option("--steps", steps, "number of grid points (>= 2)")->required();
    sweep_cmd->add_option("--out", sweep_out, "output CSV (stdout when omitted)");
    sweep_cmd->add_flag("--mc,!--no-mc", monte_carlo, "also run Monte Carlo at each grid point");
    overrides.add_to(*sweep_cmd);

    auto* feas_cmd = app.add_subcommand("check-feasibility",
                                        "list control rows and their intensity windows");
    feas_cmd->add_option("config", config_path, "configuration file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitValidation;
    }

    try {
        auto loaded = load_config_file(config_path);
        overrides.apply(loaded.run);

        if (run_cmd->parsed()) {
            validate(loaded.run);
            auto const summary = run(loaded.run);
            print_summary(out, summary);
            std::optional<std::filesystem::path> csv = loaded.output.summary_csv;
            if (!run_out.empty()) {
                csv = run_out;
            }
            if (csv) {
                auto file = open_output(*csv);
                write_summary_csv(file, summary);
                fmt::print(out, "summary written to {}\n", csv->string());
            }
        } else if (sweep_cmd->parsed()) {
            auto const spec = SweepSpec::create(*parse_sweep_variable(var_name), from, to, steps);
            validate(loaded.run);
            auto const rows = run_sweep(spec, loaded.run, monte_carlo);
            if (sweep_out.empty()) {
                write_sweep_csv(out, rows);
            } else {
                auto file = open_output(sweep_out);
                write_sweep_csv(file, rows);
                fmt::print(out, "{} rows written to {}\n", rows.size(), sweep_out);
            }
        } else if (feas_cmd->parsed()) {
            write_feasibility_report(out, loaded.run);
        }
    } catch (const InvalidArgument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitRuntime;
    }
    return kExitSuccess;
}

}  // namespace bellfake

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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "bellfake/analytic.hpp"
#include "bellfake/engine.hpp"
#include "bellfake/inequalities.hpp"
#include "bellfake/report.hpp"
#include "bellfake/strategies.hpp"

using namespace bellfake;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr std::uint64_t kTrials = 1'000'000;

// Tolerances.
constexpr double kExactTol = 1e-12;
constexpr double kSigma = 4.0;
constexpr double kThresholdSTol = 0.02;
constexpr double kThresholdEtaTol = 0.01;
constexpr double kImprovedEtaTol = 0.0005;
constexpr double kImprovedSTol = 0.001;
constexpr double kExistingEtaTol = 0.005;
constexpr double kOracleTol = 1e-9;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
};

// |x - target| within k standard errors; an exact value is expected when
// the standard error vanishes.
bool within_se(double x, double target, double se) {
    if (se > 0.0) {
        return std::abs(x - target) <= kSigma * se;
    }
    return std::abs(x - target) <= kExactTol;
}

RunSummary simulate(StrategyConfig strategy, MeasurementSettings settings, std::uint64_t seed,
                    unsigned threads = 1) {
    RunConfig c;
    c.strategy = std::move(strategy);
    c.settings = settings;
    c.n_trials = kTrials;
    c.seed = seed;
    c.threads = threads;
    return run(c);
}

Check criterion_1() {
    Check c;
    double const a = 12.0 * kSqrt2 - 16.0;
    double const b = 40.0 - 28.0 * kSqrt2;
    auto const p = perfect_predict(a, b);
    c.require(std::abs(std::abs(p.e_per_setting[0]) - 1.0 / kSqrt2) <= kExactTol, "analytic |E|");
    c.require(std::abs(p.eta - 2.0 * (kSqrt2 - 1.0)) <= kExactTol, "analytic eta");
    c.require(std::abs(p.s - 2.0 * kSqrt2) <= kExactTol, "analytic S");
    auto const r = simulate(PerfectModelSpec::create(a, b), MeasurementSettings::defaults(), 1);
    c.require(std::abs(r.s_value - 2.8284) <= kThresholdSTol, fmt::format("MC S={:.5f}", r.s_value));
    c.require(std::abs(r.eta_symmetric - 0.8284) <= kThresholdEtaTol,
              fmt::format("MC eta={:.5f}", r.eta_symmetric));
    if (c.ok) {
        c.detail = fmt::format("S={:.5f} eta={:.5f}", r.s_value, r.eta_symmetric);
    }
    return c;
}

Check criterion_2() {
    Check c;
    std::uint64_t seed = 20;
    double worst = 0.0;
    for (double eta : {0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.00}) {
        auto const ab = ab_from_eta(eta);
        auto const r = simulate(PerfectModelSpec::create(ab.a, ab.b),
                                MeasurementSettings::defaults(), seed++);
        double const bound = 4.0 / eta - 2.0;
        c.require(within_se(r.s_value, bound, r.s_stderr),
                  fmt::format("eta={:.2f}: S={:.5f} vs {:.5f} (se {:.5f})", eta, r.s_value, bound,
                              r.s_stderr));
        if (r.s_stderr > 0.0) {
            worst = std::max(worst, std::abs(r.s_value - bound) / r.s_stderr);
        }
    }
    if (c.ok) {
        c.detail = fmt::format("max deviation {:.2f} se", worst);
    }
    return c;
}

Check criterion_3() {
    Check c;
    auto const p = improved_predict(0.2612);
    c.require(std::abs(p.eta - 0.6678) <= kImprovedEtaTol, fmt::format("analytic eta={:.6f}", p.eta));
    c.require(std::abs(p.s - 2.8284) <= kImprovedSTol, fmt::format("analytic S={:.6f}", p.s));
    auto const settings = MeasurementSettings::defaults();
    auto const r = simulate(ImprovedModelSpec::create(0.2612, settings), settings, 3);
    c.require(within_se(r.s_value, p.s, r.s_stderr), fmt::format("MC S={:.5f}", r.s_value));
    c.require(within_se(r.eta_symmetric, p.eta, r.eta_symmetric_stderr),
              fmt::format("MC eta={:.5f}", r.eta_symmetric));
    if (c.ok) {
        c.detail = fmt::format("analytic ({:.4f}, {:.4f}) MC ({:.4f}, {:.4f})", p.eta, p.s,
                               r.eta_symmetric, r.s_value);
    }
    return c;
}

Check criterion_4() {
    Check c;
    auto const settings = MeasurementSettings::defaults();
    std::uint64_t seed = 40;
    for (auto [p2, eta, s] : {std::array<double, 3>{0.0, 0.5, 4.0}, std::array<double, 3>{1.0, 1.0, 2.0}}) {
        auto const p = improved_predict(p2);
        c.require(p.eta == eta && p.s == s, fmt::format("analytic p2={}", p2));
        auto const r = simulate(ImprovedModelSpec::create(p2, settings), settings, seed++);
        c.require(within_se(r.s_value, s, r.s_stderr), fmt::format("MC S={} at p2={}", r.s_value, p2));
        c.require(within_se(r.eta_symmetric, eta, r.eta_symmetric_stderr),
                  fmt::format("MC eta={} at p2={}", r.eta_symmetric, p2));
    }
    return c;
}

Check criterion_5() {
    Check c;
    auto const r = simulate(ExistingModelSpec::create(1.0 / kSqrt2),
                            MeasurementSettings::defaults(), 5);
    c.require(std::abs(r.s_value - 2.0 * kSqrt2) <= kThresholdSTol, fmt::format("S={:.5f}", r.s_value));
    c.require(std::abs(r.eta_alice - 0.5) <= kExistingEtaTol, fmt::format("eta_alice={:.5f}", r.eta_alice));
    c.require(std::abs(r.eta_bob - 0.5) <= kExistingEtaTol, fmt::format("eta_bob={:.5f}", r.eta_bob));
    if (c.ok) {
        c.detail = fmt::format("S={:.5f} eta_alice={:.5f} eta_bob={:.5f}", r.s_value, r.eta_alice,
                               r.eta_bob);
    }
    return c;
}

Check criterion_6() {
    Check c;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            double const a = (i + 1) / 10.0;
            double const b = (j + 1) / 10.0;
            for (bool rr : {false, true}) {
                std::array<JointDistribution, 4> d;
                for (std::size_t k = 0; k < 4; ++k) {
                    d[k] = perfect_setting_distribution(a, b, rr, SettingPair::from_index(k));
                }
                worst = std::max(worst, analytic_no_signalling_discrepancy(d));
            }
        }
    }
    c.require(worst < kExactTol, fmt::format("analytic discrepancy {}", worst));
    auto const r = simulate(PerfectModelSpec::create(12.0 * kSqrt2 - 16.0, 40.0 - 28.0 * kSqrt2),
                            MeasurementSettings::defaults(), 6);
    auto const ns = empirical_no_signalling(r.counts, kSigma);
    c.require(ns.pass, fmt::format("empirical z={:.2f} at {}", ns.max_z, ns.worst));
    if (c.ok) {
        c.detail = fmt::format("analytic {:.1e}, empirical max z {:.2f}", worst, ns.max_z);
    }
    return c;
}

Check criterion_7() {
    Check c;
    auto const settings = MeasurementSettings::standard_chsh();
    auto const spec = QuantumSpec::create(TwoQubitState::phi_plus(), 1.0, "phi_plus");
    auto const p = quantum_predict(spec, settings);
    c.require(std::abs(p.s - 2.0 * kSqrt2) <= kOracleTol, fmt::format("oracle S={:.12f}", p.s));
    auto const r = simulate(spec, settings, 7);
    c.require(std::abs(r.s_value - 2.0 * kSqrt2) <= kThresholdSTol, fmt::format("MC S={:.5f}", r.s_value));
    if (c.ok) {
        c.detail = fmt::format("oracle S={:.12f} MC S={:.5f}", p.s, r.s_value);
    }
    return c;
}

Check criterion_8() {
    Check c;
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    // Total count large enough that rounding to integers stays far below the tolerance.
    constexpr std::uint64_t total = std::uint64_t{1} << 50;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double e = dist(gen);
        while (e == -1.0) {
            e = dist(gen);
        }
        // n_sim / n_dif = (1 + E) / (1 - E) with 2 n_sim + 2 n_dif = 2 total.
        auto const n_sim = static_cast<std::uint64_t>(std::llround(total * (1.0 + e) / 2.0));
        std::uint64_t const n_dif = total - n_sim;
        double const recovered = correlation_from_counts(n_sim, n_dif, n_dif, n_sim);
        worst = std::max(worst, std::abs(recovered - e));
    }
    c.require(worst <= kExactTol, fmt::format("worst recovery error {}", worst));
    double const ratio = nsim_ndif_ratio(1.0 / kSqrt2);
    c.require(std::abs(ratio - (3.0 + 2.0 * kSqrt2)) <= kExactTol, fmt::format("ratio {}", ratio));
    if (c.ok) {
        c.detail = fmt::format("worst error {:.1e}, ratio {:.15f}", worst, ratio);
    }
    return c;
}

Check criterion_9() {
    Check c;
    auto csv_of = [](unsigned threads) {
        RunConfig cfg;
        cfg.strategy = PerfectModelSpec::create(12.0 * kSqrt2 - 16.0, 40.0 - 28.0 * kSqrt2);
        cfg.n_trials = kTrials;
        cfg.seed = 9;
        cfg.threads = threads;
        std::ostringstream out;
        write_summary_csv(out, run(cfg));
        return out.str();
    };
    auto const one = csv_of(1);
    auto const again = csv_of(1);
    auto const eight = csv_of(8);
    c.require(one == again, "repeat at 1 thread differs");
    c.require(one == eight, "1 thread and 8 threads differ");
    return c;
}

Check criterion_10() {
    Check c;
    auto const settings = MeasurementSettings::defaults();
    double const a = 12.0 * kSqrt2 - 16.0;
    double const b = 40.0 - 28.0 * kSqrt2;
    auto const analytic = simulate(PerfectModelSpec::create(a, b), settings, 101);
    auto const physical = simulate(
        PerfectModelSpec::create(a, b, PerfectModelSpec::Mode::PhysicalTable3), settings, 102);
    double worst_z = 0.0;
    for (auto const sp : all_setting_pairs) {
        auto const& x = analytic.counts[sp];
        auto const& y = physical.counts[sp];
        double const nx = static_cast<double>(x.trials());
        double const ny = static_cast<double>(y.trials());
        for (auto oa : {Outcome::Plus, Outcome::Minus, Outcome::Inconclusive, Outcome::Double}) {
            for (auto ob : {Outcome::Plus, Outcome::Minus, Outcome::Inconclusive, Outcome::Double}) {
                double const kx = static_cast<double>(x.joint(oa, ob));
                double const ky = static_cast<double>(y.joint(oa, ob));
                double const pooled = (kx + ky) / (nx + ny);
                double const se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / nx + 1.0 / ny));
                double const diff = std::abs(kx / nx - ky / ny);
                if (se > 0.0) {
                    worst_z = std::max(worst_z, diff / se);
                    c.require(diff <= kSigma * se,
                              fmt::format("{} {}{}: z={:.2f}", sp.label(), outcome_symbol(oa),
                                          outcome_symbol(ob), diff / se));
                } else {
                    c.require(diff == 0.0, "cell present in one mode only");
                }
            }
        }
    }
    if (c.ok) {
        c.detail = fmt::format("max cell z {:.2f}", worst_z);
    }
    return c;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        Check (*fn)();
    };
    std::vector<Entry> const entries{
        {1, "perfect model at the CHSH threshold", criterion_1},
        {2, "perfect model follows the recalibrated bound", criterion_2},
        {3, "improved model reaches 2 sqrt 2", criterion_3},
        {4, "improved model endpoints", criterion_4},
        {5, "existing model", criterion_5},
        {6, "no-signalling", criterion_6},
        {7, "quantum baseline", criterion_7},
        {8, "ratio round trip", criterion_8},
        {9, "reproducibility across thread counts", criterion_9},
        {10, "physical control matches the outcome table", criterion_10},
    };
    int failures = 0;
    for (auto const& e : entries) {
        Check result;
        try {
            result = e.fn();
        } catch (const std::exception& ex) {
            result.ok = false;
            result.detail = fmt::format("exception: {}", ex.what());
        }
        failures += result.ok ? 0 : 1;
        fmt::print("[{}] {:2d} {}{}{}\n", result.ok ? "PASS" : "FAIL", e.id, e.name,
                   result.detail.empty() ? "" : ": ", result.detail);
        std::fflush(stdout);
    }
    fmt::print("{}/{} criteria passed\n", entries.size() - failures, entries.size());
    return failures == 0 ? 0 : 1;
}

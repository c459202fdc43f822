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

#include "bellfake/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "bellfake/errors.hpp"
#include "bellfake/inequalities.hpp"
#include "bellfake/optics.hpp"

namespace bellfake {
namespace {

template<class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

SettingPair draw_settings(Rng& rng) {
    auto const alice = rng.coin() ? AliceBasis::A1 : AliceBasis::A0;
    auto const bob = rng.coin() ? BobBasis::B1 : BobBasis::B0;
    return {alice, bob};
}

//! Measures a pulse pair in both analyzers.
struct PhysicalMeasurement {
    const RunConfig& config;

    TrialResult operator()(const PulsePair& pulses, SettingPair sp, Rng& rng) const {
        auto const& det = config.detector_model;
        auto const policy = config.double_click_policy;
        auto const a = analyze(pulses.alice, config.settings.alice(sp.alice), det, det, policy, rng);
        auto const b = analyze(pulses.bob, config.settings.bob(sp.bob), det, det, policy, rng);
        return {{a.outcome, b.outcome}, a.double_click || b.double_click};
    }
};

/*!
 * One trial: the source acts first, then both parties pick their settings,
 * then the outcomes are produced.
 */
struct TrialRunner {
    const RunConfig& config;

    template<class F>
    void loop(std::uint64_t begin, std::uint64_t end, Rng& rng, CoincidenceCounts& counts,
              F&& trial) const {
        for (std::uint64_t t = begin; t < end; ++t) {
            SettingPair sp;
            TrialResult const r = trial(t, rng, sp);
            counts.record(sp, r.outcomes, r.double_event);
        }
    }

    void operator()(const ExistingModelSpec& spec, std::uint64_t begin, std::uint64_t end,
                    Rng& rng, CoincidenceCounts& counts) const {
        PhysicalMeasurement const measure{config};
        loop(begin, end, rng, counts, [&](std::uint64_t, Rng& g, SettingPair& sp) {
            auto const pulses = existing_emit(spec, config.settings, g);
            sp = draw_settings(g);
            return measure(pulses, sp, g);
        });
    }

    void operator()(const ImprovedModelSpec& spec, std::uint64_t begin, std::uint64_t end,
                    Rng& rng, CoincidenceCounts& counts) const {
        PhysicalMeasurement const measure{config};
        loop(begin, end, rng, counts, [&](std::uint64_t, Rng& g, SettingPair& sp) {
            auto const emission = improved_emit(spec, config.settings, g);
            sp = draw_settings(g);
            auto r = measure(emission.pulses, sp, g);
            if (emission.method2) {
                r.outcomes = symmetrize(r.outcomes, g);
            }
            return r;
        });
    }

    void operator()(const PerfectModelSpec& spec, std::uint64_t begin, std::uint64_t end,
                    Rng& rng, CoincidenceCounts& counts) const {
        loop(begin, end, rng, counts, [&](std::uint64_t t, Rng& g, SettingPair& sp) {
            auto const plan = perfect_emit(spec, config.settings, t, g);
            sp = draw_settings(g);
            return perfect_outcomes(spec, plan, config.settings, sp, config.detector_model,
                                    config.double_click_policy, g);
        });
    }

    void operator()(const QuantumSpec& spec, std::uint64_t begin, std::uint64_t end, Rng& rng,
                    CoincidenceCounts& counts) const {
        loop(begin, end, rng, counts, [&](std::uint64_t, Rng& g, SettingPair& sp) {
            sp = draw_settings(g);
            return TrialResult{quantum_emit(spec, config.settings, sp, g), false};
        });
    }
};

CoincidenceCounts run_one_batch(const RunConfig& config, std::uint64_t batch) {
    CoincidenceCounts counts(config.double_click_policy);
    std::uint64_t const begin = batch * config.batch_size;
    std::uint64_t const end = std::min(config.n_trials, begin + config.batch_size);
    if (begin >= end) {
        return counts;
    }
    Rng rng(config.seed, batch);
    TrialRunner const runner{config};
    std::visit([&](const auto& spec) { runner(spec, begin, end, rng, counts); }, config.strategy);
    return counts;
}

void require_feasible_party(Angle x0, Angle x1, double a, double b, const char* party) {
    for (auto const& [own, partner] : {std::pair{x0, x1}, std::pair{x1, x0}}) {
        auto const geo = table3_geometry(own, partner);
        for (auto const row : {Table3Row::Plain, Table3Row::TowardPartner,
                               Table3Row::TowardPartnerPerp}) {
            double const p = row == Table3Row::Plain ? a - b : b / 2.0;
            if (p <= 0.0) {
                continue;
            }
            if (feasible_intensity_window(row, geo.phi0, geo.phi1).empty()) {
                throw InfeasibleGeometry(fmt::format(
                    "{} control row '{}' has no feasible intensity (phi0={}, phi1={})", party,
                    to_string(row), geo.phi0, geo.phi1));
            }
        }
    }
}

}  // namespace

std::string strategy_label(const StrategyConfig& strategy) {
    return std::visit(
        Overloaded{
            [](const ExistingModelSpec& s) { return fmt::format("existing(e_target={:.12g})", s.e_target); },
            [](const ImprovedModelSpec& s) {
                return fmt::format("improved(p2={:.12g}, trigger={:.12g})", s.p2, s.trigger_intensity);
            },
            [](const PerfectModelSpec& s) {
                return fmt::format(
                    "perfect(a={:.12g}, b={:.12g}, mode={}, role_reversal={})", s.a, s.b,
                    s.mode == PerfectModelSpec::Mode::AnalyticTable ? "analytic" : "physical",
                    s.role_reversal);
            },
            [](const QuantumSpec& s) {
                return fmt::format("quantum(state={}, eta_true={:.12g})", s.state_name, s.eta_true);
            },
        },
        strategy);
}

void validate(const RunConfig& config) {
    if (config.n_trials < 1) {
        throw InvalidArgument("n_trials must be at least 1");
    }
    if (config.batch_size < 1) {
        throw InvalidArgument("batch_size must be at least 1");
    }
    if (config.threads < 1) {
        throw InvalidArgument("threads must be at least 1");
    }
    if (auto const* imp = std::get_if<ImprovedModelSpec>(&config.strategy)) {
        auto const expected = ImprovedModelSpec::create(imp->p2, config.settings, imp->trigger_intensity);
        if (expected.midpoint_alice != imp->midpoint_alice
            || expected.midpoint_bob != imp->midpoint_bob) {
            throw InvalidArgument("improved-model geometry was built for different analyzer angles");
        }
    }
    if (auto const* perf = std::get_if<PerfectModelSpec>(&config.strategy)) {
        if (perf->mode == PerfectModelSpec::Mode::PhysicalTable3) {
            if (perf->a < perf->b) {
                throw InvalidArgument("physical control needs a >= b");
            }
            auto const& s = config.settings;
            require_feasible_party(s.alpha0(), s.alpha1(), perf->a, perf->b, "alice");
            if (perf->role_reversal) {
                require_feasible_party(s.beta0(), s.beta1(), perf->a, perf->b, "bob");
            }
        }
    }
}

std::uint64_t batch_count(const RunConfig& config) {
    return (config.n_trials + config.batch_size - 1) / config.batch_size;
}

CoincidenceCounts run_batches(const RunConfig& config, std::uint64_t first_batch,
                              std::uint64_t last_batch) {
    validate(config);
    last_batch = std::min(last_batch, batch_count(config));
    CoincidenceCounts total(config.double_click_policy);
    if (first_batch >= last_batch) {
        return total;
    }
    std::uint64_t const n = last_batch - first_batch;
    std::vector<CoincidenceCounts> partial(n, CoincidenceCounts(config.double_click_policy));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::uint64_t i = next++; i < n; i = next++) {
                partial[i] = run_one_batch(config, first_batch + i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = n;
        }
    };

    auto const nthreads = static_cast<unsigned>(std::min<std::uint64_t>(config.threads, n));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    for (auto const& c : partial) {
        total += c;
    }
    return total;
}

RunSummary summarize(const CoincidenceCounts& counts, std::uint64_t seed, std::string label,
                     const MeasurementSettings& settings) {
    RunSummary out;
    out.counts = counts;
    double var_s = 0.0;
    for (auto const sp : all_setting_pairs) {
        auto const& c = counts[sp];
        auto const setting = sp.label();
        out.correlations[sp.index()] =
            correlation_from_counts(c.n_pp(), c.n_pm(), c.n_mp(), c.n_mm(), setting.c_str());
        double const se = correlation_stderr(c.n_pp(), c.n_pm(), c.n_mp(), c.n_mm());
        var_s += se * se;
    }
    out.s_value = chsh_value(ChshCombination::from_settings(out.correlations));
    out.s_stderr = std::sqrt(var_s);

    auto const n = static_cast<double>(counts.trials());
    out.eta_alice = static_cast<double>(counts.alice_conclusive()) / n;
    out.eta_bob = static_cast<double>(counts.bob_conclusive()) / n;
    double const coinc = static_cast<double>(counts.coincidences()) / n;
    out.eta_symmetric = std::sqrt(coinc);
    out.eta_symmetric_stderr =
        coinc > 0.0 ? std::sqrt(coinc * (1.0 - coinc) / n) / (2.0 * out.eta_symmetric) : 0.0;
    out.seed = seed;
    out.strategy_label = std::move(label);
    out.settings = settings;
    return out;
}

RunSummary run(const RunConfig& config) {
    auto const counts = run_batches(config, 0, batch_count(config));
    return summarize(counts, config.seed, strategy_label(config.strategy), config.settings);
}

RunSummary merge(std::span<const RunSummary> summaries) {
    if (summaries.empty()) {
        throw InvalidArgument("nothing to merge");
    }
    auto const& first = summaries.front();
    CoincidenceCounts total(first.counts.policy());
    std::uint64_t seed = first.seed;
    for (auto const& s : summaries) {
        if (s.strategy_label != first.strategy_label || s.settings != first.settings
            || s.counts.policy() != first.counts.policy()) {
            throw InvalidArgument("cannot merge summaries of different configurations");
        }
        total += s.counts;
        seed = std::min(seed, s.seed);
    }
    if (!first.settings) {
        throw InvalidArgument("summary carries no measurement settings");
    }
    return summarize(total, seed, first.strategy_label, *first.settings);
}

//---------------------------------------------------------------------------//
NoSignallingReport empirical_no_signalling(const CoincidenceCounts& counts, double k_sigma) {
    NoSignallingReport report;
    for (int party = 0; party < 2; ++party) {
        for (int own = 0; own < 2; ++own) {
            auto setting_for = [&](int remote) {
                return party == 0 ? SettingPair{static_cast<AliceBasis>(own), static_cast<BobBasis>(remote)}
                                  : SettingPair{static_cast<AliceBasis>(remote), static_cast<BobBasis>(own)};
            };
            auto const& c0 = counts[setting_for(0)];
            auto const& c1 = counts[setting_for(1)];
            auto const n0 = static_cast<double>(c0.trials());
            auto const n1 = static_cast<double>(c1.trials());
            if (n0 == 0.0 || n1 == 0.0) {
                continue;
            }
            for (int o = 0; o < 4; ++o) {
                auto marginal = [&](const SettingCounts& c) {
                    std::uint64_t m = 0;
                    for (int other = 0; other < 4; ++other) {
                        m += party == 0 ? c.joint(static_cast<Outcome>(o), static_cast<Outcome>(other))
                                        : c.joint(static_cast<Outcome>(other), static_cast<Outcome>(o));
                    }
                    return static_cast<double>(m);
                };
                double const m0 = marginal(c0);
                double const m1 = marginal(c1);
                double const diff = std::abs(m0 / n0 - m1 / n1);
                double const pooled = (m0 + m1) / (n0 + n1);
                double const se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n0 + 1.0 / n1));
                double z = 0.0;
                if (se > 0.0) {
                    z = diff / se;
                } else if (diff > 0.0) {
                    z = std::numeric_limits<double>::infinity();
                }
                report.max_discrepancy = std::max(report.max_discrepancy, diff);
                if (z > report.max_z || report.worst.empty()) {
                    report.max_z = std::max(report.max_z, z);
                    report.worst = fmt::format("{} {}{} outcome {}", party == 0 ? "alice" : "bob",
                                               party == 0 ? 'a' : 'b', own,
                                               outcome_symbol(static_cast<Outcome>(o)));
                }
            }
        }
    }
    report.pass = report.max_z <= k_sigma;
    return report;
}

double analytic_no_signalling_discrepancy(const std::array<JointDistribution, 4>& by_setting) {
    double worst = 0.0;
    for (int party = 0; party < 2; ++party) {
        for (int own = 0; own < 2; ++own) {
            std::array<std::array<double, 3>, 2> marg{};
            for (int remote = 0; remote < 2; ++remote) {
                SettingPair const sp =
                    party == 0 ? SettingPair{static_cast<AliceBasis>(own), static_cast<BobBasis>(remote)}
                               : SettingPair{static_cast<AliceBasis>(remote), static_cast<BobBasis>(own)};
                auto const& d = by_setting[sp.index()];
                for (int o = 0; o < 3; ++o) {
                    for (int other = 0; other < 3; ++other) {
                        marg[remote][o] += party == 0 ? d[3 * o + other] : d[3 * other + o];
                    }
                }
            }
            for (int o = 0; o < 3; ++o) {
                worst = std::max(worst, std::abs(marg[0][o] - marg[1][o]));
            }
        }
    }
    return worst;
}

}  // namespace bellfake

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

#include "bellfake/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "bellfake/analytic.hpp"
#include "bellfake/errors.hpp"

namespace bellfake {
namespace {

std::string_view trim(std::string_view s) {
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if ((s[i] == '#' || s[i] == ';') && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
            return s.substr(0, i);
        }
    }
    return s;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::istream& in) {
    KeyValueFile kv;
    std::string section;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("malformed section header", lineno);
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("expected 'key = value', got '{}'", line), lineno);
        }
        auto const key = trim(line.substr(0, eq));
        auto const value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("empty key", lineno);
        }
        std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (kv.entries_.count(full)) {
            throw ConfigError(fmt::format("duplicate key '{}' (first set on line {})", full,
                                          kv.entries_[full].line),
                              lineno);
        }
        kv.entries_[full] = {std::string(value), lineno};
    }
    return kv;
}

const KeyValueFile::Entry* KeyValueFile::find(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        return nullptr;
    }
    used_.insert(key);
    return &it->second;
}

int KeyValueFile::line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

std::optional<std::string> KeyValueFile::get_string(const std::string& key) const {
    if (auto const* e = find(key)) {
        return e->value;
    }
    return std::nullopt;
}

std::optional<double> KeyValueFile::get_double(const std::string& key) const {
    auto const* e = find(key);
    if (!e) {
        return std::nullopt;
    }
    double v = 0.0;
    auto const& s = e->value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError(fmt::format("field '{}': '{}' is not a number", key, s), e->line);
    }
    return v;
}

std::optional<std::uint64_t> KeyValueFile::get_uint(const std::string& key) const {
    auto const* e = find(key);
    if (!e) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    auto const& s = e->value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError(fmt::format("field '{}': '{}' is not a non-negative integer", key, s),
                          e->line);
    }
    return v;
}

std::optional<bool> KeyValueFile::get_bool(const std::string& key) const {
    auto const* e = find(key);
    if (!e) {
        return std::nullopt;
    }
    auto const& s = e->value;
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ConfigError(fmt::format("field '{}': '{}' is not a boolean", key, s), e->line);
}

void KeyValueFile::reject_unused() const {
    for (auto const& [key, entry] : entries_) {
        if (!used_.count(key)) {
            throw ConfigError(fmt::format("unknown field '{}'", key), entry.line);
        }
    }
}

//---------------------------------------------------------------------------//
namespace {

// Re-raise library validation errors with the line of the offending field.
template<class F>
auto at_line(const KeyValueFile& kv, const std::string& key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(fmt::format("{}: {}", key, e.what()), kv.line_of(key));
    }
}

double require_double(const KeyValueFile& kv, const std::string& key) {
    if (auto v = kv.get_double(key)) {
        return *v;
    }
    throw ConfigError(fmt::format("missing required field '{}'", key), 0);
}

MeasurementSettings load_settings(const KeyValueFile& kv) {
    auto base = MeasurementSettings::defaults();
    if (auto preset = kv.get_string("settings.preset")) {
        if (*preset == "default") {
            base = MeasurementSettings::defaults();
        } else if (*preset == "standard") {
            base = MeasurementSettings::standard_chsh();
        } else {
            throw ConfigError(fmt::format("settings.preset: unknown preset '{}' (valid: default, standard)", *preset),
                              kv.line_of("settings.preset"));
        }
    }
    double const a0 = kv.get_double("settings.alpha0").value_or(base.alpha0().degrees());
    double const a1 = kv.get_double("settings.alpha1").value_or(base.alpha1().degrees());
    double const b0 = kv.get_double("settings.beta0").value_or(base.beta0().degrees());
    double const b1 = kv.get_double("settings.beta1").value_or(base.beta1().degrees());
    try {
        return MeasurementSettings(Angle(a0), Angle(a1), Angle(b0), Angle(b1));
    } catch (const Error& e) {
        int line = kv.line_of("settings.alpha1");
        if (line == 0) line = kv.line_of("settings.beta1");
        throw ConfigError(fmt::format("settings: {}", e.what()), line);
    }
}

DetectorModel load_detector(const KeyValueFile& kv, const std::filesystem::path& base_dir) {
    auto const model = kv.get_string("detector.model");
    auto const curve = kv.get_string("detector.curve_file");
    std::string const kind = model.value_or(curve ? "empirical" : "step");
    if (kind == "step") {
        double const i_th = kv.get_double("detector.i_th").value_or(1.0);
        return at_line(kv, "detector.i_th", [&] { return DetectorModel::step(i_th); });
    }
    if (kind == "two_threshold") {
        double const lo = require_double(kv, "detector.i_never");
        double const hi = require_double(kv, "detector.i_always");
        return at_line(kv, "detector.i_always", [&] { return DetectorModel::two_threshold(lo, hi); });
    }
    if (kind == "empirical") {
        if (!curve) {
            throw ConfigError("empirical detector needs detector.curve_file", kv.line_of("detector.model"));
        }
        std::filesystem::path p(*curve);
        if (p.is_relative()) {
            p = base_dir / p;
        }
        return at_line(kv, "detector.curve_file", [&] { return read_response_curve_csv(p); });
    }
    throw ConfigError(fmt::format("detector.model: unknown model '{}' (valid: step, two_threshold, empirical)", kind),
                      kv.line_of("detector.model"));
}

StrategyConfig load_strategy(const KeyValueFile& kv, const MeasurementSettings& settings) {
    auto const kind = kv.get_string("strategy.kind");
    if (!kind) {
        throw ConfigError(fmt::format("missing strategy.kind (valid: {})", kStrategyNames), 0);
    }
    if (*kind == "existing") {
        double const e = kv.get_double("strategy.e_target").value_or(1.0);
        return at_line(kv, "strategy.e_target", [&] { return ExistingModelSpec::create(e); });
    }
    if (*kind == "improved") {
        double const p2 = require_double(kv, "strategy.p2");
        auto const trigger = kv.get_double("strategy.trigger_intensity");
        return at_line(kv, "strategy.p2", [&] { return ImprovedModelSpec::create(p2, settings, trigger); });
    }
    if (*kind == "perfect") {
        auto mode = PerfectModelSpec::Mode::AnalyticTable;
        if (auto m = kv.get_string("strategy.mode")) {
            if (*m == "analytic") {
                mode = PerfectModelSpec::Mode::AnalyticTable;
            } else if (*m == "physical") {
                mode = PerfectModelSpec::Mode::PhysicalTable3;
            } else {
                throw ConfigError(fmt::format("strategy.mode: unknown mode '{}' (valid: analytic, physical)", *m),
                                  kv.line_of("strategy.mode"));
            }
        }
        bool const reversal = kv.get_bool("strategy.role_reversal").value_or(true);
        auto const eta = kv.get_double("strategy.eta");
        auto const a = kv.get_double("strategy.a");
        auto const b = kv.get_double("strategy.b");
        if (eta && (a || b)) {
            throw ConfigError("give either strategy.eta or strategy.a and strategy.b, not both",
                              kv.line_of("strategy.eta"));
        }
        if (eta) {
            return at_line(kv, "strategy.eta", [&] {
                auto const ab = ab_from_eta(*eta);
                return PerfectModelSpec::create(ab.a, ab.b, mode, reversal);
            });
        }
        if (!a || !b) {
            throw ConfigError("perfect strategy needs strategy.eta or both strategy.a and strategy.b",
                              kv.line_of("strategy.kind"));
        }
        return at_line(kv, "strategy.a", [&] { return PerfectModelSpec::create(*a, *b, mode, reversal); });
    }
    if (*kind == "quantum") {
        std::string const name = kv.get_string("strategy.state").value_or("phi_plus");
        std::optional<TwoQubitState> state;
        if (name == "phi_plus") state = TwoQubitState::phi_plus();
        else if (name == "phi_minus") state = TwoQubitState::phi_minus();
        else if (name == "psi_plus") state = TwoQubitState::psi_plus();
        else if (name == "psi_minus") state = TwoQubitState::psi_minus();
        else {
            throw ConfigError(fmt::format("strategy.state: unknown state '{}' (valid: phi_plus, phi_minus, psi_plus, psi_minus)", name),
                              kv.line_of("strategy.state"));
        }
        double const rotation = kv.get_double("strategy.bob_rotation").value_or(0.0);
        double const eta = kv.get_double("strategy.eta_true").value_or(1.0);
        std::string label = rotation == 0.0 ? name : fmt::format("{}+bob_rotation({:.12g})", name, rotation);
        return at_line(kv, "strategy.eta_true", [&] {
            return QuantumSpec::create(state->rotated_bob(rotation), eta, label);
        });
    }
    throw ConfigError(fmt::format("unknown strategy '{}' (valid: {})", *kind, kStrategyNames),
                      kv.line_of("strategy.kind"));
}

}  // namespace

LoadedConfig load_config(std::istream& in, const std::filesystem::path& base_dir) {
    auto const kv = KeyValueFile::parse(in);
    LoadedConfig out;
    auto& run = out.run;
    run.settings = load_settings(kv);
    run.strategy = load_strategy(kv, run.settings);
    run.detector_model = load_detector(kv, base_dir);

    if (auto n = kv.get_uint("engine.trials")) {
        if (*n == 0) {
            throw ConfigError("engine.trials must be at least 1", kv.line_of("engine.trials"));
        }
        run.n_trials = *n;
    } else {
        run.n_trials = 1'000'000;
    }
    run.seed = kv.get_uint("engine.seed").value_or(0);
    if (auto t = kv.get_uint("engine.threads")) {
        if (*t == 0) {
            throw ConfigError("engine.threads must be at least 1", kv.line_of("engine.threads"));
        }
        run.threads = static_cast<unsigned>(*t);
    }
    if (auto bs = kv.get_uint("engine.batch_size")) {
        if (*bs == 0) {
            throw ConfigError("engine.batch_size must be at least 1", kv.line_of("engine.batch_size"));
        }
        run.batch_size = *bs;
    }
    if (auto p = kv.get_string("engine.double_click")) {
        auto policy = parse_double_click_policy(*p);
        if (!policy) {
            throw ConfigError(fmt::format("engine.double_click: unknown policy '{}' (valid: discard, randomize, flag)", *p),
                              kv.line_of("engine.double_click"));
        }
        run.double_click_policy = *policy;
    }
    if (auto path = kv.get_string("output.summary_csv")) {
        out.output.summary_csv = std::filesystem::path(*path);
    }
    kv.reject_unused();
    return out;
}

LoadedConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string(), 0);
    }
    return load_config(in, path.parent_path());
}

}  // namespace bellfake

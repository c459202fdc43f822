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


#include <sstream>

#include "bellfake/config.hpp"
#include "bellfake/errors.hpp"
#include "doctest.h"

using namespace bellfake;

namespace {

LoadedConfig load(const std::string& text, const std::filesystem::path& base = {}) {
    std::istringstream in(text);
    return load_config(in, base);
}

int error_line(const std::string& text) {
    try {
        load(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

std::string error_message(const std::string& text) {
    try {
        load(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("sections, comments and dotted keys") {
    std::istringstream in(
        "# leading comment\n"
        "top = 1\n"
        "[strategy]\n"
        "kind = perfect   ; trailing comment\n"
        "name = a#b\n"
        "engine.seed = 3\n"
        "[engine]\n"
        "  trials=12  \n");
    auto const kv = KeyValueFile::parse(in);
    CHECK(kv.get_string("top") == "1");
    CHECK(kv.get_string("strategy.kind") == "perfect");
    CHECK(kv.get_string("strategy.name") == "a#b");
    CHECK(kv.get_string("strategy.engine.seed") == "3");
    CHECK(kv.get_uint("engine.trials") == 12u);
    CHECK(kv.line_of("engine.trials") == 8);
    CHECK_FALSE(kv.get_string("engine.seed").has_value());
}

TEST_CASE("malformed key-value text") {
    std::istringstream dup("[a]\nx = 1\nx = 2\n");
    try {
        KeyValueFile::parse(dup);
        FAIL("duplicate key accepted");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream no_eq("[a]\njust words\n");
    CHECK_THROWS_AS(KeyValueFile::parse(no_eq), ConfigError);
    std::istringstream bad_section("[a\nx = 1\n");
    CHECK_THROWS_AS(KeyValueFile::parse(bad_section), ConfigError);

    std::istringstream typed("n = -3\nx = abc\nb = maybe\n");
    auto const kv = KeyValueFile::parse(typed);
    CHECK_THROWS_AS(kv.get_uint("n"), ConfigError);
    CHECK_THROWS_AS(kv.get_double("x"), ConfigError);
    CHECK_THROWS_AS(kv.get_bool("b"), ConfigError);
}

TEST_CASE("perfect model from efficiency") {
    auto const c = load(
        "[strategy]\nkind = perfect\neta = 0.9\n"
        "[engine]\ntrials = 5000\nseed = 42\nthreads = 2\ndouble_click = flag\n");
    auto const& spec = std::get<PerfectModelSpec>(c.run.strategy);
    CHECK(spec.a + spec.b == doctest::Approx(2.0 * 0.81));
    CHECK(spec.role_reversal);
    CHECK(spec.mode == PerfectModelSpec::Mode::AnalyticTable);
    CHECK(c.run.n_trials == 5000);
    CHECK(c.run.seed == 42);
    CHECK(c.run.threads == 2);
    CHECK(c.run.double_click_policy == DoubleClickPolicy::Flag);
    CHECK(c.run.settings == MeasurementSettings::defaults());
}

TEST_CASE("explicit settings and other strategies") {
    auto c = load(
        "[settings]\nalpha0 = 0\nalpha1 = 60\nbeta0 = 10\nbeta1 = 70\n"
        "[strategy]\nkind = perfect\na = 0.9\nb = 0.3\nmode = physical\nrole_reversal = false\n");
    CHECK(c.run.settings.alpha1().degrees() == 60.0);
    auto const& p = std::get<PerfectModelSpec>(c.run.strategy);
    CHECK(p.mode == PerfectModelSpec::Mode::PhysicalTable3);
    CHECK_FALSE(p.role_reversal);
    CHECK(c.run.n_trials == 1000000);

    c = load("[settings]\npreset = standard\n[strategy]\nkind = quantum\nstate = psi_minus\neta_true = 0.8\n");
    CHECK(c.run.settings == MeasurementSettings::standard_chsh());
    CHECK(std::get<QuantumSpec>(c.run.strategy).eta_true == 0.8);
    CHECK(std::get<QuantumSpec>(c.run.strategy).state_name == "psi_minus");

    c = load("[strategy]\nkind = improved\np2 = 0.3\ntrigger_intensity = 1.5\n");
    CHECK(std::get<ImprovedModelSpec>(c.run.strategy).trigger_intensity == 1.5);

    c = load("[strategy]\nkind = existing\ne_target = 0.5\n[detector]\nmodel = two_threshold\n"
             "i_never = 0.8\ni_always = 1.2\n[output]\nsummary_csv = out.csv\n");
    CHECK(std::get<ExistingModelSpec>(c.run.strategy).e_target == 0.5);
    CHECK(c.run.detector_model.click_probability(1.0) == doctest::Approx(0.5));
    CHECK(c.output.summary_csv == std::filesystem::path("out.csv"));
}

TEST_CASE("curve files resolve relative to the config directory") {
    auto const c = load("[strategy]\nkind = existing\n[detector]\ncurve_file = data/synthetic_response_curve.csv\n",
                        BELLFAKE_SOURCE_DIR);
    CHECK(c.run.detector_model.click_probability(0.5) == doctest::Approx(0.4));
    CHECK_THROWS_AS(load("[strategy]\nkind = existing\n[detector]\ncurve_file = missing.csv\n",
                         BELLFAKE_SOURCE_DIR),
                    InvalidArgument);
}

TEST_CASE("configuration errors carry line numbers") {
    CHECK(error_line("[strategy]\nkind = perfect\neta = 0.9\n[engine]\ntrials = 0\n") == 5);
    CHECK(error_line("[strategy]\nkind = perfect\neta = 0.9\ncolour = red\n") == 4);
    CHECK(error_line("[strategy]\nkind = perfect\na = 0.2\nb = 0.5\nmode = physical\n") > 0);
    CHECK(error_line("[strategy]\nkind = perfect\neta = 0.5\n") == 3);
    CHECK(error_line("[strategy]\nkind = perfect\neta = 0.9\n[engine]\ndouble_click = sometimes\n") == 5);

    auto const msg = error_message("[strategy]\nkind = magic\n");
    CHECK(msg.find("magic") != std::string::npos);
    CHECK(msg.find(kStrategyNames) != std::string::npos);
    CHECK(error_line("[strategy]\nkind = magic\n") == 2);

    CHECK_THROWS_AS(load("[engine]\ntrials = 10\n"), ConfigError);
    CHECK_THROWS_AS(load("[strategy]\nkind = perfect\neta = 0.9\na = 0.5\n"), ConfigError);
    CHECK_THROWS_AS(load("[strategy]\nkind = improved\n"), ConfigError);
    CHECK_THROWS_AS(load("[settings]\nalpha0 = 10\nalpha1 = 190\n[strategy]\nkind = existing\n"),
                    ConfigError);
}

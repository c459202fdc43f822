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

#include "bellfake/strategies.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "bellfake/errors.hpp"
#include "bellfake/optics.hpp"

namespace bellfake {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

double cos_sq_deg(double deg) {
    double const c = std::cos(deg * kDegree);
    return c * c;
}

double sin_sq_deg(double deg) {
    double const s = std::sin(deg * kDegree);
    return s * s;
}

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument(fmt::format("{} must lie in [0, 1], got {}", name, p));
    }
}

Outcome flip(Outcome o) noexcept {
    switch (o) {
        case Outcome::Plus: return Outcome::Minus;
        case Outcome::Minus: return Outcome::Plus;
        default: return o;
    }
}

}  // namespace

OutcomePair sample_joint(const JointDistribution& dist, Rng& rng) {
    double const u = rng.uniform();
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] <= 0.0) {
            continue;
        }
        last_nonzero = i;
        acc += dist[i];
        if (u < acc) {
            return {static_cast<Outcome>(i / 3), static_cast<Outcome>(i % 3)};
        }
    }
    // Rounding left u above the accumulated total.
    return {static_cast<Outcome>(last_nonzero / 3), static_cast<Outcome>(last_nonzero % 3)};
}

//---------------------------------------------------------------------------//
// Existing model
//---------------------------------------------------------------------------//

ExistingModelSpec ExistingModelSpec::create(double e_target) {
    require_probability(e_target, "e_target");
    // n_sim / n_dif = (1 + E) / (1 - E) with 2 n_sim + 2 n_dif = 1; the closed
    // form stays finite at E = 1 where n_dif vanishes.
    return {e_target, (1.0 + e_target) / 4.0, (1.0 - e_target) / 4.0};
}

bool table1_is_similar(Table1Cell cell) noexcept {
    static constexpr bool similar[4][4] = {
        {true, false, false, true},
        {false, true, true, false},
        {true, false, true, false},
        {false, true, false, true},
    };
    return similar[cell.alice & 3][cell.bob & 3];
}

double table1_probability(const ExistingModelSpec& spec, Table1Cell cell) noexcept {
    return (table1_is_similar(cell) ? spec.n_sim : spec.n_dif) / 4.0;
}

Table1Cell existing_sample_cell(const ExistingModelSpec& spec, Rng& rng) {
    double const u = rng.uniform();
    double acc = 0.0;
    Table1Cell last{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Table1Cell const cell{i, j};
            double const p = table1_probability(spec, cell);
            if (p <= 0.0) {
                continue;
            }
            last = cell;
            acc += p;
            if (u < acc) {
                return cell;
            }
        }
    }
    return last;
}

Angle table1_polarization(int label, Angle basis0, Angle basis1) {
    Angle const base = (label & 2) ? basis1 : basis0;
    return (label & 1) ? base.perpendicular() : base;
}

PulsePair existing_emit(const ExistingModelSpec& spec, const MeasurementSettings& settings,
                        Rng& rng) {
    auto const cell = existing_sample_cell(spec, rng);
    return {Pulse::polarized(table1_polarization(cell.alice, settings.alpha0(), settings.alpha1()),
                             kExistingIntensity),
            Pulse::polarized(table1_polarization(cell.bob, settings.beta0(), settings.beta1()),
                             kExistingIntensity)};
}

//---------------------------------------------------------------------------//
// Improved model
//---------------------------------------------------------------------------//

ImprovedModelSpec ImprovedModelSpec::create(double p2, const MeasurementSettings& settings,
                                            std::optional<double> trigger_intensity) {
    require_probability(p2, "p2");
    double const sep_a = separation(settings.alpha0(), settings.alpha1());
    double const sep_b = separation(settings.beta0(), settings.beta1());

    ImprovedModelSpec spec;
    spec.p2 = p2;
    spec.phi_a = std::abs(sep_a) / 2.0;
    spec.phi_b = std::abs(sep_b) / 2.0;
    spec.midpoint_alice = Angle(settings.alpha0().degrees() + sep_a / 2.0);
    spec.midpoint_bob = Angle(settings.beta0().degrees() + sep_b / 2.0);

    double const phi = std::max(spec.phi_a, spec.phi_b);
    double const lower = 1.0 / cos_sq_deg(phi);
    constexpr double upper = 2.0;
    if (!(lower < upper * (1.0 - 1e-9))) {
        throw InfeasibleGeometry(fmt::format(
            "midpoint pulses need 1/cos^2({}) < 2; the analyzer angles are too far apart", phi));
    }
    if (trigger_intensity) {
        double const i = *trigger_intensity;
        if (!(i >= lower && i < upper)) {
            throw InvalidArgument(fmt::format(
                "trigger intensity {} outside the window [{}, {})", i, lower, upper));
        }
        spec.trigger_intensity = i;
    } else {
        spec.trigger_intensity = 0.5 * (lower + upper);
    }
    return spec;
}

ImprovedEmission improved_emit(const ImprovedModelSpec& spec, const MeasurementSettings& settings,
                               Rng& rng) {
    if (rng.bernoulli(spec.p2)) {
        return {{Pulse::polarized(spec.midpoint_alice, spec.trigger_intensity),
                 Pulse::polarized(spec.midpoint_bob, spec.trigger_intensity)},
                true};
    }
    static ExistingModelSpec const deterministic = ExistingModelSpec::create(1.0);
    return {existing_emit(deterministic, settings, rng), false};
}

OutcomePair symmetrize(OutcomePair outcomes, Rng& rng) {
    if (rng.coin()) {
        return {flip(outcomes.alice), flip(outcomes.bob)};
    }
    return outcomes;
}

//---------------------------------------------------------------------------//
// Control rows
//---------------------------------------------------------------------------//

std::string_view to_string(Table3Row row) noexcept {
    switch (row) {
        case Table3Row::Plain: return "plain";
        case Table3Row::TowardPartner: return "toward_partner";
        case Table3Row::TowardPartnerPerp: return "toward_partner_perp";
        case Table3Row::Vacuum: return "vacuum";
    }
    return "vacuum";
}

double IntensityWindow::chosen() const noexcept {
    if (!std::isfinite(upper)) {
        return 2.0 * lower;
    }
    return 0.5 * (lower + upper);
}

Table3Geometry table3_geometry(Angle own, Angle partner) {
    return {std::abs(separation(own, partner)) / 2.0,
            std::abs(separation(own, partner.perpendicular())) / 2.0};
}

IntensityWindow feasible_intensity_window(Table3Row row, double phi0_deg, double phi1_deg) {
    auto midpoint_row = [](double phi) {
        double const s = sin_sq_deg(phi);
        return IntensityWindow{1.0 / cos_sq_deg(phi),
                               s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity()};
    };
    IntensityWindow w;
    switch (row) {
        case Table3Row::Plain: {
            double const worst = std::max(cos_sq_deg(2.0 * phi0_deg), sin_sq_deg(2.0 * phi0_deg));
            w = {1.0, 1.0 / worst};
            break;
        }
        case Table3Row::TowardPartner: w = midpoint_row(phi0_deg); break;
        case Table3Row::TowardPartnerPerp: w = midpoint_row(phi1_deg); break;
        case Table3Row::Vacuum: throw InvalidArgument("the vacuum row has no intensity window");
    }
    // Windows narrower than rounding noise are degenerate (e.g. cos^2 = sin^2).
    if (!(w.upper > w.lower * (1.0 + 1e-9))) {
        w.upper = w.lower;
    }
    return w;
}

Pulse control_pulse_for(Table3Row row, Angle own, Angle partner) {
    if (row == Table3Row::Vacuum) {
        return Pulse::vacuum();
    }
    auto const geo = table3_geometry(own, partner);
    auto const window = feasible_intensity_window(row, geo.phi0, geo.phi1);
    if (window.empty()) {
        throw InfeasibleGeometry(fmt::format(
            "no intensity realizes row '{}' for analyzer angles {} and {} (phi0={}, phi1={})",
            to_string(row), own.degrees(), partner.degrees(), geo.phi0, geo.phi1));
    }
    Angle pol = own;
    if (row == Table3Row::TowardPartner) {
        pol = Angle(own.degrees() + separation(own, partner) / 2.0);
    } else if (row == Table3Row::TowardPartnerPerp) {
        pol = Angle(own.degrees() + separation(own, partner.perpendicular()) / 2.0);
    }
    return Pulse::polarized(pol, window.chosen());
}

Table3Row sample_table3_row(double a, double b, Rng& rng) {
    require_probability(a, "a");
    require_probability(b, "b");
    if (a < b) {
        throw InvalidArgument(fmt::format("control rows need a >= b (a={}, b={})", a, b));
    }
    double const u = rng.uniform();
    if (u < a - b) return Table3Row::Plain;
    if (u < a - 0.5 * b) return Table3Row::TowardPartner;
    if (u < a) return Table3Row::TowardPartnerPerp;
    return Table3Row::Vacuum;
}

//---------------------------------------------------------------------------//
// Perfect model
//---------------------------------------------------------------------------//

PerfectModelSpec PerfectModelSpec::create(double a, double b, Mode mode, bool role_reversal) {
    require_probability(a, "a");
    require_probability(b, "b");
    if (mode == Mode::PhysicalTable3 && a < b) {
        throw InvalidArgument(
            fmt::format("physical control needs a >= b (a={}, b={})", a, b));
    }
    return {a, b, mode, role_reversal};
}

PerfectPlan perfect_emit(const PerfectModelSpec& spec, const MeasurementSettings& settings,
                         std::uint64_t trial_index, Rng& rng) {
    PerfectPlan plan;
    plan.label = rng.coin() ? SourceLabel::X1 : SourceLabel::X0;
    plan.reversed = spec.role_reversal && (trial_index & 1u) != 0;
    if (spec.mode == PerfectModelSpec::Mode::PhysicalTable3) {
        int const own = static_cast<int>(plan.label);
        Angle const own_angle = plan.reversed ? settings.bob(static_cast<BobBasis>(own))
                                              : settings.alice(static_cast<AliceBasis>(own));
        Angle const partner_angle = plan.reversed
                                        ? settings.bob(static_cast<BobBasis>(1 - own))
                                        : settings.alice(static_cast<AliceBasis>(1 - own));
        plan.control = control_pulse_for(sample_table3_row(spec.a, spec.b, rng), own_angle,
                                         partner_angle);
    }
    return plan;
}

Outcome perfect_deterministic_outcome(SourceLabel label, bool reversed, int measured_basis) noexcept {
    bool const x1 = label == SourceLabel::X1;
    if (!reversed) {
        // Bob: beta0 light gives + under beta0 and - under beta1; beta1 light gives +.
        return (!x1 && measured_basis == 1) ? Outcome::Minus : Outcome::Plus;
    }
    // Alice: alpha0 light gives +; alpha1 light gives - under alpha0 and + under alpha1.
    return (x1 && measured_basis == 0) ? Outcome::Minus : Outcome::Plus;
}

JointDistribution perfect_joint_distribution(double a, double b, SourceLabel label, bool reversed,
                                             SettingPair setting) {
    int const alice_basis = static_cast<int>(setting.alice);
    int const bob_basis = static_cast<int>(setting.bob);
    int const random_basis = reversed ? bob_basis : alice_basis;
    int const det_basis = reversed ? alice_basis : bob_basis;

    std::array<double, 3> random_side{};
    if (random_basis == static_cast<int>(label)) {
        random_side = {a, 0.0, 1.0 - a};
    } else {
        random_side = {b / 2.0, b / 2.0, 1.0 - b};
    }
    Outcome const det = perfect_deterministic_outcome(label, reversed, det_basis);

    JointDistribution dist{};
    for (int o = 0; o < 3; ++o) {
        auto const r = static_cast<Outcome>(o);
        std::size_t const idx = reversed ? joint_index(det, r) : joint_index(r, det);
        dist[idx] = random_side[o];
    }
    return dist;
}

JointDistribution perfect_setting_distribution(double a, double b, bool role_reversal,
                                               SettingPair setting) {
    JointDistribution total{};
    int const roles = role_reversal ? 2 : 1;
    double const weight = 1.0 / (2.0 * roles);
    for (int r = 0; r < roles; ++r) {
        for (auto const label : {SourceLabel::X0, SourceLabel::X1}) {
            auto const d = perfect_joint_distribution(a, b, label, r == 1, setting);
            for (std::size_t i = 0; i < total.size(); ++i) {
                total[i] += weight * d[i];
            }
        }
    }
    return total;
}

TrialResult perfect_outcomes(const PerfectModelSpec& spec, const PerfectPlan& plan,
                             const MeasurementSettings& settings, SettingPair setting,
                             const DetectorModel& detector, DoubleClickPolicy policy, Rng& rng) {
    if (spec.mode == PerfectModelSpec::Mode::AnalyticTable || !plan.control) {
        return {sample_joint(
                    perfect_joint_distribution(spec.a, spec.b, plan.label, plan.reversed, setting),
                    rng),
                false};
    }
    int const alice_basis = static_cast<int>(setting.alice);
    int const bob_basis = static_cast<int>(setting.bob);
    TrialResult result;
    if (!plan.reversed) {
        auto const r = analyze(*plan.control, settings.alice(setting.alice), detector, detector,
                               policy, rng);
        result.outcomes = {r.outcome,
                           perfect_deterministic_outcome(plan.label, false, bob_basis)};
        result.double_event = r.double_click;
    } else {
        auto const r =
            analyze(*plan.control, settings.bob(setting.bob), detector, detector, policy, rng);
        result.outcomes = {perfect_deterministic_outcome(plan.label, true, alice_basis),
                           r.outcome};
        result.double_event = r.double_click;
    }
    return result;
}

//---------------------------------------------------------------------------//
// Quantum baseline
//---------------------------------------------------------------------------//

TwoQubitState::TwoQubitState(const Amplitudes& amplitudes) : amp_(amplitudes) {
    double norm = 0.0;
    for (auto const& z : amp_) {
        norm += std::norm(z);
    }
    if (!(std::abs(norm - 1.0) <= 1e-9)) {
        throw InvalidArgument(fmt::format("two-qubit state is not normalized (norm^2 = {})", norm));
    }
}

TwoQubitState TwoQubitState::phi_plus() {
    double const h = std::numbers::sqrt2 / 2.0;
    return TwoQubitState({h, 0.0, 0.0, h});
}

TwoQubitState TwoQubitState::phi_minus() {
    double const h = std::numbers::sqrt2 / 2.0;
    return TwoQubitState({h, 0.0, 0.0, -h});
}

TwoQubitState TwoQubitState::psi_plus() {
    double const h = std::numbers::sqrt2 / 2.0;
    return TwoQubitState({0.0, h, h, 0.0});
}

TwoQubitState TwoQubitState::psi_minus() {
    double const h = std::numbers::sqrt2 / 2.0;
    return TwoQubitState({0.0, h, -h, 0.0});
}

TwoQubitState TwoQubitState::rotated_bob(double degrees) const {
    double const c = std::cos(degrees * kDegree);
    double const s = std::sin(degrees * kDegree);
    Amplitudes out{};
    for (int i = 0; i < 2; ++i) {
        auto const h = amp_[2 * i];
        auto const v = amp_[2 * i + 1];
        out[2 * i] = c * h - s * v;
        out[2 * i + 1] = s * h + c * v;
    }
    return TwoQubitState(out);
}

std::array<double, 4> quantum_joint_probabilities(const TwoQubitState& state, Angle alpha,
                                                  Angle beta) {
    auto basis = [](Angle t, int sign) -> std::array<double, 2> {
        double const c = std::cos(t.radians());
        double const s = std::sin(t.radians());
        return sign == 0 ? std::array<double, 2>{c, s} : std::array<double, 2>{-s, c};
    };
    auto const& psi = state.amplitudes();
    std::array<double, 4> p{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            auto const u = basis(alpha, x);
            auto const w = basis(beta, y);
            std::complex<double> amp = 0.0;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    amp += u[i] * w[j] * psi[2 * i + j];
                }
            }
            p[2 * x + y] = std::norm(amp);
        }
    }
    return p;
}

double quantum_correlation(Angle alpha, Angle beta, const TwoQubitState& state) {
    auto const p = quantum_joint_probabilities(state, alpha, beta);
    return p[0] + p[3] - p[1] - p[2];
}

QuantumSpec QuantumSpec::create(TwoQubitState state, double eta_true, std::string state_name) {
    require_probability(eta_true, "eta_true");
    return {std::move(state), eta_true, std::move(state_name)};
}

JointDistribution quantum_joint_distribution(const QuantumSpec& spec,
                                             const MeasurementSettings& settings,
                                             SettingPair setting) {
    auto const q = quantum_joint_probabilities(spec.state, settings.alice(setting.alice),
                                               settings.bob(setting.bob));
    double const eta = spec.eta_true;
    double const lost = 1.0 - eta;
    std::array<double, 2> const alice_marginal{q[0] + q[1], q[2] + q[3]};
    std::array<double, 2> const bob_marginal{q[0] + q[2], q[1] + q[3]};

    JointDistribution dist{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            dist[joint_index(static_cast<Outcome>(x), static_cast<Outcome>(y))] =
                eta * eta * q[2 * x + y];
        }
        dist[joint_index(static_cast<Outcome>(x), Outcome::Inconclusive)] =
            eta * lost * alice_marginal[x];
        dist[joint_index(Outcome::Inconclusive, static_cast<Outcome>(x))] =
            lost * eta * bob_marginal[x];
    }
    dist[joint_index(Outcome::Inconclusive, Outcome::Inconclusive)] = lost * lost;
    return dist;
}

OutcomePair quantum_emit(const QuantumSpec& spec, const MeasurementSettings& settings,
                         SettingPair setting, Rng& rng) {
    return sample_joint(quantum_joint_distribution(spec, settings, setting), rng);
}

}  // namespace bellfake

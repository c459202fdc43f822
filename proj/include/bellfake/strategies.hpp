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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "bellfake/core.hpp"
#include "bellfake/detector.hpp"
#include "bellfake/rng.hpp"

namespace bellfake {

//---------------------------------------------------------------------------//
// Joint outcome distributions
//---------------------------------------------------------------------------//

/*!
 * Probabilities of the nine joint outcomes (Alice, Bob) over {+, -, ?}^2,
 * stored row-major with Alice as the row.
 */
using JointDistribution = std::array<double, 9>;

constexpr std::size_t joint_index(Outcome alice, Outcome bob) noexcept {
    return 3 * static_cast<std::size_t>(alice) + static_cast<std::size_t>(bob);
}

//! Draw one joint outcome with a single uniform variate.
OutcomePair sample_joint(const JointDistribution& dist, Rng& rng);

//---------------------------------------------------------------------------//
// Existing model: deterministic outcomes from a tabulated source
//---------------------------------------------------------------------------//

/*!
 * Source statistics reproducing a target |E| in every setting.
 *
 * n_sim and n_dif are the per-setting weights of similar and different
 * outcomes, normalized so that 2 n_sim + 2 n_dif = 1.
 */
struct ExistingModelSpec {
    double e_target = 1.0;
    double n_sim = 0.5;
    double n_dif = 0.0;

    static ExistingModelSpec create(double e_target);
};

/*!
 * Polarization labels of the 4x4 source table. Index 0..3 maps to
 * {x0, x0-perp, x1, x1-perp} where x is alpha for Alice and beta for Bob.
 */
struct Table1Cell {
    int alice = 0;
    int bob = 0;
};

//! Whether a source cell carries the n_sim weight.
bool table1_is_similar(Table1Cell cell) noexcept;
double table1_probability(const ExistingModelSpec& spec, Table1Cell cell) noexcept;
Table1Cell existing_sample_cell(const ExistingModelSpec& spec, Rng& rng);

//! Polarization for a table label given a party's two basis angles.
Angle table1_polarization(int label, Angle basis0, Angle basis1);

//! Threshold-level pulses: matched bases click, conjugate bases stay dark.
inline constexpr double kExistingIntensity = 1.0;

PulsePair existing_emit(const ExistingModelSpec& spec, const MeasurementSettings& settings,
                        Rng& rng);

//---------------------------------------------------------------------------//
// Improved model: mixture of the existing model and midpoint pulses
//---------------------------------------------------------------------------//

/*!
 * Mixture weights and geometry of the improved model.
 *
 * Method 2 sends each party light polarized midway between its two analyzer
 * angles. phi_a and phi_b are the half-separations (taken along the shorter
 * arc of the 180-degree circle) and the trigger intensity must lie in
 * [1/cos^2(phi), 2) for the larger of the two.
 */
struct ImprovedModelSpec {
    double p2 = 0.0;
    double phi_a = 0.0;
    double phi_b = 0.0;
    double trigger_intensity = 0.0;
    Angle midpoint_alice;
    Angle midpoint_bob;

    //! Omitted trigger intensity selects the middle of the allowed window.
    static ImprovedModelSpec create(double p2, const MeasurementSettings& settings,
                                    std::optional<double> trigger_intensity = std::nullopt);
};

struct ImprovedEmission {
    PulsePair pulses;
    bool method2 = false;
};

ImprovedEmission improved_emit(const ImprovedModelSpec& spec, const MeasurementSettings& settings,
                               Rng& rng);

//! Joint sign flip with probability 1/2; non-conclusive outcomes pass through.
OutcomePair symmetrize(OutcomePair outcomes, Rng& rng);

//---------------------------------------------------------------------------//
// Control of a and b through pulse shaping
//---------------------------------------------------------------------------//

enum class Table3Row {
    Plain,              //!< probability a - b, polarization x0
    TowardPartner,      //!< probability b/2, halfway to x1
    TowardPartnerPerp,  //!< probability b/2, halfway to x1-perp
    Vacuum,             //!< probability 1 - a
};

std::string_view to_string(Table3Row row) noexcept;
inline constexpr std::array<Table3Row, 4> all_table3_rows{
    Table3Row::Plain, Table3Row::TowardPartner, Table3Row::TowardPartnerPerp, Table3Row::Vacuum};

//! Half-open intensity interval [lower, upper) in threshold units.
struct IntensityWindow {
    double lower = 0.0;
    double upper = 0.0;

    bool empty() const noexcept { return !(lower < upper); }
    //! Middle of the window; twice the lower edge when unbounded above.
    double chosen() const noexcept;
};

//! Half-angles of the control construction for one party.
struct Table3Geometry {
    double phi0 = 0.0;  //!< |x0 - x1| / 2
    double phi1 = 0.0;  //!< |x0 - x1_perp| / 2
};

Table3Geometry table3_geometry(Angle own, Angle partner);

//! Intensities meeting a row's click constraints. Vacuum has no window.
IntensityWindow feasible_intensity_window(Table3Row row, double phi0_deg, double phi1_deg);

/*!
 * Pulse realizing a row for a party whose matching basis is `own` and whose
 * other basis is `partner`. Throws InfeasibleGeometry on an empty window.
 */
Pulse control_pulse_for(Table3Row row, Angle own, Angle partner);

//! Draws a row with probabilities a - b, b/2, b/2, 1 - a. Requires a >= b.
Table3Row sample_table3_row(double a, double b, Rng& rng);

//---------------------------------------------------------------------------//
// Perfect model
//---------------------------------------------------------------------------//

struct PerfectModelSpec {
    enum class Mode { AnalyticTable, PhysicalTable3 };

    double a = 1.0;
    double b = 1.0;
    Mode mode = Mode::AnalyticTable;
    bool role_reversal = true;

    static PerfectModelSpec create(double a, double b, Mode mode = Mode::AnalyticTable,
                                   bool role_reversal = true);
};

//! The two source labels: (alpha0, beta0) and (alpha1, beta1).
enum class SourceLabel : std::uint8_t { X0 = 0, X1 = 1 };

struct PerfectPlan {
    SourceLabel label = SourceLabel::X0;
    //! Alice plays the deterministic role on this trial.
    bool reversed = false;
    //! Control pulse for the probabilistic party (physical mode only).
    std::optional<Pulse> control;
};

/*!
 * Source step of the perfect model. With role reversal the deterministic
 * role moves to Alice on odd trial indices.
 */
PerfectPlan perfect_emit(const PerfectModelSpec& spec, const MeasurementSettings& settings,
                         std::uint64_t trial_index, Rng& rng);

//! Outcome of the deterministic party (Bob normally, Alice when reversed).
Outcome perfect_deterministic_outcome(SourceLabel label, bool reversed, int measured_basis) noexcept;

//! Joint distribution of the perfect model for one source label and setting.
JointDistribution perfect_joint_distribution(double a, double b, SourceLabel label, bool reversed,
                                             SettingPair setting);

/*!
 * Joint distribution at one setting after averaging over the two source
 * labels and, with role reversal, over both role assignments.
 */
JointDistribution perfect_setting_distribution(double a, double b, bool role_reversal,
                                               SettingPair setting);

struct TrialResult {
    OutcomePair outcomes;
    bool double_event = false;
};

/*!
 * Outcomes of a perfect-model trial once the settings are revealed. In
 * physical mode the control pulse goes through the analyzer built from
 * `detector`; in analytic mode the detector is unused.
 */
TrialResult perfect_outcomes(const PerfectModelSpec& spec, const PerfectPlan& plan,
                             const MeasurementSettings& settings, SettingPair setting,
                             const DetectorModel& detector, DoubleClickPolicy policy, Rng& rng);

//---------------------------------------------------------------------------//
// Honest quantum baseline
//---------------------------------------------------------------------------//

//! Two-qubit polarization state in the basis |HH>, |HV>, |VH>, |VV>.
class TwoQubitState {
  public:
    using Amplitudes = std::array<std::complex<double>, 4>;

    //! Rejects states whose norm differs from 1 by more than 1e-9.
    explicit TwoQubitState(const Amplitudes& amplitudes);

    static TwoQubitState phi_plus();
    static TwoQubitState phi_minus();
    static TwoQubitState psi_plus();
    static TwoQubitState psi_minus();

    //! Apply a polarization rotation by `degrees` to Bob's photon.
    TwoQubitState rotated_bob(double degrees) const;

    const Amplitudes& amplitudes() const noexcept { return amp_; }

  private:
    Amplitudes amp_;
};

//! Probabilities of ++, +-, -+, -- for analyzer angles alpha and beta.
std::array<double, 4> quantum_joint_probabilities(const TwoQubitState& state, Angle alpha,
                                                  Angle beta);

double quantum_correlation(Angle alpha, Angle beta, const TwoQubitState& state);

struct QuantumSpec {
    TwoQubitState state = TwoQubitState::phi_plus();
    double eta_true = 1.0;
    std::string state_name = "phi_plus";

    static QuantumSpec create(TwoQubitState state, double eta_true,
                              std::string state_name = "custom");
};

//! Joint distribution over {+, -, ?}^2 after independent per-side loss.
JointDistribution quantum_joint_distribution(const QuantumSpec& spec,
                                             const MeasurementSettings& settings,
                                             SettingPair setting);

OutcomePair quantum_emit(const QuantumSpec& spec, const MeasurementSettings& settings,
                         SettingPair setting, Rng& rng);

}  // namespace bellfake

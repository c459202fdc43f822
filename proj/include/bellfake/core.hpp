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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bellfake {

//---------------------------------------------------------------------------//
/*!
 * Linear polarization angle in degrees.
 *
 * Polarization is 180-degree periodic, so every angle is stored in the
 * half-open interval [-90, 90).
 */
class Angle {
  public:
    constexpr Angle() = default;
    explicit Angle(double degrees) : degrees_(normalize(degrees)) {}

    double degrees() const noexcept { return degrees_; }
    double radians() const noexcept;

    //! Orthogonal polarization (rotated by 90 degrees).
    Angle perpendicular() const { return Angle(degrees_ + 90.0); }

    //! Map any real angle into [-90, 90). Values already inside are returned
    //! unchanged, which makes the map idempotent in floating point.
    static double normalize(double degrees);

    friend bool operator==(Angle, Angle) = default;

  private:
    double degrees_ = 0.0;
};

//! Signed separation from `from` to `to`, normalized into [-90, 90).
double separation(Angle from, Angle to);

//---------------------------------------------------------------------------//
enum class AliceBasis : std::uint8_t { A0 = 0, A1 = 1 };
enum class BobBasis : std::uint8_t { B0 = 0, B1 = 1 };

//! One of the four joint setting choices. Index order: 00, 10, 01, 11.
struct SettingPair {
    AliceBasis alice = AliceBasis::A0;
    BobBasis bob = BobBasis::B0;

    static constexpr std::size_t count = 4;

    constexpr std::size_t index() const noexcept {
        return static_cast<std::size_t>(alice) + 2 * static_cast<std::size_t>(bob);
    }
    static constexpr SettingPair from_index(std::size_t i) noexcept {
        return {static_cast<AliceBasis>(i & 1u), static_cast<BobBasis>((i >> 1) & 1u)};
    }
    //! Label such as "a1b0".
    std::string label() const;

    friend constexpr bool operator==(SettingPair, SettingPair) = default;
};

inline constexpr std::array<SettingPair, 4> all_setting_pairs{
    SettingPair::from_index(0), SettingPair::from_index(1), SettingPair::from_index(2),
    SettingPair::from_index(3)};

//---------------------------------------------------------------------------//
//! The four analyzer angles. Construction rejects coincident angles per party.
class MeasurementSettings {
  public:
    MeasurementSettings(Angle alpha0, Angle alpha1, Angle beta0, Angle beta1);

    //! Default asymmetric angle set: alpha0=-78.75, alpha1=56.25, beta0=11.25, beta1=-33.75.
    static MeasurementSettings defaults();
    //! The textbook optimum for the Phi+ state: 0, 45 (Alice), 22.5, 67.5 (Bob).
    static MeasurementSettings standard_chsh();

    Angle alpha0() const noexcept { return alpha_[0]; }
    Angle alpha1() const noexcept { return alpha_[1]; }
    Angle beta0() const noexcept { return beta_[0]; }
    Angle beta1() const noexcept { return beta_[1]; }

    Angle alice(AliceBasis b) const noexcept { return alpha_[static_cast<int>(b)]; }
    Angle bob(BobBasis b) const noexcept { return beta_[static_cast<int>(b)]; }

    friend bool operator==(const MeasurementSettings&, const MeasurementSettings&) = default;

  private:
    std::array<Angle, 2> alpha_;
    std::array<Angle, 2> beta_;
};

//---------------------------------------------------------------------------//
enum class Outcome : std::uint8_t { Plus = 0, Minus = 1, Inconclusive = 2, Double = 3 };

inline constexpr bool is_conclusive(Outcome o) noexcept {
    return o == Outcome::Plus || o == Outcome::Minus;
}
char outcome_symbol(Outcome o) noexcept;

struct OutcomePair {
    Outcome alice = Outcome::Inconclusive;
    Outcome bob = Outcome::Inconclusive;

    friend constexpr bool operator==(OutcomePair, OutcomePair) = default;
};

//! How simultaneous clicks in both detectors of one analyzer are reported.
enum class DoubleClickPolicy : std::uint8_t {
    Discard,    //!< report Inconclusive, count the event separately
    Randomize,  //!< report Plus or Minus with probability 1/2
    Flag,       //!< report Double
};

std::string_view to_string(DoubleClickPolicy p) noexcept;
std::optional<DoubleClickPolicy> parse_double_click_policy(std::string_view s) noexcept;

//---------------------------------------------------------------------------//
/*!
 * Light pulse sent towards one party. Intensity is in units of the ideal
 * detector threshold; a vacuum pulse has no polarization and zero intensity.
 */
class Pulse {
  public:
    //! Vacuum.
    constexpr Pulse() = default;

    static Pulse vacuum() { return {}; }
    //! Rejects non-positive or non-finite intensities.
    static Pulse polarized(Angle polarization, double intensity);

    bool is_vacuum() const noexcept { return !polarization_; }
    const std::optional<Angle>& polarization() const noexcept { return polarization_; }
    double intensity() const noexcept { return intensity_; }

    friend bool operator==(const Pulse&, const Pulse&) = default;

  private:
    Pulse(Angle pol, double intensity) : polarization_(pol), intensity_(intensity) {}

    std::optional<Angle> polarization_;
    double intensity_ = 0.0;
};

struct PulsePair {
    Pulse alice;
    Pulse bob;
};

//---------------------------------------------------------------------------//
/*!
 * Tally of joint outcomes for one setting pair.
 *
 * The 4x4 joint table is indexed by (Alice outcome, Bob outcome). Every trial
 * lands in exactly one cell, so the named categories plus flagged trials
 * always sum to `trials()`. `double_events()` counts trials in which at least
 * one analyzer saw a double click, whatever the policy did with it.
 */
class SettingCounts {
  public:
    SettingCounts() = default;

    //! Validating constructor; rejects tables inconsistent with the policy.
    SettingCounts(const std::array<std::uint64_t, 16>& joint, std::uint64_t double_events,
                  DoubleClickPolicy policy);

    void record(OutcomePair o, bool double_event) noexcept {
        ++joint_[cell(o.alice, o.bob)];
        double_events_ += double_event ? 1 : 0;
    }

    std::uint64_t joint(Outcome a, Outcome b) const noexcept { return joint_[cell(a, b)]; }
    const std::array<std::uint64_t, 16>& joint_table() const noexcept { return joint_; }

    std::uint64_t n_pp() const noexcept { return joint(Outcome::Plus, Outcome::Plus); }
    std::uint64_t n_pm() const noexcept { return joint(Outcome::Plus, Outcome::Minus); }
    std::uint64_t n_mp() const noexcept { return joint(Outcome::Minus, Outcome::Plus); }
    std::uint64_t n_mm() const noexcept { return joint(Outcome::Minus, Outcome::Minus); }
    std::uint64_t n_coincidences() const noexcept { return n_pp() + n_pm() + n_mp() + n_mm(); }
    std::uint64_t n_alice_only() const noexcept;
    std::uint64_t n_bob_only() const noexcept;
    std::uint64_t n_neither() const noexcept;
    //! Trials removed because either side reported Double (Flag policy only).
    std::uint64_t n_flagged() const noexcept;
    std::uint64_t double_events() const noexcept { return double_events_; }
    std::uint64_t trials() const noexcept;

    //! Trials in which Alice (Bob) reported Plus or Minus.
    std::uint64_t alice_conclusive() const noexcept;
    std::uint64_t bob_conclusive() const noexcept;

    SettingCounts& operator+=(const SettingCounts& other) noexcept;
    friend bool operator==(const SettingCounts&, const SettingCounts&) = default;

  private:
    static constexpr std::size_t cell(Outcome a, Outcome b) noexcept {
        return 4 * static_cast<std::size_t>(a) + static_cast<std::size_t>(b);
    }

    std::array<std::uint64_t, 16> joint_{};
    std::uint64_t double_events_ = 0;
};

//! Per-setting tallies for a whole run.
class CoincidenceCounts {
  public:
    explicit CoincidenceCounts(DoubleClickPolicy policy = DoubleClickPolicy::Discard)
        : policy_(policy) {}
    //! Validating constructor.
    CoincidenceCounts(const std::array<SettingCounts, 4>& per_setting, DoubleClickPolicy policy);

    void record(SettingPair s, OutcomePair o, bool double_event) noexcept {
        per_setting_[s.index()].record(o, double_event);
    }

    const SettingCounts& operator[](SettingPair s) const noexcept {
        return per_setting_[s.index()];
    }
    const std::array<SettingCounts, 4>& per_setting() const noexcept { return per_setting_; }
    DoubleClickPolicy policy() const noexcept { return policy_; }

    std::uint64_t trials() const noexcept;
    std::uint64_t coincidences() const noexcept;
    std::uint64_t alice_conclusive() const noexcept;
    std::uint64_t bob_conclusive() const noexcept;
    std::uint64_t double_events() const noexcept;

    //! Component-wise addition; policies must agree.
    CoincidenceCounts& operator+=(const CoincidenceCounts& other);
    friend bool operator==(const CoincidenceCounts&, const CoincidenceCounts&) = default;

  private:
    std::array<SettingCounts, 4> per_setting_{};
    DoubleClickPolicy policy_;
};

//---------------------------------------------------------------------------//
//! Statistics of one simulation run.
struct RunSummary {
    CoincidenceCounts counts;
    //! Correlation per setting, indexed by SettingPair::index().
    std::array<double, 4> correlations{};
    double s_value = 0.0;
    //! Binomial standard error of s_value.
    double s_stderr = 0.0;
    double eta_alice = 0.0;
    double eta_bob = 0.0;
    //! Square root of the overall coincidence fraction.
    double eta_symmetric = 0.0;
    double eta_symmetric_stderr = 0.0;
    std::uint64_t seed = 0;
    std::string strategy_label;
    std::optional<MeasurementSettings> settings;
};

}  // namespace bellfake

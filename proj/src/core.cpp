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

#include "bellfake/core.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "bellfake/errors.hpp"

namespace bellfake {

double Angle::normalize(double degrees) {
    if (!std::isfinite(degrees)) {
        throw InvalidArgument("angle must be finite");
    }
    if (degrees >= -90.0 && degrees < 90.0) {
        return degrees;
    }
    double r = std::fmod(degrees + 90.0, 180.0);
    if (r < 0.0) {
        r += 180.0;
    }
    r -= 90.0;
    // Rounding in the shift can land exactly on the excluded endpoint.
    if (r >= 90.0) {
        r -= 180.0;
    }
    if (r < -90.0) {
        r = -90.0;
    }
    return r;
}

double Angle::radians() const noexcept { return degrees_ * std::numbers::pi / 180.0; }

double separation(Angle from, Angle to) { return Angle::normalize(to.degrees() - from.degrees()); }

std::string SettingPair::label() const {
    std::string s = "a0b0";
    s[1] = alice == AliceBasis::A0 ? '0' : '1';
    s[3] = bob == BobBasis::B0 ? '0' : '1';
    return s;
}

//---------------------------------------------------------------------------//
MeasurementSettings::MeasurementSettings(Angle alpha0, Angle alpha1, Angle beta0, Angle beta1)
    : alpha_{alpha0, alpha1}, beta_{beta0, beta1} {
    if (alpha0 == alpha1) {
        throw InvalidArgument("alpha0 and alpha1 must differ");
    }
    if (beta0 == beta1) {
        throw InvalidArgument("beta0 and beta1 must differ");
    }
}

MeasurementSettings MeasurementSettings::defaults() {
    return {Angle(-78.75), Angle(56.25), Angle(11.25), Angle(-33.75)};
}

MeasurementSettings MeasurementSettings::standard_chsh() {
    return {Angle(0.0), Angle(45.0), Angle(22.5), Angle(67.5)};
}

//---------------------------------------------------------------------------//
char outcome_symbol(Outcome o) noexcept {
    switch (o) {
        case Outcome::Plus: return '+';
        case Outcome::Minus: return '-';
        case Outcome::Inconclusive: return '?';
        case Outcome::Double: return 'D';
    }
    return '?';
}

std::string_view to_string(DoubleClickPolicy p) noexcept {
    switch (p) {
        case DoubleClickPolicy::Discard: return "discard";
        case DoubleClickPolicy::Randomize: return "randomize";
        case DoubleClickPolicy::Flag: return "flag";
    }
    return "discard";
}

std::optional<DoubleClickPolicy> parse_double_click_policy(std::string_view s) noexcept {
    if (s == "discard") return DoubleClickPolicy::Discard;
    if (s == "randomize") return DoubleClickPolicy::Randomize;
    if (s == "flag") return DoubleClickPolicy::Flag;
    return std::nullopt;
}

Pulse Pulse::polarized(Angle polarization, double intensity) {
    if (!(intensity > 0.0) || !std::isfinite(intensity)) {
        throw InvalidArgument("polarized pulse needs a finite positive intensity; use vacuum()");
    }
    return {polarization, intensity};
}

//---------------------------------------------------------------------------//
SettingCounts::SettingCounts(const std::array<std::uint64_t, 16>& joint,
                             std::uint64_t double_events, DoubleClickPolicy policy)
    : joint_(joint), double_events_(double_events) {
    std::uint64_t const flagged = n_flagged();
    if (policy != DoubleClickPolicy::Flag && flagged != 0) {
        throw InvalidArgument("Double outcomes recorded under policy "
                              + std::string(to_string(policy)));
    }
    if (double_events_ < flagged) {
        throw InvalidArgument("fewer double-click events than flagged trials");
    }
    if (double_events_ > trials()) {
        throw InvalidArgument("more double-click events than trials");
    }
}

std::uint64_t SettingCounts::n_alice_only() const noexcept {
    return joint(Outcome::Plus, Outcome::Inconclusive) + joint(Outcome::Minus, Outcome::Inconclusive);
}

std::uint64_t SettingCounts::n_bob_only() const noexcept {
    return joint(Outcome::Inconclusive, Outcome::Plus) + joint(Outcome::Inconclusive, Outcome::Minus);
}

std::uint64_t SettingCounts::n_neither() const noexcept {
    return joint(Outcome::Inconclusive, Outcome::Inconclusive);
}

std::uint64_t SettingCounts::n_flagged() const noexcept {
    std::uint64_t n = 0;
    for (int o = 0; o < 4; ++o) {
        auto const other = static_cast<Outcome>(o);
        n += joint(Outcome::Double, other);
        if (other != Outcome::Double) {
            n += joint(other, Outcome::Double);
        }
    }
    return n;
}

std::uint64_t SettingCounts::trials() const noexcept {
    return std::accumulate(joint_.begin(), joint_.end(), std::uint64_t{0});
}

std::uint64_t SettingCounts::alice_conclusive() const noexcept {
    std::uint64_t n = 0;
    for (int b = 0; b < 4; ++b) {
        n += joint(Outcome::Plus, static_cast<Outcome>(b)) + joint(Outcome::Minus, static_cast<Outcome>(b));
    }
    return n;
}

std::uint64_t SettingCounts::bob_conclusive() const noexcept {
    std::uint64_t n = 0;
    for (int a = 0; a < 4; ++a) {
        n += joint(static_cast<Outcome>(a), Outcome::Plus) + joint(static_cast<Outcome>(a), Outcome::Minus);
    }
    return n;
}

SettingCounts& SettingCounts::operator+=(const SettingCounts& other) noexcept {
    for (std::size_t i = 0; i < joint_.size(); ++i) {
        joint_[i] += other.joint_[i];
    }
    double_events_ += other.double_events_;
    return *this;
}

//---------------------------------------------------------------------------//
CoincidenceCounts::CoincidenceCounts(const std::array<SettingCounts, 4>& per_setting,
                                     DoubleClickPolicy policy)
    : per_setting_(per_setting), policy_(policy) {
    for (auto const& s : per_setting_) {
        // Re-run the per-setting validation under this policy.
        SettingCounts(s.joint_table(), s.double_events(), policy_);
    }
}

std::uint64_t CoincidenceCounts::trials() const noexcept {
    std::uint64_t n = 0;
    for (auto const& s : per_setting_) n += s.trials();
    return n;
}

std::uint64_t CoincidenceCounts::coincidences() const noexcept {
    std::uint64_t n = 0;
    for (auto const& s : per_setting_) n += s.n_coincidences();
    return n;
}

std::uint64_t CoincidenceCounts::alice_conclusive() const noexcept {
    std::uint64_t n = 0;
    for (auto const& s : per_setting_) n += s.alice_conclusive();
    return n;
}

std::uint64_t CoincidenceCounts::bob_conclusive() const noexcept {
    std::uint64_t n = 0;
    for (auto const& s : per_setting_) n += s.bob_conclusive();
    return n;
}

std::uint64_t CoincidenceCounts::double_events() const noexcept {
    std::uint64_t n = 0;
    for (auto const& s : per_setting_) n += s.double_events();
    return n;
}

CoincidenceCounts& CoincidenceCounts::operator+=(const CoincidenceCounts& other) {
    if (policy_ != other.policy_) {
        throw InvalidArgument("cannot add counts recorded under different double-click policies");
    }
    for (std::size_t i = 0; i < per_setting_.size(); ++i) {
        per_setting_[i] += other.per_setting_[i];
    }
    return *this;
}

}  // namespace bellfake

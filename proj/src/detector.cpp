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

#include "bellfake/detector.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "bellfake/errors.hpp"

namespace bellfake {
namespace {

void require_monotone_curve(const std::vector<CurvePoint>& pts, const char* what) {
    if (pts.size() < 2) {
        throw MalformedCurve(fmt::format("{} needs at least two points", what));
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto const& pt = pts[i];
        if (!std::isfinite(pt.x) || !std::isfinite(pt.p)) {
            throw MalformedCurve(fmt::format("{}: non-finite value in row {}", what, i + 1));
        }
        if (pt.p < 0.0 || pt.p > 1.0) {
            throw MalformedCurve(
                fmt::format("{}: probability {} outside [0, 1] in row {}", what, pt.p, i + 1));
        }
        if (i > 0) {
            if (!(pt.x > pts[i - 1].x)) {
                throw MalformedCurve(
                    fmt::format("{}: abscissae must be strictly increasing (row {})", what, i + 1));
            }
            if (pt.p < pts[i - 1].p) {
                throw MalformedCurve(
                    fmt::format("{}: probability decreases at row {}", what, i + 1));
            }
        }
    }
}

// Piecewise-linear lookup; caller guarantees pts.front().x <= x <= pts.back().x.
double interpolate(const std::vector<CurvePoint>& pts, double x) {
    auto hi = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const CurvePoint& pt, double v) { return pt.x < v; });
    if (hi == pts.begin()) {
        return hi->p;
    }
    auto lo = std::prev(hi);
    if (hi == pts.end()) {
        return lo->p;
    }
    double const t = (x - lo->x) / (hi->x - lo->x);
    // Clamp to the segment's range so rounding cannot break monotonicity.
    return std::clamp(lo->p + t * (hi->p - lo->p), lo->p, hi->p);
}

struct ClickProbability {
    double intensity;

    double operator()(const StepThreshold& m) const { return intensity >= m.i_th ? 1.0 : 0.0; }

    double operator()(const TwoThreshold& m) const {
        if (intensity <= m.i_never) {
            return 0.0;
        }
        if (intensity >= m.i_always) {
            return 1.0;
        }
        double const t = (intensity - m.i_never) / (m.i_always - m.i_never);
        if (m.interpolation == TwoThreshold::Interpolation::Linear) {
            return std::clamp(t, 0.0, 1.0);
        }
        return interpolate(m.profile, std::clamp(t, 0.0, 1.0));
    }

    double operator()(const Empirical& m) const {
        if (intensity < m.curve.front().x) {
            return 0.0;
        }
        return interpolate(m.curve, intensity);
    }
};

}  // namespace

DetectorModel DetectorModel::step(double i_th) {
    if (!(i_th > 0.0) || !std::isfinite(i_th)) {
        throw InvalidArgument("step threshold must be positive");
    }
    return DetectorModel(StepThreshold{i_th});
}

DetectorModel DetectorModel::two_threshold(double i_never, double i_always) {
    if (!(i_never >= 0.0) || !std::isfinite(i_always) || !(i_never < i_always)) {
        throw InvalidArgument("two-threshold model needs 0 <= i_never < i_always");
    }
    return DetectorModel(TwoThreshold{i_never, i_always, TwoThreshold::Interpolation::Linear, {}});
}

DetectorModel DetectorModel::two_threshold(double i_never, double i_always,
                                           std::vector<CurvePoint> profile) {
    auto base = two_threshold(i_never, i_always);
    require_monotone_curve(profile, "ramp profile");
    if (profile.front() != CurvePoint{0.0, 0.0} || profile.back() != CurvePoint{1.0, 1.0}) {
        throw MalformedCurve("ramp profile must run from (0, 0) to (1, 1)");
    }
    auto& tt = std::get<TwoThreshold>(base.model_);
    tt.interpolation = TwoThreshold::Interpolation::Tabulated;
    tt.profile = std::move(profile);
    return base;
}

DetectorModel DetectorModel::empirical(std::vector<CurvePoint> curve) {
    require_monotone_curve(curve, "response curve");
    if (curve.front().x < 0.0) {
        throw MalformedCurve("response curve energies must be non-negative");
    }
    return DetectorModel(Empirical{std::move(curve)});
}

double DetectorModel::click_probability(double intensity) const {
    if (!(intensity >= 0.0)) {
        throw InvalidArgument("intensity must be non-negative");
    }
    return std::visit(ClickProbability{intensity}, model_);
}

std::string DetectorModel::describe() const {
    struct Describe {
        std::string operator()(const StepThreshold& m) const {
            return fmt::format("step(i_th={})", m.i_th);
        }
        std::string operator()(const TwoThreshold& m) const {
            return fmt::format("two_threshold(i_never={}, i_always={}, {})", m.i_never, m.i_always,
                               m.interpolation == TwoThreshold::Interpolation::Linear ? "linear"
                                                                                     : "tabulated");
        }
        std::string operator()(const Empirical& m) const {
            return fmt::format("empirical({} points)", m.curve.size());
        }
    };
    return std::visit(Describe{}, model_);
}

DetectorModel load_response_curve(std::vector<CurvePoint> rows) {
    return DetectorModel::empirical(std::move(rows));
}

//---------------------------------------------------------------------------//
namespace {

std::string_view trim(std::string_view s) {
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_field(std::string_view s, int line) {
    s = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw MalformedCurve(fmt::format("line {}: cannot parse number '{}'", line, s));
    }
    return v;
}

}  // namespace

DetectorModel read_response_curve_csv(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::vector<CurvePoint> rows;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = trim(line);
        if (lineno == 1 && text.starts_with("\xEF\xBB\xBF")) {
            text.remove_prefix(3);
        }
        if (text.empty() || text.front() == '#') {
            continue;
        }
        auto const comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            throw MalformedCurve(fmt::format("line {}: expected exactly two columns", lineno));
        }
        if (!header_seen) {
            if (trim(text.substr(0, comma)) != "energy"
                || trim(text.substr(comma + 1)) != "click_probability") {
                throw MalformedCurve(
                    fmt::format("line {}: header must be 'energy,click_probability'", lineno));
            }
            header_seen = true;
            continue;
        }
        rows.push_back({parse_field(text.substr(0, comma), lineno),
                        parse_field(text.substr(comma + 1), lineno)});
    }
    if (!header_seen) {
        throw MalformedCurve("response curve file is empty");
    }
    return load_response_curve(std::move(rows));
}

DetectorModel read_response_curve_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open response curve " + path.string());
    }
    return read_response_curve_csv(in);
}

}  // namespace bellfake

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

#include <stdexcept>
#include <string>

namespace bellfake {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument or constructed value violates a documented precondition.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A detector response table is not a valid monotone curve.
class MalformedCurve : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

/// No trigger intensity satisfies a control row's constraints for the
/// analyzer angles at hand.
class InfeasibleGeometry : public Error {
  public:
    using Error::Error;
};

/// The N_sim/N_dif ratio diverges at E = 1.
class SingularRatio : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

/// A setting pair collected no coincidences, so its correlation is undefined.
class AllZeroCoincidences : public Error {
  public:
    explicit AllZeroCoincidences(std::string setting)
        : Error("no coincidences recorded for setting " + setting),
          setting_(std::move(setting)) {}

    const std::string& setting() const noexcept { return setting_; }

  private:
    std::string setting_;
};

/// Configuration text could not be parsed or names an unknown field.
class ConfigError : public InvalidArgument {
  public:
    ConfigError(const std::string& message, int line)
        : InvalidArgument(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const noexcept { return line_; }

  private:
    int line_;
};

}  // namespace bellfake

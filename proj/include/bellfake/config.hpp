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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "bellfake/engine.hpp"

namespace bellfake {

/*!
 * Flat key-value text with optional `[section]` headers.
 *
 * `key = value` inside `[detector]` is stored as `detector.key`; a dotted key
 * outside any section is stored verbatim. `#` and `;` start comments.
 */
class KeyValueFile {
  public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static KeyValueFile parse(std::istream& in);

    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    //! Marks the key as consumed.
    const Entry* find(const std::string& key) const;

    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<std::uint64_t> get_uint(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    //! Throws ConfigError for the first key that was never read.
    void reject_unused() const;

    int line_of(const std::string& key) const;

  private:
    std::map<std::string, Entry> entries_;
    mutable std::set<std::string> used_;
};

struct OutputOptions {
    std::optional<std::filesystem::path> summary_csv;
};

struct LoadedConfig {
    RunConfig run;
    OutputOptions output;
};

inline constexpr const char* kStrategyNames = "existing, improved, perfect, quantum";

//! Relative file references (the detector curve) resolve against base_dir.
LoadedConfig load_config(std::istream& in, const std::filesystem::path& base_dir = {});
LoadedConfig load_config_file(const std::filesystem::path& path);

}  // namespace bellfake

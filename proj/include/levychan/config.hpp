// levychan - Levy-driven wireless channel simulation and fractional HJB control
// Copyright (C) 2026 the levychan developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LEVYCHAN_CONFIG_HPP
#define LEVYCHAN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

namespace levychan::config {

/// Flat key-value run configuration. Keys are dotted module.param paths;
/// unknown keys are rejected, missing keys take their defaults. Values keep
/// their textual form so emit/parse round-trips are byte-exact.
class RunConfig {
public:
    /// Full key universe with default values.
    static const std::map<std::string, std::string>& defaults();

    RunConfig(); // all defaults

    /// Sets a key; throws std::invalid_argument for unknown keys or values
    /// violating the key's constraint.
    void set(const std::string& key, const std::string& value);

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;

    const std::map<std::string, std::string>& items() const { return kv_; }

    bool operator==(const RunConfig& other) const { return kv_ == other.kv_; }

private:
    std::map<std::string, std::string> kv_;
};

/// Parses a flat config file ("key = value" lines, '#' comments). Duplicate
/// keys are rejected with both line numbers; parse and validation errors
/// carry the line number and the violated constraint.
RunConfig parse_config(const std::string& path);

/// Applies LEVYCHAN_-prefixed environment overrides (LEVYCHAN_<key>); an
/// unknown prefixed key is an error.
void apply_env_overrides(RunConfig& cfg, const std::string& prefix = "LEVYCHAN_");

/// Canonical text form, sorted by key; parse_config_text(emit(c)) == c.
std::string emit(const RunConfig& cfg);

/// Parses config text (same grammar as parse_config).
RunConfig parse_config_text(const std::string& text, const std::string& origin);

/// Parses config text but returns only the keys the text explicitly sets
/// (validated); used to merge a file on top of an existing configuration.
std::map<std::string, std::string> parse_items(const std::string& text,
                                               const std::string& origin);

} // namespace levychan::config

#endif // LEVYCHAN_CONFIG_HPP

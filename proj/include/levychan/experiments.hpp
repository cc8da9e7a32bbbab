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

#ifndef LEVYCHAN_EXPERIMENTS_HPP
#define LEVYCHAN_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "levychan/config.hpp"

namespace levychan::experiments {

inline constexpr const char* kVersion = "0.1.0";

const std::vector<std::string>& experiment_names();

/// Runs the named experiment, writing all artifacts (CSVs, resolved config
/// echo, manifest) into out_dir. Identical config + seed produce
/// byte-identical outputs. Throws on any error.
void run(const config::RunConfig& cfg, const std::string& experiment,
         const std::string& out_dir);

struct CheckResult {
    std::string module;
    std::string name;
    bool pass = false;
    std::string detail;
};

const std::vector<std::string>& validate_modules();

/// Runs the per-module invariant suites (all modules when `module` is empty).
std::vector<CheckResult> validate(const std::string& module, std::uint64_t seed);

} // namespace levychan::experiments

#endif // LEVYCHAN_EXPERIMENTS_HPP

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

#include "levychan/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

extern "C" char** environ;

namespace levychan::config {

namespace {

enum class Kind { real, integer, u64, word };

struct KeySpec {
    const char* key;
    const char* def;
    Kind kind;
    double lo, hi;
    bool lo_open, hi_open;
    const char* words; ///< "a|b|c" for Kind::word
    const char* constraint;
};

// The full key universe. Numeric defaults follow Table I; artifact-only knobs
// are documented in the README.
const KeySpec kSpecs[] = {
    {"channel.a", "0.1", Kind::real, 0, 1e9, true, false, nullptr, "a > 0"},
    {"channel.alpha", "1.8", Kind::real, 1, 2, true, false, nullptr,
     "alpha in (1, 2]"},
    {"channel.beta0", "0", Kind::real, -1e9, 1e9, false, false, nullptr,
     "beta0 finite"},
    {"channel.c_eps", "1", Kind::real, 0, 1e9, true, false, nullptr, "C_eps > 0"},
    {"channel.chi0", "1", Kind::real, 0, 1e9, false, false, nullptr, "chi0 >= 0"},
    {"channel.kappa", "0.5", Kind::real, 0, 1e9, true, false, nullptr,
     "kappa > 0"},
    {"channel.model", "slow_fast_composite", Kind::word, 0, 0, false, false,
     "long_term|short_term|iq|slow_fast_composite",
     "model in {long_term, short_term, iq, slow_fast_composite}"},
    {"channel.noise_multiplier", "0.1", Kind::real, 0, 1e9, false, false, nullptr,
     "noise_multiplier >= 0"},
    {"channel.p_in", "5", Kind::real, 0, 1e9, true, false, nullptr, "p_in > 0"},
    {"channel.rho", "0.001", Kind::real, 0, 1, true, true, nullptr,
     "rho in (0, 1)"},
    {"channel.sigma_beta", "0.1", Kind::real, 0, 1e9, true, false, nullptr,
     "sigma_beta > 0"},
    {"channel.sigma_chi", "0.3", Kind::real, 0, 1e9, true, false, nullptr,
     "sigma_chi > 0"},
    {"channel.tau", "0.01", Kind::real, 0, 1, true, false, nullptr,
     "tau in (0, 1]"},
    {"cost.fairness_weight", "0.5", Kind::real, 0, 1e9, false, false, nullptr,
     "fairness_weight >= 0"},
    {"cost.lambda", "0.1", Kind::real, 0, 1e9, false, false, nullptr,
     "lambda >= 0"},
    {"cost.power_increase_weight", "0.1", Kind::real, 0, 1e9, false, false,
     nullptr, "power_increase_weight >= 0"},
    {"cost.r_th", "1.5", Kind::real, 0, 1e9, true, false, nullptr, "r_th > 0"},
    {"cost.sum_rate_terminal_weight", "1", Kind::real, 0, 1e9, false, false,
     nullptr, "sum_rate_terminal_weight >= 0"},
    {"cost.variant", "paper_eq52", Kind::word, 0, 0, false, false,
     "paper_eq52|comparative", "variant in {paper_eq52, comparative}"},
    {"cost.varsigma", "1", Kind::real, 0, 1e9, false, false, nullptr,
     "varsigma >= 0"},
    {"dp.beta_halfwidth", "1", Kind::real, 0, 1e9, true, false, nullptr,
     "beta_halfwidth > 0"},
    {"dp.beta_nodes", "8", Kind::integer, 2, 512, false, false, nullptr,
     "beta_nodes in [2, 512]"},
    {"dp.mc_samples", "12", Kind::integer, 1, 1000000, false, false, nullptr,
     "mc_samples >= 1"},
    {"dp.p_nodes", "10", Kind::integer, 2, 512, false, false, nullptr,
     "p_nodes in [2, 512]"},
    {"dp.p_state_max", "12", Kind::real, 0, 1e9, true, false, nullptr,
     "p_state_max > 0"},
    {"dp.rounds", "100", Kind::integer, 0, 100000, false, false, nullptr,
     "rounds >= 0"},
    {"gl.gauss_sum_rate_weight", "1", Kind::real, 0, 1e9, false, false, nullptr,
     "gauss_sum_rate_weight >= 0"},
    {"gl.levy_alpha", "1.8", Kind::real, 1, 2, true, true, nullptr,
     "levy_alpha in (1, 2)"},
    {"gl.levy_sum_rate_weight", "0.1", Kind::real, 0, 1e9, false, false, nullptr,
     "levy_sum_rate_weight >= 0"},
    {"hjb.box", "2", Kind::real, 0, 1e9, true, false, nullptr, "box > 0"},
    {"hjb.horizon", "1", Kind::real, 0, 1e9, true, false, nullptr, "horizon > 0"},
    {"hjb.mc_samples", "2000", Kind::integer, 1, 10000000, false, false, nullptr,
     "mc_samples >= 1"},
    {"hjb.n_steps", "20", Kind::integer, 1, 1000000, false, false, nullptr,
     "n_steps >= 1"},
    {"hjb.nodes", "65", Kind::integer, 4, 100000, false, false, nullptr,
     "nodes in [4, 100000]"},
    {"hjb.scheme", "mc_lookahead", Kind::word, 0, 0, false, false,
     "semi_lagrangian|mc_lookahead",
     "scheme in {semi_lagrangian, mc_lookahead}"},
    {"hjb.sigma", "0.3", Kind::real, 0, 1e9, true, false, nullptr, "sigma > 0"},
    {"net.eta", "1", Kind::real, 0, 1e9, true, false, nullptr, "eta > 0"},
    {"net.gain_interfering", "0.1", Kind::real, 0, 1, true, true, nullptr,
     "gain_interfering in (0, 1)"},
    {"net.gain_serving", "0.5", Kind::real, 0, 1, true, true, nullptr,
     "gain_serving in (0, 1)"},
    {"net.m_ue", "3", Kind::integer, 1, 8, false, false, nullptr,
     "m_ue in [1, 8]"},
    {"net.n_bs", "3", Kind::integer, 1, 8, false, false, nullptr,
     "n_bs in [1, 8]"},
    {"net.p0", "8", Kind::real, 0, 1e9, false, false, nullptr, "p0 >= 0"},
    {"net.p_max", "15", Kind::real, 0, 1e9, true, false, nullptr, "p_max > 0"},
    {"net.p_min", "0", Kind::real, 0, 1e9, false, false, nullptr, "p_min >= 0"},
    {"net.u_step", "1", Kind::real, 0, 1e9, true, false, nullptr, "u_step > 0"},
    {"noise.high", "0.5", Kind::real, 0, 1e9, false, false, nullptr,
     "high >= 0"},
    {"noise.low", "0.1", Kind::real, 0, 1e9, false, false, nullptr, "low >= 0"},
    {"riesz.alpha", "1.5", Kind::real, 1, 2, true, true, nullptr,
     "alpha in (1, 2)"},
    {"riesz.nodes", "2048", Kind::integer, 8, 65536, false, false, nullptr,
     "nodes in [8, 65536]"},
    {"riesz.sigma", "1", Kind::real, 0, 1e9, true, false, nullptr, "sigma > 0"},
    {"riesz.wavenumber", "2", Kind::integer, 1, 64, false, false, nullptr,
     "wavenumber in [1, 64]"},
    {"seed", "1", Kind::u64, 0, 0, false, false, nullptr,
     "seed is a 64-bit unsigned integer"},
    {"sim.dt", "0.1", Kind::real, 0, 1e9, true, false, nullptr, "dt > 0"},
    {"sim.n_paths", "1", Kind::integer, 1, 100000000, false, false, nullptr,
     "n_paths >= 1"},
    {"sim.n_steps", "100", Kind::integer, 1, 100000000, false, false, nullptr,
     "n_steps >= 1"},
    {"stable.alpha", "1.8", Kind::real, 1, 2, true, false, nullptr,
     "alpha in (1, 2]"},
    {"stable.diag_draws", "200000", Kind::integer, 100, 100000000, false, false,
     nullptr, "diag_draws in [100, 1e8]"},
};

const KeySpec* find_spec(const std::string& key) {
    for (const KeySpec& s : kSpecs)
        if (key == s.key)
            return &s;
    return nullptr;
}

void check_value(const KeySpec& spec, const std::string& value) {
    const std::string err = std::string("validation error for key '") + spec.key +
                            "': constraint " + spec.constraint;
    switch (spec.kind) {
    case Kind::real: {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (errno != 0 || end == value.c_str() || *end != '\0')
            throw std::invalid_argument(std::string("key '") + spec.key +
                                        "': not a number: " + value);
        const bool lo_ok = spec.lo_open ? v > spec.lo : v >= spec.lo;
        const bool hi_ok = spec.hi_open ? v < spec.hi : v <= spec.hi;
        if (!lo_ok || !hi_ok)
            throw std::invalid_argument(err);
        break;
    }
    case Kind::integer: {
        errno = 0;
        char* end = nullptr;
        const long v = std::strtol(value.c_str(), &end, 10);
        if (errno != 0 || end == value.c_str() || *end != '\0')
            throw std::invalid_argument(std::string("key '") + spec.key +
                                        "': not an integer: " + value);
        if (v < static_cast<long>(spec.lo) || v > static_cast<long>(spec.hi))
            throw std::invalid_argument(err);
        break;
    }
    case Kind::u64: {
        errno = 0;
        char* end = nullptr;
        (void)std::strtoull(value.c_str(), &end, 10);
        if (errno != 0 || end == value.c_str() || *end != '\0' || value.empty() ||
            value[0] == '-')
            throw std::invalid_argument(err);
        break;
    }
    case Kind::word: {
        std::string words(spec.words);
        size_t pos = 0;
        bool ok = false;
        while (pos <= words.size()) {
            const size_t bar = words.find('|', pos);
            const std::string w =
                words.substr(pos, bar == std::string::npos ? std::string::npos
                                                           : bar - pos);
            if (w == value) {
                ok = true;
                break;
            }
            if (bar == std::string::npos)
                break;
            pos = bar + 1;
        }
        if (!ok)
            throw std::invalid_argument(err);
        break;
    }
    }
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

} // namespace

const std::map<std::string, std::string>& RunConfig::defaults() {
    static const std::map<std::string, std::string> d = [] {
        std::map<std::string, std::string> m;
        for (const KeySpec& s : kSpecs)
            m.emplace(s.key, s.def);
        return m;
    }();
    return d;
}

RunConfig::RunConfig() : kv_(defaults()) {}

void RunConfig::set(const std::string& key, const std::string& value) {
    const KeySpec* spec = find_spec(key);
    if (!spec)
        throw std::invalid_argument("unknown config key: '" + key + "'");
    check_value(*spec, value);
    kv_[key] = value;
}

const std::string& RunConfig::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end())
        throw std::invalid_argument("unknown config key: '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    return std::strtod(get(key).c_str(), nullptr);
}

int RunConfig::get_int(const std::string& key) const {
    return static_cast<int>(std::strtol(get(key).c_str(), nullptr, 10));
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
    return std::strtoull(get(key).c_str(), nullptr, 10);
}

std::map<std::string, std::string> parse_items(const std::string& text,
                                               const std::string& origin) {
    std::map<std::string, std::string> items;
    std::map<std::string, int> seen; // key -> first line
    RunConfig probe;                 // validates keys and values as we go
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": empty key");
        auto it = seen.find(key);
        if (it != seen.end())
            throw std::invalid_argument(
                origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                "' (first set at line " + std::to_string(it->second) + ")");
        seen.emplace(key, lineno);
        try {
            probe.set(key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": " + e.what());
        }
        items[key] = value;
    }
    return items;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    for (const auto& [k, v] : parse_items(text, origin))
        cfg.set(k, v);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw std::invalid_argument("config file not found: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str(), path);
}

void apply_env_overrides(RunConfig& cfg, const std::string& prefix) {
    for (char** e = environ; e && *e; ++e) {
        const char* entry = *e;
        if (std::strncmp(entry, prefix.c_str(), prefix.size()) != 0)
            continue;
        const char* eq = std::strchr(entry, '=');
        if (!eq)
            continue;
        const std::string key(entry + prefix.size(),
                              eq - entry - prefix.size());
        try {
            cfg.set(key, eq + 1);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("environment override ") +
                                        prefix + key + ": " + e.what());
        }
    }
}

std::string emit(const RunConfig& cfg) {
    std::ostringstream os;
    for (const auto& [k, v] : cfg.items())
        os << k << " = " << v << '\n';
    return os.str();
}

} // namespace levychan::config

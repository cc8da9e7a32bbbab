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

#include "levychan.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "levychan/config.hpp"
#include "levychan/experiments.hpp"

struct lvc_config {
    levychan::config::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// maps C++ exceptions onto status codes at the library boundary
template <typename Fn>
lvc_status guarded(Fn&& fn) {
    try {
        fn();
        return LVC_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        // config file syntax errors carry a "file:line:" prefix
        const char* w = e.what();
        const char* colon = std::strchr(w, ':');
        if (colon && std::strstr(w, "expected 'key = value'"))
            return LVC_ERR_PARSE;
        return LVC_ERR_INVALID_ARGUMENT;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        if (std::strstr(e.what(), "cannot open") ||
            std::strstr(e.what(), "cannot write"))
            return LVC_ERR_IO;
        return LVC_ERR_RUNTIME;
    } catch (const std::exception& e) {
        set_error(e.what());
        return LVC_ERR_RUNTIME;
    }
}

} // namespace

extern "C" {

const char* lvc_version(void) { return levychan::experiments::kVersion; }

const char* lvc_status_str(lvc_status status) {
    switch (status) {
    case LVC_OK: return "ok";
    case LVC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LVC_ERR_PARSE: return "parse error";
    case LVC_ERR_IO: return "I/O error";
    case LVC_ERR_RUNTIME: return "runtime error";
    case LVC_ERR_NULL_HANDLE: return "null handle";
    }
    return "unknown status";
}

const char* lvc_last_error(void) { return g_last_error.c_str(); }

lvc_status lvc_config_create(lvc_config** out) {
    if (!out)
        return LVC_ERR_NULL_HANDLE;
    return guarded([&] { *out = new lvc_config(); });
}

void lvc_config_destroy(lvc_config* cfg) { delete cfg; }

lvc_status lvc_config_load_file(lvc_config* cfg, const char* path) {
    if (!cfg || !path)
        return LVC_ERR_NULL_HANDLE;
    return guarded([&] {
        std::ifstream is(path);
        if (!is)
            throw std::invalid_argument(std::string("config file not found: ") +
                                        path);
        std::ostringstream ss;
        ss << is.rdbuf();
        // only the keys the file explicitly sets are merged
        for (const auto& [k, v] : levychan::config::parse_items(ss.str(), path))
            cfg->cfg.set(k, v);
    });
}

lvc_status lvc_config_set(lvc_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value)
        return LVC_ERR_NULL_HANDLE;
    return guarded([&] { cfg->cfg.set(key, value); });
}

lvc_status lvc_config_get(const lvc_config* cfg, const char* key, char* buf,
                          size_t buflen) {
    if (!cfg || !key || !buf)
        return LVC_ERR_NULL_HANDLE;
    return guarded([&] {
        const std::string& v = cfg->cfg.get(key);
        if (v.size() + 1 > buflen)
            throw std::invalid_argument("lvc_config_get: buffer too small");
        std::memcpy(buf, v.c_str(), v.size() + 1);
    });
}

lvc_status lvc_config_apply_env(lvc_config* cfg) {
    if (!cfg)
        return LVC_ERR_NULL_HANDLE;
    return guarded([&] { levychan::config::apply_env_overrides(cfg->cfg); });
}

size_t lvc_experiment_count(void) {
    return levychan::experiments::experiment_names().size();
}

const char* lvc_experiment_name(size_t index) {
    const auto& names = levychan::experiments::experiment_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

lvc_status lvc_run_experiment(const lvc_config* cfg, const char* experiment,
                              const char* out_dir) {
    if (!cfg || !experiment || !out_dir)
        return LVC_ERR_NULL_HANDLE;
    return guarded(
        [&] { levychan::experiments::run(cfg->cfg, experiment, out_dir); });
}

lvc_status lvc_validate(const char* module, uint64_t seed, char** report,
                        int* n_failed) {
    if (!report || !n_failed)
        return LVC_ERR_NULL_HANDLE;
    return guarded([&] {
        const auto results = levychan::experiments::validate(
            module ? std::string(module) : std::string(), seed);
        std::ostringstream os;
        int failed = 0;
        for (const auto& r : results) {
            os << (r.pass ? "PASS" : "FAIL") << "  " << r.module << "." << r.name
               << "  (" << r.detail << ")\n";
            if (!r.pass)
                ++failed;
        }
        const std::string text = os.str();
        char* mem = static_cast<char*>(std::malloc(text.size() + 1));
        if (!mem)
            throw std::runtime_error("lvc_validate: allocation failure");
        std::memcpy(mem, text.c_str(), text.size() + 1);
        *report = mem;
        *n_failed = failed;
    });
}

void lvc_string_free(char* s) { std::free(s); }

} // extern "C"

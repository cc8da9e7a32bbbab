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
//
// Command-line front end. Talks to the core exclusively through the C API.
//
//   levychan <experiment> [--config PATH] [--seed N] [--out DIR]
//   levychan validate [--module NAME] [--seed N]

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levychan.h"

namespace {

int fail(lvc_status st, const char* what) {
    std::fprintf(stderr, "levychan: %s: %s (%s)\n", what, lvc_last_error(),
                 lvc_status_str(st));
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Levy-driven wireless channel simulation and fractional HJB "
                 "power control"};
    app.set_version_flag("--version", lvc_version());
    app.require_subcommand(1);

    struct ExpOpts {
        std::string config_path;
        std::string out_dir;
        std::string seed;
    };
    std::vector<std::pair<CLI::App*, std::shared_ptr<ExpOpts>>> experiments;

    for (size_t i = 0; i < lvc_experiment_count(); ++i) {
        const std::string name = lvc_experiment_name(i);
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        auto opts = std::make_shared<ExpOpts>();
        opts->out_dir = "runs/" + name;
        sub->add_option("--config", opts->config_path,
                        "flat key=value config file (missing keys take their "
                        "defaults)");
        sub->add_option("--seed", opts->seed, "override the config seed");
        sub->add_option("--out", opts->out_dir, "output directory")
            ->capture_default_str();
        experiments.emplace_back(sub, opts);
    }

    auto* val = app.add_subcommand("validate",
                                   "run the per-module invariant suites");
    std::string val_module;
    std::string val_seed = "1";
    val->add_option("--module", val_module,
                    "restrict to one module (stable, sde, riesz, hjb, netsim, "
                    "cli)");
    val->add_option("--seed", val_seed, "RNG seed for the statistical checks");

    CLI11_PARSE(app, argc, argv);

    if (val->parsed()) {
        char* report = nullptr;
        int n_failed = 0;
        const lvc_status st =
            lvc_validate(val_module.empty() ? nullptr : val_module.c_str(),
                         std::strtoull(val_seed.c_str(), nullptr, 10), &report,
                         &n_failed);
        if (st != LVC_OK)
            return fail(st, "validate");
        std::fputs(report, stdout);
        std::printf("%s (%d failed)\n", n_failed == 0 ? "ALL PASS" : "FAILURES",
                    n_failed);
        lvc_string_free(report);
        return n_failed == 0 ? 0 : 1;
    }

    for (const auto& [sub, opts] : experiments) {
        if (!sub->parsed())
            continue;
        lvc_config* cfg = nullptr;
        lvc_status st = lvc_config_create(&cfg);
        if (st != LVC_OK)
            return fail(st, "config");
        if (!opts->config_path.empty()) {
            st = lvc_config_load_file(cfg, opts->config_path.c_str());
            if (st != LVC_OK) {
                lvc_config_destroy(cfg);
                return fail(st, "config");
            }
        }
        st = lvc_config_apply_env(cfg);
        if (st != LVC_OK) {
            lvc_config_destroy(cfg);
            return fail(st, "environment");
        }
        if (!opts->seed.empty()) {
            st = lvc_config_set(cfg, "seed", opts->seed.c_str());
            if (st != LVC_OK) {
                lvc_config_destroy(cfg);
                return fail(st, "seed");
            }
        }
        st = lvc_run_experiment(cfg, sub->get_name().c_str(),
                                opts->out_dir.c_str());
        lvc_config_destroy(cfg);
        if (st != LVC_OK)
            return fail(st, sub->get_name().c_str());
        std::printf("%s: artifacts written to %s\n", sub->get_name().c_str(),
                    opts->out_dir.c_str());
        return 0;
    }
    return 0;
}

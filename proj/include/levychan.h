/* levychan - Levy-driven wireless channel simulation and fractional HJB control
 * Copyright (C) 2026 the levychan developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C API of the levychan shared library. All functions return an lvc_status;
 * on any failure lvc_last_error() carries a human-readable message for the
 * calling thread. Handles are opaque and must be released with their
 * destroy function.
 */

#ifndef LEVYCHAN_H
#define LEVYCHAN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvc_status {
    LVC_OK = 0,
    LVC_ERR_INVALID_ARGUMENT = 1, /* bad key, bad value, unknown name */
    LVC_ERR_PARSE = 2,            /* config file syntax error */
    LVC_ERR_IO = 3,               /* file or directory access failure */
    LVC_ERR_RUNTIME = 4,          /* numerical or internal failure */
    LVC_ERR_NULL_HANDLE = 5
} lvc_status;

typedef struct lvc_config lvc_config; /* opaque run configuration */

/* library identification */
const char* lvc_version(void);
const char* lvc_status_str(lvc_status status);

/* thread-local message describing the most recent failure */
const char* lvc_last_error(void);

/* configuration lifecycle; a fresh config holds the full default table */
lvc_status lvc_config_create(lvc_config** out);
void lvc_config_destroy(lvc_config* cfg);

/* merge "key = value" lines from a file (unknown keys and duplicate keys
 * are errors; values are validated against their constraints) */
lvc_status lvc_config_load_file(lvc_config* cfg, const char* path);

lvc_status lvc_config_set(lvc_config* cfg, const char* key, const char* value);

/* copies the value into buf (NUL-terminated); fails if buf is too small */
lvc_status lvc_config_get(const lvc_config* cfg, const char* key, char* buf,
                          size_t buflen);

/* apply LEVYCHAN_-prefixed environment overrides */
lvc_status lvc_config_apply_env(lvc_config* cfg);

/* number of experiments and their names (index 0 .. count-1) */
size_t lvc_experiment_count(void);
const char* lvc_experiment_name(size_t index);

/* runs one experiment, writing CSV artifacts, the resolved config echo and
 * the manifest into out_dir; identical config + seed give byte-identical
 * outputs */
lvc_status lvc_run_experiment(const lvc_config* cfg, const char* experiment,
                              const char* out_dir);

/* runs the per-module invariant suites (module == NULL for all). The report
 * is a malloc'd text table released with lvc_string_free; *n_failed receives
 * the number of failing checks. */
lvc_status lvc_validate(const char* module, uint64_t seed, char** report,
                        int* n_failed);

void lvc_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LEVYCHAN_H */

/* Copyright 2026 The saft authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the saft shared library. Sessions are opaque handles; all
 * entry points return a status code and never throw. Outputs of a run are
 * named in-memory documents (JSON / CSV) owned by the session until the next
 * run or destruction. */

#ifndef SAFT_SAFT_H
#define SAFT_SAFT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum saft_status {
  SAFT_OK = 0,
  SAFT_ERROR_CONFIG = 1,     /* config parse / unknown key */
  SAFT_ERROR_VALIDATION = 2, /* invalid parameters or inputs */
  SAFT_ERROR_NUMERIC = 3,    /* unstable / not refinable */
  SAFT_ERROR_IO = 4,
  SAFT_ERROR_INTERNAL = 5
} saft_status;

typedef struct saft_session saft_session;

saft_status saft_session_create(saft_session** session);
void saft_session_destroy(saft_session* session);

/* Replace configuration keys from a config document or a single override.
 * Keys are "section.name"; see saft_default_config for the catalog. */
saft_status saft_session_load_config_text(saft_session* session, const char* text);
saft_status saft_session_load_config_file(saft_session* session, const char* path);
saft_status saft_session_set(saft_session* session, const char* key, const char* value);

/* command: "tile" | "norm" | "exponent" | "mra-report" | "print-config" */
saft_status saft_session_run(saft_session* session, const char* command);

/* Outputs of the most recent successful run. Strings remain valid until the
 * next run on the same session or its destruction. */
int saft_session_output_count(const saft_session* session);
const char* saft_session_output_name(const saft_session* session, int index);
const char* saft_session_output_data(const saft_session* session, int index);

/* Message of the most recent failure ("" when the last call succeeded). */
const char* saft_session_error(const saft_session* session);

/* Default configuration document; release with saft_string_free. */
char* saft_default_config(void);
void saft_string_free(char* text);

const char* saft_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SAFT_SAFT_H */

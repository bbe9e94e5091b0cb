// Copyright 2026 The saft authors
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

#include "saft/saft.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "saft/error.hpp"
#include "saft/session.hpp"

struct saft_session {
  saft::Session session;
  std::vector<saft::SessionOutput> outputs;
  std::string error;
};

namespace {

saft_status status_of(const saft::Error& e) {
  switch (e.category()) {
    case saft::ErrorCategory::Config: return SAFT_ERROR_CONFIG;
    case saft::ErrorCategory::Validation: return SAFT_ERROR_VALIDATION;
    case saft::ErrorCategory::Numeric: return SAFT_ERROR_NUMERIC;
    case saft::ErrorCategory::Io: return SAFT_ERROR_IO;
  }
  return SAFT_ERROR_INTERNAL;
}

template <typename Fn>
saft_status guarded(saft_session* session, Fn&& fn) {
  if (!session) return SAFT_ERROR_VALIDATION;
  session->error.clear();
  try {
    fn();
    return SAFT_OK;
  } catch (const saft::Error& e) {
    session->error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    session->error = e.what();
    return SAFT_ERROR_INTERNAL;
  } catch (...) {
    session->error = "unknown error";
    return SAFT_ERROR_INTERNAL;
  }
}

}  // namespace

extern "C" {

saft_status saft_session_create(saft_session** session) {
  if (!session) return SAFT_ERROR_VALIDATION;
  *session = new (std::nothrow) saft_session();
  return *session ? SAFT_OK : SAFT_ERROR_INTERNAL;
}

void saft_session_destroy(saft_session* session) { delete session; }

saft_status saft_session_load_config_text(saft_session* session, const char* text) {
  return guarded(session, [&] {
    if (!text) saft::raise(saft::Errc::ConfigParse, "null config text");
    session->session.config.load_text(text);
  });
}

saft_status saft_session_load_config_file(saft_session* session, const char* path) {
  return guarded(session, [&] {
    if (!path) saft::raise(saft::Errc::IoError, "null config path");
    session->session.config.load_file(path);
  });
}

saft_status saft_session_set(saft_session* session, const char* key, const char* value) {
  return guarded(session, [&] {
    if (!key || !value) saft::raise(saft::Errc::UnknownKey, "null key or value");
    session->session.config.set(key, value);
  });
}

saft_status saft_session_run(saft_session* session, const char* command) {
  return guarded(session, [&] {
    if (!command) saft::raise(saft::Errc::BadParameters, "null command");
    session->outputs = session->session.run(command);
  });
}

int saft_session_output_count(const saft_session* session) {
  return session ? static_cast<int>(session->outputs.size()) : 0;
}

const char* saft_session_output_name(const saft_session* session, int index) {
  if (!session || index < 0 || index >= static_cast<int>(session->outputs.size())) return nullptr;
  return session->outputs[index].name.c_str();
}

const char* saft_session_output_data(const saft_session* session, int index) {
  if (!session || index < 0 || index >= static_cast<int>(session->outputs.size())) return nullptr;
  return session->outputs[index].data.c_str();
}

const char* saft_session_error(const saft_session* session) {
  return session ? session->error.c_str() : "null session";
}

char* saft_default_config(void) {
  const std::string text = saft::RunConfig().to_text();
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void saft_string_free(char* text) { std::free(text); }

const char* saft_version(void) { return "0.1.0"; }

}  // extern "C"

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

// Batch front door: tiling + function + analysis from a config file, reports
// to CSV/JSON. Links only the C API of the saft shared library.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "saft/saft.h"

namespace {

int exit_code_for(saft_status status) {
  switch (status) {
    case SAFT_OK: return 0;
    case SAFT_ERROR_CONFIG: return 2;
    case SAFT_ERROR_VALIDATION: return 3;
    case SAFT_ERROR_NUMERIC: return 4;
    case SAFT_ERROR_IO: return 5;
    case SAFT_ERROR_INTERNAL: return 6;
  }
  return 6;
}

struct SessionDeleter {
  void operator()(saft_session* s) const { saft_session_destroy(s); }
};

int run_command(const std::string& command, const std::string& config_path,
                const std::vector<std::string>& overrides, std::string out_dir, bool to_stdout) {
  saft_session* raw = nullptr;
  if (saft_session_create(&raw) != SAFT_OK) {
    std::cerr << "error: cannot create session\n";
    return 6;
  }
  std::unique_ptr<saft_session, SessionDeleter> session(raw);

  saft_status status = SAFT_OK;
  if (!config_path.empty()) {
    status = saft_session_load_config_file(session.get(), config_path.c_str());
    if (status != SAFT_OK) {
      std::cerr << "error: " << saft_session_error(session.get()) << "\n";
      return exit_code_for(status);
    }
  }
  for (const auto& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
      return 2;
    }
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    status = saft_session_set(session.get(), key.c_str(), value.c_str());
    if (status != SAFT_OK) {
      std::cerr << "error: " << saft_session_error(session.get()) << "\n";
      return exit_code_for(status);
    }
    if (key == "output.dir" && out_dir.empty()) out_dir = value;
  }

  status = saft_session_run(session.get(), command.c_str());
  if (status != SAFT_OK) {
    std::cerr << "error: " << saft_session_error(session.get()) << "\n";
    return exit_code_for(status);
  }

  if (command == "print-config" || to_stdout) {
    for (int i = 0; i < saft_session_output_count(session.get()); ++i)
      std::cout << saft_session_output_data(session.get(), i);
    return 0;
  }

  if (out_dir.empty()) out_dir = "out";
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << out_dir << "'\n";
    return 5;
  }
  for (int i = 0; i < saft_session_output_count(session.get()); ++i) {
    const std::string path = out_dir + "/" + saft_session_output_name(session.get(), i);
    std::ofstream os(path, std::ios::binary);
    if (!os) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return 5;
    }
    os << saft_session_output_data(session.get(), i);
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Besov-space analysis on self-affine lattice tilings"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  bool to_stdout = false;
  app.add_option("-c,--config", config_path, "Config file (key = value with [sections])");
  app.add_option("--set", overrides, "Override a config key, e.g. --set analysis.s=0.4");
  app.add_option("-o,--out", out_dir, "Output directory (overrides output.dir)");
  app.add_flag("--stdout", to_stdout, "Print outputs to stdout instead of files");

  app.add_subcommand("tile", "Tile point cloud and geometry constants");
  app.add_subcommand("norm", "Besov norm variants and per-level tables");
  app.add_subcommand("exponent", "Global and pointwise scaling exponents");
  app.add_subcommand("mra-report", "Generator diagnostics and pyramid norms");
  app.add_subcommand("print-config", "Print the full default configuration");

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  return run_command(command, config_path, overrides, out_dir, to_stdout);
}

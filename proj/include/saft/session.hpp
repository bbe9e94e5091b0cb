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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saft/builders.hpp"
#include "saft/config.hpp"
#include "saft/grid.hpp"

namespace saft {

struct SessionOutput {
  std::string name;  // file name, e.g. "norm_report.json"
  std::string data;
};

/// Config-driven batch runs. All outputs are deterministic functions of the
/// configuration: fixed seeds, fixed tie-breaks, single-threaded evaluation.
class Session {
 public:
  RunConfig config;

  /// command: tile | norm | exponent | mra-report | print-config
  std::vector<SessionOutput> run(const std::string& command);

  std::shared_ptr<const TilingSpec> build_spec() const;

  struct BuiltFunction {
    GridFunction f;
    std::optional<SeriesSpec> series;
    double reference_exponent;  // NaN when no closed-form value applies
    double truncation_bound;
  };
  BuiltFunction build_function(std::shared_ptr<const TilingSpec> spec) const;
};

}  // namespace saft

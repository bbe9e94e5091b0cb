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

#include <functional>
#include <optional>
#include <string>

#include "saft/grid.hpp"

namespace saft {

/// Cell-local profile used by the refinement series: a named 1-d shape on
/// the unit tile, or an arbitrary sampled GridFunction supported on T.
struct Profile {
  enum class Kind { Tent, Sawtooth, Step, Parabola, Sampled };
  Kind kind = Kind::Tent;
  std::shared_ptr<const GridFunction> sampled;  // Kind::Sampled only

  static Profile named(const std::string& name);

  /// Samples on the level-lambda grid of the tile, digit-rank order,
  /// zero on the tile boundary by convention.
  std::vector<double> sample(const TilingSpec& spec, int lambda) const;

  /// Reference global scaling exponent of the profile where known
  /// (tent: 1, discontinuous shapes: 0).
  std::optional<double> reference_exponent() const;
};

/// f(y) = sum over cells Q of mu_Q phi(M_Q y) with mu_Q the digit product.
struct SeriesSpec {
  std::vector<double> multipliers;  // one per digit, 0 < |mu_i| < 1
  Profile profile;
  int depth = 0;  // truncation level
};

struct BuildResult {
  GridFunction function;
  double truncation_bound = 0;
};

BuildResult sample_series(const SeriesSpec& series, std::shared_ptr<const TilingSpec> spec,
                          int level, IntVec window);

/// Lacunary sine sum, requires the dyadic line (M = [2], digits {0,1}).
BuildResult sample_weierstrass(double mu, std::shared_ptr<const TilingSpec> spec, int level,
                               int depth, IntVec window);

/// Point evaluation of an arbitrary callable on the grid.
GridFunction sample_function(std::shared_ptr<const TilingSpec> spec, int level, IntVec window,
                             const std::function<double(const std::vector<double>&)>& fn);

GridFunction ingest_csv(const std::string& path, std::shared_ptr<const TilingSpec> spec,
                        int level, IntVec window);
void emit_csv(const GridFunction& f, const std::string& path);
std::string to_csv(const GridFunction& f);
GridFunction ingest_csv_text(const std::string& text, std::shared_ptr<const TilingSpec> spec,
                             int level, IntVec window);

}  // namespace saft

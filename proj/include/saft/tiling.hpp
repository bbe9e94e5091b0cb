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

#include <memory>
#include <optional>
#include <vector>

#include "saft/linalg.hpp"

namespace saft {

/// Self-affine lattice tiling of R^n: an expanding integer dilation matrix M
/// together with a complete residue system of m = |det M| digit vectors.
/// The tile T is the attractor of z -> M^{-1}(z + digit); level-l cells are
/// the sets M^{-l}(T + nu) addressed by digit strings.
///
/// Immutable after construction; all queries are pure.
class TilingSpec {
 public:
  /// Validates and builds. Throws NotExpanding / WrongCount / DuplicateResidue.
  TilingSpec(IntMatrix dilation, std::vector<IntVec> digits);

  int dim() const { return dilation_.n; }
  const IntMatrix& dilation() const { return dilation_; }
  const std::vector<IntVec>& digits() const { return digits_; }
  int digit_count() const { return static_cast<int>(digits_.size()); }  // m
  double lambda0() const { return lambda0_; }

  /// True when M = c*Id and the digit set is exactly {0..c-1}^n. The tile is
  /// then the unit cube and cell queries are exact.
  bool is_cube() const { return cube_base_ != 0; }
  int cube_base() const { return cube_base_; }

  /// Radix point of the repeating first-digit expansion, sum M^{-j} gamma_1.
  const std::vector<double>& radix_origin() const { return radix_origin_; }

  /// Splits z = M z' + gamma_i exactly; returns the digit index i and fills z'.
  int digit_split(const IntVec& z, IntVec& parent) const;

  /// nu_Q = M^{l-1} gamma_{i_1} + ... + gamma_{i_l} for a digit index string.
  IntVec translate_of(const std::vector<int>& digit_string) const;

  double cell_measure(int level) const;  // m^{-l}, |T| = 1

  /// Interior probe point c defining Q0 = T - c (origin interior).
  /// Defaults to the closed-form center for cubes, the cloud centroid
  /// otherwise; override via set_probe_point before geometry() is first used.
  std::vector<double> probe_point() const;
  void set_probe_point(std::vector<double> p);

  struct Geometry {
    double inradius = 0;            // r with B(0,r) inside Q0
    double circumradius = 0;        // max |u|, u in Q0
    double circumradius_ratio = 0;  // d = circumradius / r
    double measure_estimate = 0;    // rasterized cloud volume, -> 1 for tilings
    int depth = 0;                  // point-cloud depth used
  };
  /// Constants of the ball sandwich B(0,r) c Q0 c B(0,dr). Cached.
  const Geometry& geometry() const;

  std::int64_t point_budget() const { return point_budget_; }
  void set_point_budget(std::int64_t b) { point_budget_ = b; }

 private:
  IntMatrix dilation_;
  IntMatrix adjugate_;
  std::int64_t det_ = 0;
  std::vector<IntVec> digits_;
  double lambda0_ = 0;
  int cube_base_ = 0;
  std::vector<double> radix_origin_;
  std::optional<std::vector<double>> probe_override_;
  std::int64_t point_budget_ = 1 << 22;
  mutable std::optional<Geometry> geometry_;
};

/// Address of the cell Q = M^{-l}(T + M^l tile + nu) inside the periodized
/// window: base tile index, level, and the digit index string from the tile.
struct CellAddress {
  IntVec tile;                    // base tile translate
  int level = 0;                  // l
  std::vector<int> digit_string;  // (i_1 .. i_l), digit indices
  IntVec translate;               // nu_Q relative to the tile

  bool operator==(const CellAddress& o) const {
    return tile == o.tile && level == o.level && digit_string == o.digit_string;
  }
};

/// Finite radix approximation of the tile: all m^depth partial sums
/// sum_{j<=depth} M^{-j} gamma_{i_j}, in digit-string rank order.
struct TileApproximation {
  int depth = 0;
  int dim = 0;
  std::vector<double> points;  // flattened, point i at [i*dim, (i+1)*dim)
  std::int64_t count = 0;
  double inradius_estimate = 0;
  double circumradius_ratio = 0;

  const double* point(std::int64_t i) const { return points.data() + i * dim; }
};

/// Complete-residue validation with exact integer arithmetic.
/// Throws NotExpanding, WrongCount, or DuplicateResidue.
std::shared_ptr<const TilingSpec> validate_digit_set(IntMatrix dilation,
                                                     std::vector<IntVec> digits);

TileApproximation tile_points(const TilingSpec& spec, int depth);

/// The m children of a cell, translates M nu_Q + gamma_i.
std::vector<CellAddress> subdivide(const CellAddress& cell, const TilingSpec& spec);

/// Address of a level-l cell containing x. Exact with a lexicographic
/// boundary tie-break for cube tilings; nearest-cloud-point query with a
/// resolution tolerance otherwise (throws NotLocated when inconclusive).
CellAddress locate(const std::vector<double>& x, int level, const TilingSpec& spec);

double cell_measure(const CellAddress& cell, const TilingSpec& spec);

/// Lower-left representative point of a cell (radix point of the repeating
/// first-digit continuation): M^{-l}(M^l tile + nu_Q + radix_origin).
std::vector<double> cell_representative(const CellAddress& cell, const TilingSpec& spec);

/// Distance from x to the cell boundary. Exact for cubes; cloud-based
/// estimate otherwise.
double boundary_distance(const std::vector<double>& x, const CellAddress& cell,
                         const TilingSpec& spec);

}  // namespace saft

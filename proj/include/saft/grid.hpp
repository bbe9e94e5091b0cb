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

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "saft/tiling.hpp"

namespace saft {

/// Samples of a scalar function on the level-L refinement grid over a
/// periodized window of base tiles.
///
/// Sample layout is tile-major, digit-rank-minor: index = tile * m^L + rank
/// with rank = i_1 m^{L-1} + ... + i_L. A level-l cell therefore owns the
/// contiguous block [cell * m^{L-l}, (cell+1) * m^{L-l}) where
/// cell = tile * m^l + prefix_rank. Samples sit at cell representative
/// points; L^p quadrature is the counting measure m^{-L} sum.
class GridFunction {
 public:
  GridFunction(std::shared_ptr<const TilingSpec> spec, int level, IntVec window,
               std::vector<double> samples);

  static GridFunction zeros(std::shared_ptr<const TilingSpec> spec, int level, IntVec window);

  const TilingSpec& spec() const { return *spec_; }
  std::shared_ptr<const TilingSpec> spec_ptr() const { return spec_; }
  int level() const { return level_; }
  const IntVec& window() const { return window_; }
  std::int64_t tile_count() const { return tile_count_; }
  std::int64_t samples_per_tile() const { return samples_per_tile_; }
  std::int64_t size() const { return static_cast<std::int64_t>(samples_.size()); }

  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& mutable_samples() { return samples_; }
  double operator[](std::int64_t i) const { return samples_[i]; }

  std::int64_t cell_count(int l) const { return tile_count_ * ipow(spec_->digit_count(), l); }
  std::int64_t cell_samples(int l) const { return ipow(spec_->digit_count(), level_ - l); }
  std::int64_t cell_of_sample(std::int64_t sample, int l) const { return sample / cell_samples(l); }
  std::int64_t first_sample_of_cell(std::int64_t cell, int l) const { return cell * cell_samples(l); }

  /// Integer level-L lattice coordinate z with x = M^{-L}(z + radix_origin).
  IntVec z_of(std::int64_t sample) const;
  /// Inverse of z_of with periodization over the window.
  std::int64_t index_of_z(const IntVec& z) const;
  /// Physical coordinates of a sample point.
  std::vector<double> point_of(std::int64_t sample) const;

  CellAddress address_of_cell(std::int64_t cell, int l) const;
  std::int64_t cell_index(const CellAddress& address) const;
  /// locate() on the periodized window, returned as a flat cell index.
  std::int64_t locate_cell(const std::vector<double>& x, int l) const;

  /// Wraps x into the window box (componentwise for cube tilings).
  std::vector<double> wrap_point(const std::vector<double>& x) const;

  /// L^p norm with the counting-measure quadrature; p = inf gives the max.
  double lp_norm(double p) const;

  /// Child-cell averaging down to a coarser grid level.
  GridFunction downsample(int target_level) const;

 private:
  std::shared_ptr<const TilingSpec> spec_;
  int level_;
  IntVec window_;
  std::int64_t tile_count_ = 1;
  std::int64_t samples_per_tile_ = 1;
  std::vector<double> samples_;
  bool cube_natural_ = false;  // cube tiling with digits in value order
  std::vector<std::int64_t> cube_modulus_;  // per-dim c^L * w_i
};

double lp_norm_of(const std::vector<double>& values, double p, double cell_measure);

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace saft

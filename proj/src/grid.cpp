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

#include "saft/grid.hpp"

#include <algorithm>
#include <cmath>

#include "saft/error.hpp"

namespace saft {

GridFunction::GridFunction(std::shared_ptr<const TilingSpec> spec, int level, IntVec window,
                           std::vector<double> samples)
    : spec_(std::move(spec)), level_(level), window_(std::move(window)) {
  const int n = spec_->dim();
  if (static_cast<int>(window_.size()) != n) raise(Errc::BadParameters, "window dimension");
  for (auto w : window_)
    if (w < 1) raise(Errc::BadParameters, "window extents must be >= 1");
  if (level_ < 0) raise(Errc::BadParameters, "grid level must be >= 0");

  tile_count_ = 1;
  for (auto w : window_) tile_count_ *= w;
  samples_per_tile_ = ipow(spec_->digit_count(), level_);
  const std::int64_t total = tile_count_ * samples_per_tile_;
  if (total > spec_->point_budget()) raise(Errc::BudgetExceeded, "grid exceeds sample budget");
  if (static_cast<std::int64_t>(samples.size()) != total)
    raise(Errc::ShapeMismatch, "sample count " + std::to_string(samples.size()) +
                                   " does not match grid size " + std::to_string(total));
  samples_ = std::move(samples);

  cube_natural_ = false;
  if (spec_->is_cube()) {
    const int c = spec_->cube_base();
    cube_natural_ = true;
    // Natural order: digit g encodes value (g % c, (g/c) % c, ...).
    for (int g = 0; g < spec_->digit_count() && cube_natural_; ++g) {
      std::int64_t t = g;
      for (int i = 0; i < n; ++i) {
        if (spec_->digits()[g][i] != t % c) cube_natural_ = false;
        t /= c;
      }
    }
    cube_modulus_.assign(n, 0);
    const std::int64_t scale = ipow(c, level_);
    for (int i = 0; i < n; ++i) cube_modulus_[i] = scale * window_[i];
  }
}

GridFunction GridFunction::zeros(std::shared_ptr<const TilingSpec> spec, int level, IntVec window) {
  std::int64_t total = ipow(spec->digit_count(), level);
  for (auto w : window) total *= w;
  return GridFunction(std::move(spec), level, std::move(window), std::vector<double>(total, 0.0));
}

IntVec GridFunction::z_of(std::int64_t sample) const {
  const int n = spec_->dim();
  const int m = spec_->digit_count();
  if (cube_natural_ && n == 1) return {sample};  // tile*c^L + rank, digits in value order
  std::int64_t tile = sample / samples_per_tile_;
  std::int64_t rank = sample % samples_per_tile_;
  std::vector<int> digits(level_);
  for (int l = level_ - 1; l >= 0; --l) {
    digits[l] = static_cast<int>(rank % m);
    rank /= m;
  }
  IntVec z = spec_->translate_of(digits);
  // Row-major tile unflatten.
  IntVec tv(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    tv[i] = tile % window_[i];
    tile /= window_[i];
  }
  IntMatrix mpow = spec_->dilation().power(level_);
  const IntVec shift = mpow.apply(tv);
  for (int i = 0; i < n; ++i) z[i] += shift[i];
  return z;
}

std::int64_t GridFunction::index_of_z(const IntVec& z) const {
  const int n = spec_->dim();
  const int m = spec_->digit_count();
  if (cube_natural_) {
    const int c = spec_->cube_base();
    const std::int64_t scale = ipow(c, level_);
    std::int64_t tile = 0, rank = 0;
    // Per-component wrap, then interleave base-c digits into the rank.
    IntVec v(n);
    for (int i = 0; i < n; ++i) {
      std::int64_t w = z[i] % cube_modulus_[i];
      if (w < 0) w += cube_modulus_[i];
      tile = tile * window_[i] + w / scale;
      v[i] = w % scale;
    }
    for (int l = 0; l < level_; ++l) {
      const std::int64_t p = ipow(c, level_ - 1 - l);
      std::int64_t g = 0;
      for (int i = n - 1; i >= 0; --i) {
        g = g * c + (v[i] / p) % c;
      }
      rank = rank * m + g;
    }
    return tile * samples_per_tile_ + rank;
  }

  IntVec cur = z, parent;
  std::int64_t rank = 0;
  std::int64_t weight = 1;
  for (int l = 0; l < level_; ++l) {
    const int g = spec_->digit_split(cur, parent);
    rank += weight * g;
    weight *= m;
    cur = parent;
  }
  std::int64_t tile = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t w = cur[i] % window_[i];
    if (w < 0) w += window_[i];
    tile = tile * window_[i] + w;
  }
  return tile * samples_per_tile_ + rank;
}

std::vector<double> GridFunction::point_of(std::int64_t sample) const {
  const IntVec z = z_of(sample);
  const int n = spec_->dim();
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = static_cast<double>(z[i]) + spec_->radix_origin()[i];
  return apply_inverse_power(spec_->dilation(), level_, v);
}

CellAddress GridFunction::address_of_cell(std::int64_t cell, int l) const {
  const int n = spec_->dim();
  const int m = spec_->digit_count();
  std::int64_t tile = cell / ipow(m, l);
  std::int64_t rank = cell % ipow(m, l);
  CellAddress address;
  address.level = l;
  address.digit_string.assign(l, 0);
  for (int j = l - 1; j >= 0; --j) {
    address.digit_string[j] = static_cast<int>(rank % m);
    rank /= m;
  }
  address.tile.assign(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    address.tile[i] = tile % window_[i];
    tile /= window_[i];
  }
  address.translate = spec_->translate_of(address.digit_string);
  return address;
}

std::int64_t GridFunction::cell_index(const CellAddress& address) const {
  const int n = spec_->dim();
  const int m = spec_->digit_count();
  std::int64_t tile = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t w = address.tile[i] % window_[i];
    if (w < 0) w += window_[i];
    tile = tile * window_[i] + w;
  }
  std::int64_t rank = 0;
  for (int g : address.digit_string) rank = rank * m + g;
  return tile * ipow(m, address.level) + rank;
}

std::int64_t GridFunction::locate_cell(const std::vector<double>& x, int l) const {
  return cell_index(locate(wrap_point(x), l, *spec_));
}

std::vector<double> GridFunction::wrap_point(const std::vector<double>& x) const {
  std::vector<double> y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = static_cast<double>(window_[i]);
    y[i] -= w * std::floor(y[i] / w);
  }
  return y;
}

double GridFunction::lp_norm(double p) const {
  return lp_norm_of(samples_, p, std::pow(static_cast<double>(spec_->digit_count()), -level_));
}

GridFunction GridFunction::downsample(int target_level) const {
  if (target_level > level_ || target_level < 0) raise(Errc::BadParameters, "downsample level");
  const std::int64_t block = cell_samples(target_level);
  const std::int64_t count = cell_count(target_level);
  std::vector<double> out(count);
  for (std::int64_t c = 0; c < count; ++c) {
    double s = 0;
    for (std::int64_t i = 0; i < block; ++i) s += samples_[c * block + i];
    out[c] = s / static_cast<double>(block);
  }
  return GridFunction(spec_, target_level, window_, std::move(out));
}

double lp_norm_of(const std::vector<double>& values, double p, double cell_measure) {
  if (std::isinf(p)) {
    double mx = 0;
    for (double v : values) mx = std::max(mx, std::abs(v));
    return mx;
  }
  if (p < 1) raise(Errc::BadParameters, "p must be in [1, inf]");
  double s = 0;
  for (double v : values) s += std::pow(std::abs(v), p);
  return std::pow(cell_measure * s, 1.0 / p);
}

}  // namespace saft

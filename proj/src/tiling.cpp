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

#include "saft/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "saft/error.hpp"

namespace saft {

namespace {

double dist2(const double* a, const double* b, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

TileApproximation raw_tile_points(const TilingSpec& spec, int depth);

}  // namespace

TilingSpec::TilingSpec(IntMatrix dilation, std::vector<IntVec> digits)
    : dilation_(std::move(dilation)), digits_(std::move(digits)) {
  const int n = dilation_.n;
  const auto moduli = dilation_.eigenvalue_moduli();
  lambda0_ = moduli.front();
  if (lambda0_ <= 1.0 + 1e-9) raise(Errc::NotExpanding, "an eigenvalue modulus is not > 1");

  det_ = dilation_.determinant();
  const std::int64_t m = std::llabs(det_);
  if (m < 2) raise(Errc::NotExpanding, "|det M| must be at least 2");
  adjugate_ = dilation_.adjugate();

  if (static_cast<std::int64_t>(digits_.size()) != m)
    raise(Errc::WrongCount, "digit count " + std::to_string(digits_.size()) +
                                " does not equal |det M| = " + std::to_string(m));
  for (const auto& g : digits_)
    if (static_cast<int>(g.size()) != n) raise(Errc::WrongCount, "digit dimension mismatch");

  // Pairwise distinct modulo M Z^n: gamma_i - gamma_j must not lie in M Z^n.
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    for (std::size_t j = i + 1; j < digits_.size(); ++j) {
      IntVec diff(n), z;
      for (int c = 0; c < n; ++c) diff[c] = digits_[i][c] - digits_[j][c];
      if (solve_integer(dilation_, diff, z))
        raise(Errc::DuplicateResidue, "digits " + std::to_string(i) + " and " +
                                          std::to_string(j) + " are congruent mod M");
    }
  }

  // Cube detection: M = c*Id with digits {0..c-1}^n.
  cube_base_ = 0;
  const std::int64_t c = dilation_.at(0, 0);
  bool cube = c >= 2;
  for (int i = 0; cube && i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dilation_.at(i, j) != (i == j ? c : 0)) cube = false;
  if (cube) {
    std::set<IntVec> want, have(digits_.begin(), digits_.end());
    IntVec d(n, 0);
    for (std::int64_t r = 0; r < m; ++r) {
      std::int64_t t = r;
      for (int i = 0; i < n; ++i) {
        d[i] = t % c;
        t /= c;
      }
      want.insert(d);
    }
    if (want == have) cube_base_ = static_cast<int>(c);
  }

  // radix_origin = sum_{j>=1} M^{-j} gamma_1, i.e. (M - I) t = gamma_1.
  IntMatrix shifted = dilation_;
  for (int i = 0; i < n; ++i) shifted.at(i, i) -= 1;
  const std::int64_t sdet = shifted.determinant();
  radix_origin_.assign(n, 0.0);
  if (sdet != 0) {
    const IntMatrix sadj = shifted.adjugate();
    const IntVec w = sadj.apply(digits_[0]);
    for (int i = 0; i < n; ++i) radix_origin_[i] = static_cast<double>(w[i]) / sdet;
  }
}

int TilingSpec::digit_split(const IntVec& z, IntVec& parent) const {
  const int n = dim();
  IntVec diff(n);
  for (int i = 0; i < digit_count(); ++i) {
    for (int c = 0; c < n; ++c) diff[c] = z[c] - digits_[i][c];
    if (solve_integer(dilation_, diff, parent)) return i;
  }
  raise(Errc::DuplicateResidue, "incomplete residue system (unreachable for validated specs)");
}

IntVec TilingSpec::translate_of(const std::vector<int>& digit_string) const {
  IntVec nu(dim(), 0);
  for (int idx : digit_string) {
    nu = dilation_.apply(nu);
    for (int c = 0; c < dim(); ++c) nu[c] += digits_[idx][c];
  }
  return nu;
}

double TilingSpec::cell_measure(int level) const {
  return std::pow(static_cast<double>(digit_count()), -level);
}

std::vector<double> TilingSpec::probe_point() const {
  if (probe_override_) return *probe_override_;
  const int n = dim();
  if (is_cube()) return std::vector<double>(n, 0.5);
  // centroid of T: (M - I)^{-1} * mean(digits)
  IntMatrix shifted = dilation_;
  for (int i = 0; i < n; ++i) shifted.at(i, i) -= 1;
  const std::int64_t sdet = shifted.determinant();
  std::vector<double> mean(n, 0.0);
  for (const auto& g : digits_)
    for (int i = 0; i < n; ++i) mean[i] += static_cast<double>(g[i]) / digit_count();
  const IntMatrix sadj = shifted.adjugate();
  std::vector<double> c = sadj.apply(mean);
  for (double& v : c) v /= static_cast<double>(sdet);
  return c;
}

void TilingSpec::set_probe_point(std::vector<double> p) {
  if (static_cast<int>(p.size()) != dim()) raise(Errc::BadParameters, "probe point dimension");
  probe_override_ = std::move(p);
  geometry_.reset();
}

const TilingSpec::Geometry& TilingSpec::geometry() const {
  if (geometry_) return *geometry_;
  Geometry g;
  const int n = dim();
  if (is_cube() && !probe_override_) {
    g.inradius = 0.5;
    g.circumradius = 0.5 * std::sqrt(static_cast<double>(n));
    g.circumradius_ratio = g.circumradius / g.inradius;
    g.measure_estimate = 1.0;
    g.depth = 0;
    geometry_ = g;
    return *geometry_;
  }

  // Depth such that m^depth stays within a modest cloud size.
  int depth = 1;
  while (ipow(digit_count(), depth + 1) <= 65536 && depth < 30) ++depth;
  const TileApproximation cloud = raw_tile_points(*this, depth);
  const std::vector<double> c = probe_point();

  double circ2 = 0;
  for (std::int64_t i = 0; i < cloud.count; ++i) circ2 = std::max(circ2, dist2(cloud.point(i), c.data(), n));
  g.circumradius = std::sqrt(circ2);

  // Rasterize the cloud; the inradius is the distance from the probe point to
  // the nearest uncovered raster cell, shrunk by one cell diagonal so the
  // estimate stays conservative.
  const double h = 2.0 * std::max(g.circumradius, 1e-3) * std::pow(lambda0_, -depth);
  std::vector<double> lo(n, std::numeric_limits<double>::max()), hi(n, std::numeric_limits<double>::lowest());
  for (std::int64_t i = 0; i < cloud.count; ++i)
    for (int d = 0; d < n; ++d) {
      lo[d] = std::min(lo[d], cloud.point(i)[d]);
      hi[d] = std::max(hi[d], cloud.point(i)[d]);
    }
  std::vector<std::int64_t> cells(n);
  std::int64_t total = 1;
  for (int d = 0; d < n; ++d) {
    cells[d] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((hi[d] - lo[d]) / h)) + 1);
    total *= cells[d];
  }
  std::vector<char> covered(total, 0);
  auto flat = [&](const std::vector<std::int64_t>& ix) {
    std::int64_t f = 0;
    for (int d = 0; d < n; ++d) f = f * cells[d] + ix[d];
    return f;
  };
  std::vector<std::int64_t> ix(n);
  for (std::int64_t i = 0; i < cloud.count; ++i) {
    for (int d = 0; d < n; ++d)
      ix[d] = std::min(cells[d] - 1, std::max<std::int64_t>(0, static_cast<std::int64_t>((cloud.point(i)[d] - lo[d]) / h)));
    covered[flat(ix)] = 1;
  }

  std::int64_t covered_count = 0, interior_count = 0;
  std::vector<std::int64_t> jx(n);
  for (std::int64_t f = 0; f < total; ++f) {
    if (!covered[f]) continue;
    ++covered_count;
    std::int64_t rest = f;
    for (int d = n - 1; d >= 0; --d) {
      ix[d] = rest % cells[d];
      rest /= cells[d];
    }
    bool interior = true;
    for (int d = 0; interior && d < n; ++d) {
      for (int s = -1; s <= 1; s += 2) {
        jx = ix;
        jx[d] += s;
        if (jx[d] < 0 || jx[d] >= cells[d] || !covered[flat(jx)]) {
          interior = false;
          break;
        }
      }
    }
    if (interior) ++interior_count;
  }
  // Boundary raster cells are half inside on average.
  g.measure_estimate = 0.5 * (covered_count + interior_count) * std::pow(h, n);

  double best2 = std::numeric_limits<double>::max();
  std::vector<double> cc(n);
  for (std::int64_t f = 0; f < total; ++f) {
    if (covered[f]) continue;
    std::int64_t rest = f;
    for (int d = n - 1; d >= 0; --d) {
      ix[d] = rest % cells[d];
      rest /= cells[d];
    }
    for (int d = 0; d < n; ++d) cc[d] = lo[d] + (ix[d] + 0.5) * h;
    best2 = std::min(best2, dist2(cc.data(), c.data(), n));
  }
  // Distance to the raster bounding box also bounds the inradius.
  for (int d = 0; d < n; ++d) {
    best2 = std::min(best2, (c[d] - (lo[d] - 0.5 * h)) * (c[d] - (lo[d] - 0.5 * h)));
    best2 = std::min(best2, ((hi[d] + 0.5 * h) - c[d]) * ((hi[d] + 0.5 * h) - c[d]));
  }
  g.inradius = std::max(0.0, std::sqrt(best2) - h * std::sqrt(static_cast<double>(n)));
  g.circumradius_ratio = g.circumradius / std::max(g.inradius, 1e-12);
  g.depth = depth;
  geometry_ = g;
  return *geometry_;
}

std::shared_ptr<const TilingSpec> validate_digit_set(IntMatrix dilation, std::vector<IntVec> digits) {
  return std::make_shared<const TilingSpec>(std::move(dilation), std::move(digits));
}

namespace {

// Partial radix sums only; geometry constants are attached by the public
// entry point (geometry() itself builds a cloud through this helper).
TileApproximation raw_tile_points(const TilingSpec& spec, int depth) {
  if (depth < 1) raise(Errc::BadParameters, "depth must be >= 1");
  const int n = spec.dim();
  const int m = spec.digit_count();
  std::int64_t count = 1;
  for (int d = 0; d < depth; ++d) {
    count *= m;
    if (count > spec.point_budget())
      raise(Errc::BudgetExceeded, "m^depth exceeds the configured point budget");
  }

  TileApproximation out;
  out.depth = depth;
  out.dim = n;
  out.count = count;

  // points(d+1) = M^{-1}(gamma_g + points(d)), prepending digit g keeps the
  // digit-string rank order.
  std::vector<double> pts(n, 0.0);
  std::int64_t sz = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<double> next(static_cast<std::size_t>(sz) * m * n);
    for (int g = 0; g < m; ++g) {
      for (std::int64_t i = 0; i < sz; ++i) {
        std::vector<double> v(n);
        for (int c = 0; c < n; ++c)
          v[c] = pts[i * n + c] + static_cast<double>(spec.digits()[g][c]);
        v = apply_inverse_power(spec.dilation(), 1, v);
        for (int c = 0; c < n; ++c) next[(static_cast<std::size_t>(g) * sz + i) * n + c] = v[c];
      }
    }
    pts = std::move(next);
    sz *= m;
  }
  out.points = std::move(pts);
  return out;
}

}  // namespace

TileApproximation tile_points(const TilingSpec& spec, int depth) {
  TileApproximation out = raw_tile_points(spec, depth);
  const auto& geo = spec.geometry();
  out.inradius_estimate = geo.inradius;
  out.circumradius_ratio = geo.circumradius_ratio;
  return out;
}

std::vector<CellAddress> subdivide(const CellAddress& cell, const TilingSpec& spec) {
  std::vector<CellAddress> children;
  children.reserve(spec.digit_count());
  for (int i = 0; i < spec.digit_count(); ++i) {
    CellAddress child;
    child.tile = cell.tile;
    child.level = cell.level + 1;
    child.digit_string = cell.digit_string;
    child.digit_string.push_back(i);
    child.translate = spec.dilation().apply(cell.translate);
    for (int c = 0; c < spec.dim(); ++c) child.translate[c] += spec.digits()[i][c];
    children.push_back(std::move(child));
  }
  return children;
}

namespace {

CellAddress locate_cube(const std::vector<double>& x, int level, const TilingSpec& spec) {
  const int n = spec.dim();
  const int c = spec.cube_base();
  CellAddress cell;
  cell.tile.assign(n, 0);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    const double f = std::floor(x[i]);
    cell.tile[i] = static_cast<std::int64_t>(f);
    y[i] = x[i] - f;  // in [0,1)
  }
  // Digit value lookup.
  std::map<IntVec, int> index_of;
  for (int i = 0; i < spec.digit_count(); ++i) index_of[spec.digits()[i]] = i;

  cell.level = level;
  IntVec dv(n);
  for (int l = 0; l < level; ++l) {
    for (int i = 0; i < n; ++i) {
      const double z = y[i] * c;
      const double zf = std::floor(z);
      if (z == zf && z > 0.0) {
        // Boundary point: prefer the lower cell, continue at its right edge.
        dv[i] = static_cast<std::int64_t>(zf) - 1;
        y[i] = 1.0;
      } else {
        dv[i] = static_cast<std::int64_t>(zf);
        y[i] = z - zf;
      }
    }
    cell.digit_string.push_back(index_of.at(dv));
  }
  cell.translate = spec.translate_of(cell.digit_string);
  return cell;
}

struct Candidate {
  IntVec tile;
  std::vector<int> digits;
  std::vector<double> y;  // M^l x - nu_abs, in tile coordinates
};

CellAddress locate_general(const std::vector<double>& x, int level, const TilingSpec& spec) {
  const int n = spec.dim();
  // Modest cloud: dense enough for membership at the requested levels.
  int depth = 1;
  while (ipow(spec.digit_count(), depth + 1) <= 16384 && depth < 24) ++depth;
  const TileApproximation cloud = tile_points(spec, depth);
  const auto& geo = spec.geometry();
  const double tol = 2.0 * std::max(geo.circumradius, 0.5) * std::pow(spec.lambda0(), -depth);

  auto dist_to_cloud = [&](const std::vector<double>& y) {
    double best = std::numeric_limits<double>::max();
    for (std::int64_t i = 0; i < cloud.count; ++i) best = std::min(best, dist2(cloud.point(i), y.data(), n));
    return std::sqrt(best);
  };

  // Candidate base tiles within the circumradius box around x.
  std::vector<Candidate> cands;
  const int reach = static_cast<int>(std::ceil(geo.circumradius + 1.0));
  std::vector<std::int64_t> off(n, -reach);
  while (true) {
    Candidate cand;
    cand.tile.assign(n, 0);
    cand.y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      cand.tile[i] = static_cast<std::int64_t>(std::llround(x[i])) + off[i];
      cand.y[i] = x[i] - static_cast<double>(cand.tile[i]);
    }
    if (dist_to_cloud(cand.y) <= tol) cands.push_back(std::move(cand));
    int d = n - 1;
    while (d >= 0 && off[d] == reach) {
      off[d] = -reach;
      --d;
    }
    if (d < 0) break;
    ++off[d];
  }

  for (int l = 0; l < level; ++l) {
    std::vector<Candidate> next;
    for (const auto& cand : cands) {
      const std::vector<double> my = spec.dilation().apply(cand.y);
      for (int g = 0; g < spec.digit_count(); ++g) {
        std::vector<double> child(n);
        for (int i = 0; i < n; ++i) child[i] = my[i] - static_cast<double>(spec.digits()[g][i]);
        if (dist_to_cloud(child) <= tol) {
          Candidate cc = cand;
          cc.digits.push_back(g);
          cc.y = std::move(child);
          next.push_back(std::move(cc));
        }
      }
    }
    cands = std::move(next);
    if (cands.empty()) raise(Errc::NotLocated, "no cell claims the point at level " + std::to_string(l + 1));
  }
  if (cands.size() != 1)
    raise(Errc::NotLocated, "membership inconclusive at configured depth (" +
                                std::to_string(cands.size()) + " candidates)");
  CellAddress cell;
  cell.tile = cands[0].tile;
  cell.level = level;
  cell.digit_string = cands[0].digits;
  cell.translate = spec.translate_of(cell.digit_string);
  return cell;
}

}  // namespace

CellAddress locate(const std::vector<double>& x, int level, const TilingSpec& spec) {
  if (static_cast<int>(x.size()) != spec.dim()) raise(Errc::BadParameters, "point dimension");
  if (level < 0) raise(Errc::BadParameters, "level must be >= 0");
  if (spec.is_cube()) return locate_cube(x, level, spec);
  return locate_general(x, level, spec);
}

double cell_measure(const CellAddress& cell, const TilingSpec& spec) {
  return spec.cell_measure(cell.level);
}

std::vector<double> cell_representative(const CellAddress& cell, const TilingSpec& spec) {
  const int n = spec.dim();
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = static_cast<double>(cell.translate[i]) + spec.radix_origin()[i];
  v = apply_inverse_power(spec.dilation(), cell.level, v);
  for (int i = 0; i < n; ++i) v[i] += static_cast<double>(cell.tile[i]);
  return v;
}

double boundary_distance(const std::vector<double>& x, const CellAddress& cell,
                         const TilingSpec& spec) {
  const int n = spec.dim();
  if (spec.is_cube()) {
    const double h = std::pow(static_cast<double>(spec.cube_base()), -cell.level);
    std::vector<double> rep = cell_representative(cell, spec);
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i) {
      best = std::min(best, x[i] - rep[i]);
      best = std::min(best, rep[i] + h - x[i]);
    }
    return std::max(0.0, best);
  }
  // General tiles: distance in tile coordinates to the rasterized complement,
  // rescaled by the cell contraction. Coarse but deterministic.
  std::vector<double> y(n);
  std::vector<double> scaled = x;
  for (int i = 0; i < n; ++i) scaled[i] -= static_cast<double>(cell.tile[i]);
  scaled = spec.dilation().power(cell.level).apply(scaled);
  for (int i = 0; i < n; ++i) y[i] = scaled[i] - static_cast<double>(cell.translate[i]);

  int depth = 1;
  while (ipow(spec.digit_count(), depth + 1) <= 16384 && depth < 24) ++depth;
  const TileApproximation cloud = tile_points(spec, depth);
  // Distance to the nearest point of the complement's raster: approximate
  // dist(y, boundary of T) by the gap to the cloud's alpha-shape, using the
  // conservative sandwich r <= dist + cell diameter.
  double dmin = std::numeric_limits<double>::max();
  const auto& geo = spec.geometry();
  const double cell_diam = 2.0 * geo.circumradius * std::pow(spec.lambda0(), -depth);
  // Nearest cloud point distance: ~0 inside T. Walk rays outward to find the
  // complement; sample directions along the axes.
  for (int i = 0; i < n; ++i) {
    for (int s = -1; s <= 1; s += 2) {
      double step = cell_diam;
      std::vector<double> probe = y;
      double traveled = 0;
      while (traveled < 2.0 * geo.circumradius + 1.0) {
        probe[i] = y[i] + s * (traveled + step);
        double best = std::numeric_limits<double>::max();
        for (std::int64_t p = 0; p < cloud.count; ++p)
          best = std::min(best, dist2(cloud.point(p), probe.data(), n));
        if (std::sqrt(best) > cell_diam) break;
        traveled += step;
      }
      dmin = std::min(dmin, traveled + step);
    }
  }
  const double scale = std::pow(spec.lambda0(), -cell.level);
  return std::max(0.0, (dmin - cell_diam) * scale);
}

}  // namespace saft

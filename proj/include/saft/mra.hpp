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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "saft/besov.hpp"
#include "saft/grid.hpp"

namespace saft {

/// Finite generator family Phi = {phi_1 .. phi_N}. Built-in kinds are
/// sampled exactly at cell representative points; user data must declare a
/// support radius.
class GeneratorSet {
 public:
  enum class Kind { HaarIndicator, MonomialOnTile, BSpline, Sampled };

  struct Member {
    std::string name;
    Kind kind = Kind::HaarIndicator;
    std::vector<int> alpha;  // MonomialOnTile exponent
    int spline_order = 0;    // BSpline
    std::shared_ptr<const GridFunction> sampled;
    double support_radius = 1.0;  // lattice units around the base tile
  };

  static GeneratorSet haar(std::shared_ptr<const TilingSpec> spec);
  static GeneratorSet monomials(std::shared_ptr<const TilingSpec> spec, int degree);
  static GeneratorSet bspline(std::shared_ptr<const TilingSpec> spec, int order);
  static GeneratorSet from_samples(std::shared_ptr<const TilingSpec> spec,
                                   std::vector<std::shared_ptr<const GridFunction>> members,
                                   double support_radius);

  const TilingSpec& spec() const { return *spec_; }
  std::shared_ptr<const TilingSpec> spec_ptr() const { return spec_; }
  int count() const { return static_cast<int>(members_.size()); }
  const std::vector<Member>& members() const { return members_; }

  /// Intended polynomial reproduction order of the system (degree cap + 1).
  int order() const { return order_; }

  /// Nonzero samples of member j on the level-lambda lattice: parallel
  /// offset/value arrays in a deterministic order.
  struct Samples {
    std::vector<IntVec> offsets;
    std::vector<double> values;
  };
  Samples sampled_at(int j, int lambda) const;

  /// True when every member is supported inside the base tile, which makes
  /// distinct shifts exactly disjoint on the grid.
  bool tile_supported() const;

 private:
  std::shared_ptr<const TilingSpec> spec_;
  std::vector<Member> members_;
  int order_ = 1;
};

struct StabilityCertificate {
  double min_eigenvalue = 0;
  double max_eigenvalue = 0;
};

struct RefinementMask {
  std::vector<IntVec> offsets;                      // candidate nu
  std::vector<std::vector<std::vector<double>>> c;  // c[j][k][offset]
  double residual = 0;
};

struct StrangFixReport {
  int order = 0;
  double max_residual = 0;
  bool pass = false;
};

struct CoefficientPyramid {
  int lmax = 0;
  /// a[l][j] is the canonical coefficient array of Eq-style level l,
  /// l = 0 holding the base projection and l >= 1 the residue coefficients.
  std::vector<std::vector<std::vector<double>>> a;
  std::vector<std::vector<double>> residues;  // R_l f on the grid, l = 0..lmax
  std::vector<double> p0;                     // P_0 f
  std::vector<double> plast;                  // P_{lmax+1} f
};

/// Multiresolution machinery bound to one grid layout (spec, window, level).
/// Generator preparation is a single-owner setup phase; afterwards all
/// per-level computations are pure.
class MRASystem {
 public:
  MRASystem(GeneratorSet generators, const GridFunction& reference);

  const GeneratorSet& generators() const { return generators_; }

  /// Level-0 periodized Gram eigen-bounds; throws Unstable below tolerance.
  StabilityCertificate check_stability() const;

  /// Duals sampled on the window grid, biorthogonal to the member shifts in
  /// the discrete inner product.
  std::vector<GridFunction> dual_set() const;

  /// Two-scale coefficients by least squares (closed form cross-checked for
  /// the monomial family); throws NotRefinable above residual tolerance.
  RefinementMask refinement_mask() const;

  /// P_l f on the grid.
  GridFunction project(const GridFunction& f, int l) const;

  /// ||f - P_l f||_p, the computable upper companion of the best
  /// approximation error from V_l.
  double sigma(const GridFunction& f, int l, double p) const;

  CoefficientPyramid pyramid(const GridFunction& f, int lmax) const;

  /// max |q - P_0 q| over interior monomials of degree < order.
  StrangFixReport strang_fix_check(int order) const;

  /// sigma / residue / coefficient (and Haar wavelet) norm variants from one
  /// pyramid, with per-level arrays and slopes.
  NormReport norm_variants(const GridFunction& f, double s, double p, double q, int lmax) const;

  /// Canonical coefficients of f at one level (Gram-solved dual pairings).
  std::vector<std::vector<double>> coefficients(const GridFunction& f, int l) const;
  GridFunction synthesize(const std::vector<std::vector<double>>& coeffs, int l) const;

 private:
  struct LevelOps;
  const LevelOps& level_ops(int l) const;
  std::vector<std::vector<double>> raw_pairings(const std::vector<double>& samples, int l) const;
  std::vector<std::vector<double>> gram_solve(const std::vector<std::vector<double>>& b,
                                              int l) const;

  GeneratorSet generators_;
  std::shared_ptr<const TilingSpec> spec_;
  int grid_level_;
  IntVec window_;
  GridFunction layout_;  // zero carrier defining the sample layout
  mutable std::vector<std::shared_ptr<LevelOps>> ops_;
};

/// Piecewise-constant wavelet family on the digit children of the tile:
/// m-1 coefficient rows, orthonormal and orthogonal to constants
/// (deterministic completion, so coefficients are reproducible).
struct HaarWavelets {
  int m = 2;
  std::vector<std::vector<double>> rows;  // (m-1) x m
};

HaarWavelets haar_wavelets(const TilingSpec& spec);

struct WaveletPyramid {
  int lmax = 0;
  std::vector<double> a0;                       // base scaling coefficients
  std::vector<std::vector<std::vector<double>>> b;  // b[l][eps][nu]
  double parseval_lhs = 0;  // sum |a0|^2 + sum |b|^2
  double parseval_rhs = 0;  // ||f||_2^2
};

/// Requires the single-indicator generator (WrongGenerator otherwise).
WaveletPyramid wavelet_coeffs(const GridFunction& f, const HaarWavelets& wavelets, int lmax);

/// Empirical decay exponent of a generator's own oscillation sequence, used
/// to flag (never certify) the s0 hypothesis for sampled generators.
double generator_s0_estimate(const GeneratorSet& generators, int j, int levels);

}  // namespace saft

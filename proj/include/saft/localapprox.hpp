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
#include <vector>

#include "saft/grid.hpp"

namespace saft {

/// Monomial multi-indices |alpha| <= k in graded lexicographic order.
struct MonomialBasis {
  int dim = 1;
  int degree = 0;
  std::vector<std::vector<int>> exponents;

  static MonomialBasis make(int dim, int degree);
  int size() const { return static_cast<int>(exponents.size()); }
};

/// Best-fit polynomial on one cell, kept with its affine sample frame so the
/// fitted values can be re-evaluated exactly.
struct PolynomialPatch {
  CellAddress cell;
  MonomialBasis basis;
  std::vector<double> center;  // frame shift
  std::vector<double> halfwidth;  // frame scale per dimension
  std::vector<double> coefficients;

  double evaluate(const std::vector<double>& x) const;
};

/// Shared factorization for all cells of one level: in-cell sample offsets
/// are translation invariant, so one pivoted QR serves every cell.
class CellFitter {
 public:
  CellFitter(const GridFunction& f, int level, int degree);

  int level() const { return level_; }
  int degree() const { return degree_; }
  const MonomialBasis& basis() const { return basis_; }
  std::int64_t samples_per_cell() const { return block_; }

  /// L2 coefficients and per-sample residuals for one cell.
  void fit(std::int64_t cell, std::vector<double>& coefficients,
           std::vector<double>& residuals) const;

  /// Residual p-norm of the L2 fit, normalized by the cell measure
  /// (the Omega quantity).
  double omega(std::int64_t cell, double p) const;

  /// Near-minimal residual p-norm over degree-k polynomials: exact for
  /// p in {2} and for k = 0 with p in {1, inf}; iteratively reweighted
  /// refinement of the L2 fit otherwise. Never exceeds omega.
  double osc(std::int64_t cell, double p) const;

  PolynomialPatch patch(const GridFunction& f, std::int64_t cell) const;

 private:
  double osc_via_irls(std::int64_t cell, double p) const;

  const GridFunction* f_;
  int level_;
  int degree_;
  MonomialBasis basis_;
  std::int64_t block_;
  std::vector<double> center_;
  std::vector<double> halfwidth_;
  std::vector<double> design_;  // block_ x basis, row-major
  struct Impl;
  std::shared_ptr<Impl> impl_;  // factored QR
};

PolynomialPatch project_cell(const GridFunction& f, const CellAddress& cell, int degree);

double omega(const GridFunction& f, const std::vector<double>& x, int level, int degree, double p);
double osc(const GridFunction& f, const std::vector<double>& x, int level, int degree, double p);

enum class SeamPolicy { Wrap, Interior };

/// Deterministic probe set of grid steps u with (k+1)|M^l u| < r/2:
/// geometrically spaced axis steps plus seeded lattice directions, at most 64.
std::vector<IntVec> difference_steps(const GridFunction& f, int level, int degree);

/// max over the probe set of ||Delta_u^{k+1} f||_p (periodic wrap; the
/// Interior policy drops samples whose difference stencil crosses the seam).
double difference_norm(const GridFunction& f, int level, int degree, double p,
                       SeamPolicy policy = SeamPolicy::Wrap);

/// Cell-normalized local difference sup, the pointwise companion of
/// difference_norm at a fixed point.
double local_difference(const GridFunction& f, const std::vector<double>& x, int level,
                        int degree, double p);

struct PointwiseTriple {
  double osc = 0;
  double omega = 0;
  double difference = 0;
};

/// Per-level (osc, omega, local difference) at a fixed point, levels 0..lmax.
std::vector<PointwiseTriple> pointwise_sequences(const GridFunction& f,
                                                 const std::vector<double>& x, int degree,
                                                 double p, int lmax);

}  // namespace saft

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
#include <string>
#include <vector>

#include "saft/besov.hpp"
#include "saft/builders.hpp"
#include "saft/littlewood_paley.hpp"
#include "saft/mra.hpp"

namespace saft {

/// Scaling-exponent estimate from a per-level regression. Estimates are only
/// meaningful below the route's validity ceiling; at or near it the
/// saturation flag is raised instead of failing.
struct ExponentReport {
  double estimate = 0;
  std::string route;
  int level_lo = 0;
  int level_hi = 0;
  int n_levels = 0;
  double fit_quality = 0;  // rms residual of the log2 regression
  double ceiling = 0;
  bool saturation_flag = false;
  bool floor_flag = false;  // per-level data at the resolution floor
  double tail_min_slope = 0;
  double tail_max_slope = 0;
  std::vector<double> levels;  // the regressed per-level quantities
};

/// Exponent from an already-computed per-level sequence t_l ~ lambda0^{-al}.
ExponentReport exponent_from_levels(const std::vector<double>& levels, double lambda0,
                                    const std::string& route, int l_lo, int l_hi, double ceiling,
                                    double scale_hint);

/// Global routes. osc/diff need the polynomial degree; band needs an
/// isotropic cube tiling; sigma/residue/coeff/wavelet need a prepared system.
ExponentReport global_exponent_osc(const GridFunction& f, double p, int degree, int l_lo, int l_hi);
ExponentReport global_exponent_diff(const GridFunction& f, double p, int degree, int l_lo,
                                    int l_hi);
ExponentReport global_exponent_band(const GridFunction& f, double p, int l_lo, int l_hi);
ExponentReport global_exponent_mra(const GridFunction& f, const MRASystem& mra,
                                   const std::string& route, double p, int l_lo, int l_hi);

/// Pointwise slope regression on the local (osc | omega | diff) sequence
/// over levels [l_lo, lmax].
ExponentReport pointwise_exponent(const GridFunction& f, const std::vector<double>& x, double p,
                                  int degree, int lmax, const std::string& route = "osc",
                                  int l_lo = 0);

/// Shell-minimum estimate of the double limit
/// liminf log|f - S_l f| / log(lambda0^{-l} + |x-y|).
ExponentReport double_limit_alpha(const GridFunction& f, const LPDecomposition& lp,
                                  const std::vector<double>& x, int lmax);

/// Same functional against arbitrary per-level approximants (e.g. the
/// multiresolution projections P_l f): partials[l] approximates f at scale
/// lambda0^{-l}.
ExponentReport double_limit_from_partials(const GridFunction& f,
                                          const std::vector<std::vector<double>>& partials,
                                          double lambda0, const std::vector<double>& x, int lmax);

struct TauReport {
  double value = 0;        // tail-min liminf surrogate
  double slope_value = 0;  // affine-regression estimate
  std::vector<double> ratios;
  double ratio_sup = 0;      // sup Delta_l / Delta_{l+1} (tau1 only)
  bool bounded_ratio = false;
  double via_remark = 0;  // tau0 value transported when the ratio is bounded
};

/// Digit-product functional with level denominators.
TauReport tau0(const SeriesSpec& series, const TilingSpec& spec, const std::vector<double>& x,
               int lmax);
/// Digit-product functional with boundary-distance denominators; throws
/// DegenerateBoundaryDistance when x hits a cell boundary.
TauReport tau1(const SeriesSpec& series, const TilingSpec& spec, const std::vector<double>& x,
               int lmax);

struct Theorem4Audit {
  double alpha_estimate = 0;
  double alpha_profile = 0;  // NaN when unknown
  double tau0_value = 0;
  double tau1_value = 0;
  bool tau1_degenerate = false;
  bool lower_ok = false;  // alpha >= min(alpha_phi, tau0) - tol
  bool upper_ok = false;  // alpha <= tau0 + tol
  double tolerance = 0.1;
};

Theorem4Audit theorem4_audit(const SeriesSpec& series, const GridFunction& f,
                             const std::vector<double>& x, int lmax, int degree, int l_lo,
                             int l_hi);

struct OrderingAudit {
  double alpha_global = 0;                 // p = inf global estimate
  std::vector<double> ps;                  // probed integrability indices
  std::vector<double> alpha_p_pointwise;   // matching pointwise estimates
  bool chain_ok = false;
  double tolerance = 0.1;
};

/// Checks alpha(f) <= alpha(f,x) <= alpha_p(f,x) <= alpha_q(f,x), q <= p,
/// up to the regression tolerance.
OrderingAudit proposition5_audit(const GridFunction& f, const std::vector<double>& x, int degree,
                                 const std::vector<double>& ps, int l_lo, int l_hi);

}  // namespace saft

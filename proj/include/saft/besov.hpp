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

#include "saft/localapprox.hpp"

namespace saft {

/// Truncated level-weighted norm assembly. Values are always reported with
/// the truncation level and the magnitude of the last weighted term, so
/// divergence is diagnosable; nothing is extrapolated to l = infinity.
struct NormReport {
  double s = 0;
  double p = 2;
  double q = 2;
  int degree = 0;  // k, with k+1 > s
  int lmax = 0;
  double lp_norm = 0;                                    // ||f||_p
  std::map<std::string, double> variants;                // total per variant
  std::map<std::string, std::vector<double>> per_level;  // unweighted t_l
  std::map<std::string, double> last_weighted_term;
  std::map<std::string, double> slopes;  // log2 regression per level
};

/// Smallest admissible polynomial degree for smoothness s.
int default_degree_for(double s);

/// ell^q aggregate of lambda0^{l s} t_l over available levels (NaN entries
/// skipped); q = inf takes the sup.
double weighted_aggregate(const std::vector<double>& t, double s, double q, double lambda0);

/// ||osc^k_p f(.,l)||_p over the window: cells at level l, counting measure.
double osc_level_norm(const GridFunction& f, int level, int degree, double p, bool use_osc);

/// Eq-style truncated Besov norm from cell oscillations.
NormReport besov_norm(const GridFunction& f, double s, double p, double q, int degree, int lmax);

/// osc-, Omega-, and difference-based norms from the same per-level data,
/// with per-variant slopes for the equivalence audit.
NormReport norm_variants(const GridFunction& f, double s, double p, double q, int degree,
                         int lmax, SeamPolicy policy = SeamPolicy::Wrap);

struct PointwiseNorm {
  double s = 0, p = 2, q = 2;
  int degree = 0, lmax = 0;
  std::map<std::string, double> variants;  // osc / omega / diff
  std::map<std::string, std::vector<double>> per_level;
  bool divergence_flag = false;  // weighted terms still growing at the tail
};

/// Truncated pointwise functional in its three equivalent forms.
PointwiseNorm tspq_value(const GridFunction& f, const std::vector<double>& x, double s, double p,
                         double q, int degree, int lmax);

/// Least-squares slope of log2(t_l) against l over [l_lo, l_hi]; NaN and
/// non-positive entries are skipped. Returns {slope, rms_residual, n_used}.
struct SlopeFit {
  double slope = 0;
  double residual = 0;
  int n_used = 0;
};
SlopeFit log2_slope(const std::vector<double>& t, int l_lo, int l_hi);

}  // namespace saft

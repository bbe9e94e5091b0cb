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

#include "saft/grid.hpp"

namespace saft {

/// Frequency decomposition f = S_0 f + sum f_l for isotropic dilations
/// M = lambda0 * Id. The low-pass symbol is a radial raised cosine, equal to
/// one for |xi| <= 1/lambda0 and zero for |xi| >= 1; each band is the
/// difference of consecutive low-pass cuts, so the telescoping
/// reconstruction S_0 f + sum_{l<=lmax} f_l = S_{lmax+1} f is exact.
struct LPDecomposition {
  double lambda0 = 2;
  int lmax = 0;
  std::vector<std::vector<double>> partial;  // S_l f, l = 0 .. lmax+1
  std::vector<std::vector<double>> band;     // f_l = S_{l+1} f - S_l f

  const std::vector<double>& lowpass() const { return partial.front(); }
};

/// Raised-cosine low-pass symbol evaluated at |xi| / lambda0^l.
double lp_mask(double t, double lambda0);

/// Requires a cube tiling with M = lambda0 Id; lmax+1 must stay below the
/// grid Nyquist frequency (LevelBeyondNyquist otherwise).
LPDecomposition lp_decompose(const GridFunction& f, int lmax);

struct LPNormReport {
  double s = 0, p = 2, q = 2;
  int lmax = 0;
  std::map<std::string, double> variants;                // "band", "lowpass"
  std::map<std::string, std::vector<double>> per_level;  // ||f_l||_p, ||f-S_l f||_p
};

/// Band norm ||S_0 f||_p + ellq(lambda^{ls} ||f_l||_p) and the low-pass-error
/// companion ||f||_p + ellq(lambda^{ls} ||f - S_l f||_p).
LPNormReport lp_besov_norm(const GridFunction& f, double s, double p, double q, int lmax);

struct LPPointwiseAudit {
  double s = 0;
  double s_prime = 0;
  int lmax = 0;
  /// Smallest admissible constants, cumulative over levels <= j.
  std::vector<double> c_lowpass_by_lmax;  // sup |f - S_l f| / (h_l + |x-y|)^s
  std::vector<double> c_band_by_lmax;     // sup |f_l| lambda^{ls} / (1 + lambda^l |x-y|)^{s'}
  double c_lowpass = 0;
  double c_band = 0;
};

/// Fits the smallest constants of the pointwise low-pass and band bounds at
/// x; growth of the constant in lmax signals s above the local exponent.
LPPointwiseAudit pointwise_lp_audit(const GridFunction& f, const LPDecomposition& lp,
                                    const std::vector<double>& x, double s, double s_prime);

/// Periodic distance between two points over the window box.
double periodic_distance(const GridFunction& f, const std::vector<double>& x,
                         const std::vector<double>& y);

}  // namespace saft

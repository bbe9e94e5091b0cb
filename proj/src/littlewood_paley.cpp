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

#include "saft/littlewood_paley.hpp"

#include <cmath>

#include "saft/besov.hpp"
#include "saft/error.hpp"
#include "saft/fft.hpp"

namespace saft {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_isotropic(const GridFunction& f) {
  if (!f.spec().is_cube())
    raise(Errc::WrongDilation, "Littlewood-Paley analysis needs M = lambda0 Id with cube digits");
}

}  // namespace

double lp_mask(double t, double lambda0) {
  const double inner = 1.0 / lambda0;
  if (t <= inner) return 1.0;
  if (t >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (t - inner) / (1.0 - inner)));
}

LPDecomposition lp_decompose(const GridFunction& f, int lmax) {
  require_isotropic(f);
  const int n = f.spec().dim();
  const double lambda0 = static_cast<double>(f.spec().cube_base());
  const std::int64_t scale = ipow(f.spec().cube_base(), f.level());

  std::vector<std::int64_t> dims(n);
  double nyquist = 1e300;
  for (int d = 0; d < n; ++d) {
    dims[d] = scale * f.window()[d];
    nyquist = std::min(nyquist, 0.5 * static_cast<double>(dims[d]) / f.window()[d]);
  }
  if (lmax < 0) raise(Errc::BadParameters, "lmax must be >= 0");
  if (std::pow(lambda0, lmax + 1) > nyquist + 1e-9)
    raise(Errc::LevelBeyondNyquist, "level " + std::to_string(lmax) + " exceeds the grid Nyquist band");

  std::int64_t total = 1;
  for (auto d : dims) total *= d;

  // Row-major lattice order <-> canonical sample order.
  std::vector<std::int64_t> perm(total);
  std::vector<std::int64_t> stride(n, 1);
  for (int d = n - 2; d >= 0; --d) stride[d] = stride[d + 1] * dims[d + 1];
  for (std::int64_t i = 0; i < total; ++i) {
    const IntVec z = f.z_of(i);
    std::int64_t r = 0;
    for (int d = 0; d < n; ++d) {
      std::int64_t zz = z[d] % dims[d];
      if (zz < 0) zz += dims[d];
      r += zz * stride[d];
    }
    perm[i] = r;
  }

  std::vector<std::complex<double>> spectrum(total);
  for (std::int64_t i = 0; i < total; ++i) spectrum[perm[i]] = f[i];
  fft_nd(spectrum, dims, false);

  // |xi| in cycles per unit length for every lattice frequency.
  std::vector<double> freq_abs(total);
  for (std::int64_t r = 0; r < total; ++r) {
    std::int64_t rest = r;
    double s2 = 0;
    for (int d = 0; d < n; ++d) {
      const std::int64_t k = rest / stride[d] % dims[d];
      rest %= stride[d];
      const double ks = (k <= dims[d] / 2) ? static_cast<double>(k) : static_cast<double>(k - dims[d]);
      const double xi = ks / static_cast<double>(f.window()[d]);
      s2 += xi * xi;
    }
    freq_abs[r] = std::sqrt(s2);
  }

  LPDecomposition lp;
  lp.lambda0 = lambda0;
  lp.lmax = lmax;
  lp.partial.reserve(lmax + 2);
  std::vector<std::complex<double>> work(total);
  for (int l = 0; l <= lmax + 1; ++l) {
    const double cut = std::pow(lambda0, l);
    for (std::int64_t r = 0; r < total; ++r) work[r] = spectrum[r] * lp_mask(freq_abs[r] / cut, lambda0);
    fft_nd(work, dims, true);
    std::vector<double> values(total);
    for (std::int64_t i = 0; i < total; ++i) values[i] = work[perm[i]].real();
    lp.partial.push_back(std::move(values));
  }
  lp.band.reserve(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    std::vector<double> b(total);
    for (std::int64_t i = 0; i < total; ++i) b[i] = lp.partial[l + 1][i] - lp.partial[l][i];
    lp.band.push_back(std::move(b));
  }
  return lp;
}

LPNormReport lp_besov_norm(const GridFunction& f, double s, double p, double q, int lmax) {
  if (s <= 0) raise(Errc::BadParameters, "s must be positive");
  if (!(p >= 1) || !(q >= 1)) raise(Errc::BadParameters, "p, q must lie in [1, inf]");
  const LPDecomposition lp = lp_decompose(f, lmax);
  const double cell = std::pow(static_cast<double>(f.spec().digit_count()), -f.level());

  LPNormReport report;
  report.s = s;
  report.p = p;
  report.q = q;
  report.lmax = lmax;

  std::vector<double> band_levels(lmax + 1), lowpass_levels(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    band_levels[l] = lp_norm_of(lp.band[l], p, cell);
    std::vector<double> err(f.size());
    for (std::int64_t i = 0; i < f.size(); ++i) err[i] = f[i] - lp.partial[l][i];
    lowpass_levels[l] = lp_norm_of(err, p, cell);
  }
  const double lambda0 = lp.lambda0;
  report.variants["band"] =
      lp_norm_of(lp.lowpass(), p, cell) + weighted_aggregate(band_levels, s, q, lambda0);
  report.variants["lowpass"] = f.lp_norm(p) + weighted_aggregate(lowpass_levels, s, q, lambda0);
  report.per_level["band"] = std::move(band_levels);
  report.per_level["lowpass"] = std::move(lowpass_levels);
  return report;
}

double periodic_distance(const GridFunction& f, const std::vector<double>& x,
                         const std::vector<double>& y) {
  double s2 = 0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double w = static_cast<double>(f.window()[d]);
    double dd = std::abs(x[d] - y[d]);
    dd -= w * std::floor(dd / w);
    dd = std::min(dd, w - dd);
    s2 += dd * dd;
  }
  return std::sqrt(s2);
}

LPPointwiseAudit pointwise_lp_audit(const GridFunction& f, const LPDecomposition& lp,
                                    const std::vector<double>& x, double s, double s_prime) {
  if (s <= 0 || s_prime < 0 || s_prime >= s)
    raise(Errc::BadParameters, "need 0 <= s' < s");
  LPPointwiseAudit audit;
  audit.s = s;
  audit.s_prime = s_prime;
  audit.lmax = lp.lmax;
  audit.c_lowpass_by_lmax.assign(lp.lmax + 1, 0.0);
  audit.c_band_by_lmax.assign(lp.lmax + 1, 0.0);

  const std::vector<double> xw = f.wrap_point(x);
  std::vector<double> dist(f.size());
  for (std::int64_t i = 0; i < f.size(); ++i) dist[i] = periodic_distance(f, xw, f.point_of(i));

  double c_low = 0, c_band = 0;
  for (int l = 0; l <= lp.lmax; ++l) {
    const double h = std::pow(lp.lambda0, -l);
    const double lam = std::pow(lp.lambda0, l);
    for (std::int64_t i = 0; i < f.size(); ++i) {
      const double denom_low = std::pow(h + dist[i], s);
      c_low = std::max(c_low, std::abs(f[i] - lp.partial[l][i]) / denom_low);
      const double denom_band = std::pow(h, s) * std::pow(1.0 + lam * dist[i], s_prime);
      c_band = std::max(c_band, std::abs(lp.band[l][i]) / denom_band);
    }
    audit.c_lowpass_by_lmax[l] = c_low;
    audit.c_band_by_lmax[l] = c_band;
  }
  audit.c_lowpass = c_low;
  audit.c_band = c_band;
  return audit;
}

}  // namespace saft

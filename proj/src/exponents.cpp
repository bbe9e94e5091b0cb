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

#include "saft/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "saft/error.hpp"

namespace saft {

namespace {

constexpr double kFloorEps = 1e-13;

std::vector<double> clip_window(const std::vector<double>& levels, int l_lo, int l_hi) {
  std::vector<double> out(levels.size(), std::numeric_limits<double>::quiet_NaN());
  for (int l = std::max(0, l_lo); l <= l_hi && l < static_cast<int>(levels.size()); ++l)
    out[l] = levels[l];
  return out;
}

}  // namespace

ExponentReport exponent_from_levels(const std::vector<double>& levels, double lambda0,
                                    const std::string& route, int l_lo, int l_hi, double ceiling,
                                    double scale_hint) {
  ExponentReport report;
  report.route = route;
  report.ceiling = ceiling;
  report.levels = levels;
  report.level_lo = std::max(0, l_lo);
  report.level_hi = std::min<int>(l_hi, static_cast<int>(levels.size()) - 1);

  const double floor = kFloorEps * std::max(1.0, scale_hint);
  int usable = 0, floored = 0, present = 0;
  for (int l = report.level_lo; l <= report.level_hi; ++l) {
    if (std::isnan(levels[l])) continue;
    ++present;
    if (levels[l] <= floor)
      ++floored;
    else
      ++usable;
  }
  if (present > 0 && floored >= present / 2 + 1) {
    // Per-level data at machine floor: the route sees nothing to measure.
    report.floor_flag = true;
    report.saturation_flag = true;
    report.estimate = ceiling;
    report.n_levels = usable;
    return report;
  }
  if (usable < 4)
    raise(Errc::InsufficientLevels,
          "route " + route + " has " + std::to_string(usable) + " usable levels (needs 4)");

  std::vector<double> clipped = clip_window(levels, report.level_lo, report.level_hi);
  for (auto& v : clipped)
    if (!std::isnan(v) && v <= floor) v = std::numeric_limits<double>::quiet_NaN();
  const SlopeFit fit = log2_slope(clipped, report.level_lo, report.level_hi);
  const double log2_lambda = std::log2(lambda0);
  report.estimate = -fit.slope / log2_lambda;
  report.fit_quality = fit.residual;
  report.n_levels = fit.n_used;

  // Sub-window slopes over sliding windows of four levels.
  double mn = 1e300, mx = -1e300;
  for (int start = report.level_lo; start + 3 <= report.level_hi; ++start) {
    const SlopeFit sub = log2_slope(clipped, start, start + 3);
    if (sub.n_used >= 3 && !std::isnan(sub.slope)) {
      mn = std::min(mn, -sub.slope / log2_lambda);
      mx = std::max(mx, -sub.slope / log2_lambda);
    }
  }
  report.tail_min_slope = (mn <= mx) ? mn : report.estimate;
  report.tail_max_slope = (mn <= mx) ? mx : report.estimate;
  if (report.estimate >= ceiling - 0.1) report.saturation_flag = true;
  return report;
}

ExponentReport global_exponent_osc(const GridFunction& f, double p, int degree, int l_lo,
                                   int l_hi) {
  std::vector<double> levels(l_hi + 1, std::numeric_limits<double>::quiet_NaN());
  for (int l = l_lo; l <= l_hi; ++l) {
    try {
      levels[l] = osc_level_norm(f, l, degree, p, /*use_osc=*/true);
    } catch (const Error& e) {
      if (e.code() != Errc::RankDeficient) throw;
    }
  }
  return exponent_from_levels(levels, f.spec().lambda0(), "osc", l_lo, l_hi, degree + 1,
                              f.lp_norm(kInf));
}

ExponentReport global_exponent_diff(const GridFunction& f, double p, int degree, int l_lo,
                                    int l_hi) {
  std::vector<double> levels(l_hi + 1, std::numeric_limits<double>::quiet_NaN());
  for (int l = l_lo; l <= l_hi; ++l) {
    try {
      levels[l] = difference_norm(f, l, degree, p);
    } catch (const Error& e) {
      if (e.code() != Errc::EmptyStepSet) throw;
    }
  }
  return exponent_from_levels(levels, f.spec().lambda0(), "diff", l_lo, l_hi, degree + 1,
                              f.lp_norm(kInf));
}

ExponentReport global_exponent_band(const GridFunction& f, double p, int l_lo, int l_hi) {
  const LPDecomposition lp = lp_decompose(f, l_hi);
  const double cell = std::pow(static_cast<double>(f.spec().digit_count()), -f.level());
  std::vector<double> levels(l_hi + 1, std::numeric_limits<double>::quiet_NaN());
  for (int l = l_lo; l <= l_hi; ++l) levels[l] = lp_norm_of(lp.band[l], p, cell);
  return exponent_from_levels(levels, lp.lambda0, "lp-band", l_lo, l_hi,
                              std::numeric_limits<double>::infinity(), f.lp_norm(kInf));
}

ExponentReport global_exponent_mra(const GridFunction& f, const MRASystem& mra,
                                   const std::string& route, double p, int l_lo, int l_hi) {
  const NormReport nr = mra.norm_variants(f, 0.5, p, kInf, l_hi);
  const auto it = nr.per_level.find(route);
  if (it == nr.per_level.end()) raise(Errc::BadParameters, "unknown route '" + route + "'");
  return exponent_from_levels(it->second, f.spec().lambda0(), route, l_lo, l_hi,
                              static_cast<double>(mra.generators().order()), f.lp_norm(kInf));
}

ExponentReport pointwise_exponent(const GridFunction& f, const std::vector<double>& x, double p,
                                  int degree, int lmax, const std::string& route, int l_lo) {
  const auto seq = pointwise_sequences(f, x, degree, p, lmax);
  std::vector<double> levels(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    if (route == "osc")
      levels[l] = seq[l].osc;
    else if (route == "omega")
      levels[l] = seq[l].omega;
    else if (route == "diff")
      levels[l] = seq[l].difference;
    else
      raise(Errc::BadParameters, "pointwise route must be osc, omega, or diff");
  }
  ExponentReport report = exponent_from_levels(levels, f.spec().lambda0(), "pointwise-" + route,
                                               l_lo, lmax, degree + 1, f.lp_norm(kInf));
  return report;
}

ExponentReport double_limit_alpha(const GridFunction& f, const LPDecomposition& lp,
                                  const std::vector<double>& x, int lmax) {
  if (lmax > lp.lmax) raise(Errc::BadParameters, "lmax exceeds the decomposition depth");
  return double_limit_from_partials(f, lp.partial, lp.lambda0, x, lmax);
}

ExponentReport double_limit_from_partials(const GridFunction& f,
                                          const std::vector<std::vector<double>>& partials,
                                          double lambda0, const std::vector<double>& x,
                                          int lmax) {
  if (static_cast<int>(partials.size()) <= lmax)
    raise(Errc::BadParameters, "not enough partial approximants for lmax");
  const std::vector<double> xw = f.wrap_point(x);

  // Per-shell minimum of the ratio log|f - S_l f| / log(lambda0^{-l} + d).
  // In the model err ~ C u^a the shell minimum is a + log C_min / log u, so
  // the limit is recovered by an affine fit in 1 / shell depth.
  const int shells = 2 + static_cast<int>(std::floor(lmax * std::log2(lambda0)));
  std::vector<double> shell_min(shells, std::numeric_limits<double>::quiet_NaN());
  const double fmax = f.lp_norm(kInf);
  const double floor = kFloorEps * std::max(1.0, fmax);
  for (int l = 0; l <= lmax; ++l) {
    const double h = std::pow(lambda0, -l);
    for (std::int64_t i = 0; i < f.size(); ++i) {
      const double err = std::abs(f[i] - partials[l][i]);
      if (err <= floor) continue;
      const double u = h + periodic_distance(f, xw, f.point_of(i));
      if (u >= 0.5) continue;
      const int shell = static_cast<int>(std::floor(-std::log2(u)));
      if (shell < 1 || shell >= shells) continue;
      const double ratio = std::log2(err) / std::log2(u);
      if (std::isnan(shell_min[shell]) || ratio < shell_min[shell]) shell_min[shell] = ratio;
    }
  }

  ExponentReport report;
  report.route = "double-limit";
  report.ceiling = std::numeric_limits<double>::infinity();
  report.level_lo = 1;
  report.level_hi = shells - 1;
  report.levels = shell_min;

  // The last shell only holds near-coincident pairs (u ~ lambda0^{-lmax}
  // exactly), which degenerates the minimum; drop it, and weight deep shells
  // where the 1/j model actually holds.
  int jmax = shells - 1;
  while (jmax >= 1 && std::isnan(shell_min[jmax])) --jmax;
  std::vector<double> xs, ys, ws;  // 1/shell, min ratio, weight
  for (int sh = 3; sh < jmax; ++sh) {
    if (std::isnan(shell_min[sh])) continue;
    xs.push_back(1.0 / static_cast<double>(sh));
    ys.push_back(shell_min[sh]);
    ws.push_back(static_cast<double>(sh) * sh);
  }
  report.n_levels = static_cast<int>(xs.size());
  if (xs.size() < 4) {
    if (xs.empty()) {
      // Nothing above the floor anywhere: constant-like function.
      report.saturation_flag = true;
      report.floor_flag = true;
      report.estimate = report.ceiling;
      return report;
    }
    raise(Errc::InsufficientLevels, "double-limit fit has too few shells");
  }
  double wsum = 0, mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    wsum += ws[i];
    mx += ws[i] * xs[i];
    my += ws[i] * ys[i];
  }
  mx /= wsum;
  my /= wsum;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += ws[i] * (xs[i] - mx) * (xs[i] - mx);
    sxy += ws[i] * (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  report.estimate = my - slope * mx;  // extrapolation to 1/shell -> 0
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - my - slope * (xs[i] - mx);
    ss += ws[i] * r * r;
  }
  report.fit_quality = std::sqrt(ss / wsum);
  double ratio_min = 1e300, ratio_max = -1e300;
  for (int sh = std::max(2, shells - 4); sh < shells; ++sh) {
    if (std::isnan(shell_min[sh])) continue;
    ratio_min = std::min(ratio_min, shell_min[sh]);
    ratio_max = std::max(ratio_max, shell_min[sh]);
  }
  report.tail_min_slope = ratio_min <= ratio_max ? ratio_min : report.estimate;
  report.tail_max_slope = ratio_min <= ratio_max ? ratio_max : report.estimate;
  return report;
}

namespace {

TauReport tau_impl(const SeriesSpec& series, const TilingSpec& spec, const std::vector<double>& x,
                   int lmax, bool boundary_denominator) {
  if (static_cast<int>(series.multipliers.size()) != spec.digit_count())
    raise(Errc::BadParameters, "one multiplier per digit required");
  const CellAddress deepest = locate(x, lmax, spec);

  TauReport report;
  report.ratios.assign(lmax + 1, std::numeric_limits<double>::quiet_NaN());
  std::vector<double> numerator(lmax + 1, 0.0);   // sum of log|mu| along digits
  std::vector<double> denominator(lmax + 1, 0.0);
  double acc = 0;
  std::vector<double> deltas(lmax + 1, 0.0);
  for (int l = 1; l <= lmax; ++l) {
    acc += std::log(std::abs(series.multipliers[deepest.digit_string[l - 1]]));
    numerator[l] = acc;
    if (boundary_denominator) {
      CellAddress cell;
      cell.tile = deepest.tile;
      cell.level = l;
      cell.digit_string.assign(deepest.digit_string.begin(), deepest.digit_string.begin() + l);
      cell.translate = spec.translate_of(cell.digit_string);
      const double dist = boundary_distance(x, cell, spec);
      if (dist <= 0.0)
        raise(Errc::DegenerateBoundaryDistance,
              "point sits on a cell boundary at level " + std::to_string(l));
      deltas[l] = dist;
      denominator[l] = std::log(dist);
    } else {
      denominator[l] = -static_cast<double>(l) * std::log(spec.lambda0());
    }
    report.ratios[l] = numerator[l] / denominator[l];
  }

  // liminf surrogate: minimum over the tail half.
  double tail_min = 1e300;
  for (int l = std::max(1, lmax / 2); l <= lmax; ++l) tail_min = std::min(tail_min, report.ratios[l]);
  report.value = tail_min;

  // Affine-regression slope of numerator against denominator.
  double mx = 0, my = 0;
  int cnt = 0;
  for (int l = 1; l <= lmax; ++l) {
    mx += denominator[l];
    my += numerator[l];
    ++cnt;
  }
  mx /= cnt;
  my /= cnt;
  double sxx = 0, sxy = 0;
  for (int l = 1; l <= lmax; ++l) {
    sxx += (denominator[l] - mx) * (denominator[l] - mx);
    sxy += (denominator[l] - mx) * (numerator[l] - my);
  }
  report.slope_value = sxx > 0 ? sxy / sxx : report.value;

  if (boundary_denominator) {
    double sup = 0;
    for (int l = 1; l < lmax; ++l) sup = std::max(sup, deltas[l] / deltas[l + 1]);
    report.ratio_sup = sup;
    report.bounded_ratio = sup < 16.0 * spec.lambda0() * spec.lambda0();
  }
  return report;
}

}  // namespace

TauReport tau0(const SeriesSpec& series, const TilingSpec& spec, const std::vector<double>& x,
               int lmax) {
  return tau_impl(series, spec, x, lmax, /*boundary_denominator=*/false);
}

TauReport tau1(const SeriesSpec& series, const TilingSpec& spec, const std::vector<double>& x,
               int lmax) {
  TauReport report = tau_impl(series, spec, x, lmax, /*boundary_denominator=*/true);
  if (report.bounded_ratio) {
    const TauReport t0 = tau0(series, spec, x, lmax);
    report.via_remark = t0.value;
  }
  return report;
}

Theorem4Audit theorem4_audit(const SeriesSpec& series, const GridFunction& f,
                             const std::vector<double>& x, int lmax, int degree, int l_lo,
                             int l_hi) {
  Theorem4Audit audit;
  const auto ref = series.profile.reference_exponent();
  audit.alpha_profile = ref ? *ref : std::numeric_limits<double>::quiet_NaN();

  const ExponentReport pw = pointwise_exponent(f, x, kInf, degree, l_hi, "osc", l_lo);
  audit.alpha_estimate = pw.estimate;

  // The audit compares limits, so it uses the regression estimate of the
  // digit functionals; the tail-min surrogate dips below the limit whenever
  // the digit ratios oscillate (periodic expansions).
  const TauReport t0 = tau0(series, f.spec(), x, lmax);
  audit.tau0_value = t0.slope_value;
  try {
    const TauReport t1 = tau1(series, f.spec(), x, lmax);
    audit.tau1_value = t1.bounded_ratio ? t1.via_remark : t1.slope_value;
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateBoundaryDistance) throw;
    audit.tau1_degenerate = true;
    audit.tau1_value = std::numeric_limits<double>::quiet_NaN();
  }

  const double lower =
      std::isnan(audit.alpha_profile) ? audit.tau0_value
                                      : std::min(audit.alpha_profile, audit.tau0_value);
  audit.lower_ok = audit.alpha_estimate >= lower - audit.tolerance;
  audit.upper_ok = audit.alpha_estimate <= audit.tau0_value + audit.tolerance;
  return audit;
}

OrderingAudit proposition5_audit(const GridFunction& f, const std::vector<double>& x, int degree,
                                 const std::vector<double>& ps, int l_lo, int l_hi) {
  OrderingAudit audit;
  audit.ps = ps;
  const ExponentReport global = global_exponent_osc(f, kInf, degree, l_lo, l_hi);
  audit.alpha_global = global.estimate;
  for (double p : ps)
    audit.alpha_p_pointwise.push_back(
        pointwise_exponent(f, x, p, degree, l_hi, "osc", l_lo).estimate);

  // Proposition ordering: alpha(f) <= alpha_p(f,x), and alpha_p <= alpha_q
  // for q <= p. ps must be sorted ascending.
  bool ok = true;
  for (std::size_t i = 0; i < ps.size(); ++i)
    ok = ok && audit.alpha_global <= audit.alpha_p_pointwise[i] + audit.tolerance;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i)
    ok = ok && audit.alpha_p_pointwise[i + 1] <= audit.alpha_p_pointwise[i] + audit.tolerance;
  audit.chain_ok = ok;
  return audit;
}

}  // namespace saft

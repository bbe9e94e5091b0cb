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

#include "saft/besov.hpp"

#include <cmath>

#include "saft/error.hpp"

namespace saft {

int default_degree_for(double s) {
  if (s <= 0) raise(Errc::BadParameters, "s must be positive");
  return static_cast<int>(std::ceil(s));
}

double weighted_aggregate(const std::vector<double>& t, double s, double q, double lambda0) {
  double acc = 0, sup = 0;
  bool any = false;
  for (std::size_t l = 0; l < t.size(); ++l) {
    if (std::isnan(t[l])) continue;
    const double term = std::pow(lambda0, s * static_cast<double>(l)) * t[l];
    any = true;
    if (std::isinf(q))
      sup = std::max(sup, term);
    else
      acc += std::pow(term, q);
  }
  if (!any) return 0;
  return std::isinf(q) ? sup : std::pow(acc, 1.0 / q);
}

double osc_level_norm(const GridFunction& f, int level, int degree, double p, bool use_osc) {
  CellFitter fitter(f, level, degree);
  const std::int64_t cells = f.cell_count(level);
  if (std::isinf(p)) {
    double mx = 0;
    for (std::int64_t c = 0; c < cells; ++c)
      mx = std::max(mx, use_osc ? fitter.osc(c, p) : fitter.omega(c, p));
    return mx;
  }
  double sum = 0;
  for (std::int64_t c = 0; c < cells; ++c) {
    const double v = use_osc ? fitter.osc(c, p) : fitter.omega(c, p);
    sum += std::pow(v, p);
  }
  const double cell_measure = std::pow(static_cast<double>(f.spec().digit_count()), -level);
  return std::pow(cell_measure * sum, 1.0 / p);
}

namespace {

void check_norm_parameters(const GridFunction& f, double s, double p, double q, int degree,
                           int lmax) {
  if (s <= 0) raise(Errc::BadParameters, "s must be positive");
  if (degree + 1 <= s) raise(Errc::BadParameters, "need k+1 > s");
  if (!(p >= 1) || !(q >= 1)) raise(Errc::BadParameters, "p, q must lie in [1, inf]");
  if (lmax < 0 || lmax > f.level())
    raise(Errc::BadParameters, "lmax out of range for the grid level");
}

void finish_report(NormReport& report, const GridFunction& f) {
  const double lambda0 = f.spec().lambda0();
  for (const auto& [name, levels] : report.per_level) {
    double total = weighted_aggregate(levels, report.s, report.q, lambda0);
    total += report.lp_norm;
    report.variants[name] = total;
    double last = std::numeric_limits<double>::quiet_NaN();
    for (int l = static_cast<int>(levels.size()) - 1; l >= 0; --l) {
      if (!std::isnan(levels[l])) {
        last = std::pow(lambda0, report.s * l) * levels[l];
        break;
      }
    }
    report.last_weighted_term[name] = last;
    const SlopeFit fit = log2_slope(levels, 0, static_cast<int>(levels.size()) - 1);
    report.slopes[name] = fit.slope;
  }
}

}  // namespace

NormReport besov_norm(const GridFunction& f, double s, double p, double q, int degree, int lmax) {
  check_norm_parameters(f, s, p, q, degree, lmax);
  NormReport report;
  report.s = s;
  report.p = p;
  report.q = q;
  report.degree = degree;
  report.lmax = lmax;
  report.lp_norm = f.lp_norm(p);
  std::vector<double> osc_levels(lmax + 1);
  for (int l = 0; l <= lmax; ++l) osc_levels[l] = osc_level_norm(f, l, degree, p, /*use_osc=*/true);
  report.per_level["osc"] = std::move(osc_levels);
  finish_report(report, f);
  return report;
}

NormReport norm_variants(const GridFunction& f, double s, double p, double q, int degree,
                         int lmax, SeamPolicy policy) {
  check_norm_parameters(f, s, p, q, degree, lmax);
  NormReport report;
  report.s = s;
  report.p = p;
  report.q = q;
  report.degree = degree;
  report.lmax = lmax;
  report.lp_norm = f.lp_norm(p);

  std::vector<double> osc_levels(lmax + 1), omega_levels(lmax + 1), diff_levels(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    CellFitter fitter(f, l, degree);
    const std::int64_t cells = f.cell_count(l);
    if (std::isinf(p)) {
      double mo = 0, mw = 0;
      for (std::int64_t c = 0; c < cells; ++c) {
        mw = std::max(mw, fitter.omega(c, p));
        mo = std::max(mo, fitter.osc(c, p));
      }
      osc_levels[l] = mo;
      omega_levels[l] = mw;
    } else {
      double so = 0, sw = 0;
      for (std::int64_t c = 0; c < cells; ++c) {
        so += std::pow(fitter.osc(c, p), p);
        sw += std::pow(fitter.omega(c, p), p);
      }
      const double cm = std::pow(static_cast<double>(f.spec().digit_count()), -l);
      osc_levels[l] = std::pow(cm * so, 1.0 / p);
      omega_levels[l] = std::pow(cm * sw, 1.0 / p);
    }
    try {
      diff_levels[l] = difference_norm(f, l, degree, p, policy);
    } catch (const Error& e) {
      if (e.code() != Errc::EmptyStepSet) throw;
      diff_levels[l] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  report.per_level["osc"] = std::move(osc_levels);
  report.per_level["omega"] = std::move(omega_levels);
  report.per_level["diff"] = std::move(diff_levels);
  finish_report(report, f);
  return report;
}

PointwiseNorm tspq_value(const GridFunction& f, const std::vector<double>& x, double s, double p,
                         double q, int degree, int lmax) {
  check_norm_parameters(f, s, p, q, degree, lmax);
  PointwiseNorm out;
  out.s = s;
  out.p = p;
  out.q = q;
  out.degree = degree;
  out.lmax = lmax;
  const auto seq = pointwise_sequences(f, x, degree, p, lmax);
  std::vector<double> osc_levels(lmax + 1), omega_levels(lmax + 1), diff_levels(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    osc_levels[l] = seq[l].osc;
    omega_levels[l] = seq[l].omega;
    diff_levels[l] = seq[l].difference;
  }
  const double lambda0 = f.spec().lambda0();
  out.variants["osc"] = weighted_aggregate(osc_levels, s, q, lambda0);
  out.variants["omega"] = weighted_aggregate(omega_levels, s, q, lambda0);
  out.variants["diff"] = weighted_aggregate(diff_levels, s, q, lambda0);

  // Divergence heuristic: the weighted tail dominates the weighted head.
  double head = 0, tail = 0;
  for (int l = 0; l <= lmax; ++l) {
    if (std::isnan(osc_levels[l])) continue;
    const double term = std::pow(lambda0, s * l) * osc_levels[l];
    if (l <= lmax / 2)
      head = std::max(head, term);
    else
      tail = std::max(tail, term);
  }
  out.divergence_flag = tail > head && tail > 0;
  out.per_level["osc"] = std::move(osc_levels);
  out.per_level["omega"] = std::move(omega_levels);
  out.per_level["diff"] = std::move(diff_levels);
  return out;
}

SlopeFit log2_slope(const std::vector<double>& t, int l_lo, int l_hi) {
  SlopeFit fit;
  std::vector<double> xs, ys;
  for (int l = std::max(l_lo, 0); l <= l_hi && l < static_cast<int>(t.size()); ++l) {
    if (std::isnan(t[l]) || t[l] <= 0) continue;
    xs.push_back(static_cast<double>(l));
    ys.push_back(std::log2(t[l]));
  }
  fit.n_used = static_cast<int>(xs.size());
  if (fit.n_used < 2) {
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.residual = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - my - fit.slope * (xs[i] - mx);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / xs.size());
  return fit;
}

}  // namespace saft

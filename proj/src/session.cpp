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

#include "saft/session.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "saft/error.hpp"
#include "saft/exponents.hpp"
#include "saft/littlewood_paley.hpp"
#include "saft/mra.hpp"

namespace saft {

namespace {

using ordered_json = nlohmann::ordered_json;
constexpr double kPi = 3.14159265358979323846;

ordered_json jnum(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ordered_json jlist(const std::vector<double>& v) {
  ordered_json arr = ordered_json::array();
  for (double x : v) arr.push_back(jnum(x));
  return arr;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json exponent_json(const ExponentReport& r, double reference) {
  ordered_json j;
  j["route"] = r.route;
  j["estimate"] = jnum(r.estimate);
  j["reference"] = jnum(reference);
  j["level_lo"] = r.level_lo;
  j["level_hi"] = r.level_hi;
  j["n_levels"] = r.n_levels;
  j["fit_quality"] = jnum(r.fit_quality);
  j["ceiling"] = jnum(r.ceiling);
  j["saturation_flag"] = r.saturation_flag;
  j["floor_flag"] = r.floor_flag;
  j["tail_min_slope"] = jnum(r.tail_min_slope);
  j["tail_max_slope"] = jnum(r.tail_max_slope);
  j["per_level"] = jlist(r.levels);
  return j;
}

}  // namespace

std::shared_ptr<const TilingSpec> Session::build_spec() const {
  const int n = config.get_int("tiling", "dimension");
  const auto matrix_entries = config.get_ints("tiling", "matrix");
  if (static_cast<int>(matrix_entries.size()) != n * n)
    raise(Errc::ConfigParse, "tiling.matrix needs dimension^2 entries");
  IntMatrix m(n, std::vector<std::int64_t>(matrix_entries.begin(), matrix_entries.end()));
  const auto digit_entries = config.get_ints("tiling", "digits");
  if (digit_entries.size() % n != 0) raise(Errc::ConfigParse, "tiling.digits length mismatch");
  std::vector<IntVec> digits;
  for (std::size_t i = 0; i + n <= digit_entries.size(); i += n)
    digits.emplace_back(digit_entries.begin() + i, digit_entries.begin() + i + n);
  auto spec = validate_digit_set(std::move(m), std::move(digits));
  auto mut = std::const_pointer_cast<TilingSpec>(spec);
  mut->set_point_budget(config.get_int("tiling", "point_budget"));
  const auto probe = config.get_reals("tiling", "probe_point");
  if (!probe.empty()) mut->set_probe_point(probe);
  return spec;
}

Session::BuiltFunction Session::build_function(std::shared_ptr<const TilingSpec> spec) const {
  const int level = config.get_int("function", "level");
  const std::string builtin = config.get("function", "builtin");
  int depth = config.get_int("function", "depth");
  if (depth < 0) depth = level;
  const double mu = config.get_real("function", "mu");
  const double amplitude = config.get_real("function", "amplitude");
  const double freq = config.get_real("function", "frequency");

  IntVec window;
  {
    const auto w = config.get_ints("function", "window");
    if (w.size() == 1 && w[0] <= 0) {
      // Auto policy: series functions live on one tile; generic data gets a
      // margin of neighbors for difference operators.
      const bool tile_local = builtin == "takagi" || builtin == "levy" || builtin == "series" ||
                              builtin == "weierstrass";
      window.assign(spec->dim(), tile_local ? 1 : 2);
    } else if (w.size() == 1) {
      window.assign(spec->dim(), w[0]);
    } else {
      window.assign(w.begin(), w.end());
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double tau = std::log(std::abs(mu)) / std::log(1.0 / spec->lambda0());

  auto uniform_series = [&](const Profile& profile) {
    SeriesSpec series;
    series.multipliers.assign(spec->digit_count(), mu);
    series.profile = profile;
    series.depth = depth;
    return series;
  };

  if (builtin == "takagi" || builtin == "levy" || builtin == "series") {
    SeriesSpec series;
    if (builtin == "takagi") {
      series = uniform_series(Profile::named("tent"));
    } else if (builtin == "levy") {
      series.multipliers.assign(spec->digit_count(), 0.5);
      series.profile = Profile::named("sawtooth");
      series.depth = depth;
    } else {
      const auto mus = config.get_reals("function", "multipliers");
      if (mus.empty())
        series = uniform_series(Profile::named(config.get("function", "profile")));
      else {
        series.multipliers = mus;
        series.profile = Profile::named(config.get("function", "profile"));
        series.depth = depth;
      }
    }
    BuildResult built = sample_series(series, spec, level, window);
    double reference = nan;
    // Uniform multipliers: the digit-product exponent is closed-form; it is
    // the known answer for profiles that are smooth on the digit cells, and
    // for the tent profile whenever it stays at or below the profile cap.
    bool uniform = true;
    for (double v : series.multipliers) uniform = uniform && v == series.multipliers[0];
    if (uniform) {
      const double t = std::log(std::abs(series.multipliers[0])) / std::log(1.0 / spec->lambda0());
      const auto cap = series.profile.reference_exponent();
      if (series.profile.kind == Profile::Kind::Tent)
        reference = (t <= 1.0) ? t : nan;
      else if (cap.has_value())
        reference = t;
    }
    return {std::move(built.function), std::move(series), reference, built.truncation_bound};
  }
  if (builtin == "weierstrass") {
    BuildResult built = sample_weierstrass(mu, spec, level, depth, window);
    return {std::move(built.function), std::nullopt, tau, built.truncation_bound};
  }
  if (builtin == "sine") {
    GridFunction f = sample_function(spec, level, window, [&](const std::vector<double>& x) {
      return amplitude * std::sin(2.0 * kPi * freq * x[0]);
    });
    return {std::move(f), std::nullopt, nan, 0.0};
  }
  if (builtin == "step") {
    GridFunction f = sample_function(spec, level, window, [&](const std::vector<double>& x) {
      const double frac = x[0] - std::floor(x[0]);
      return frac < 0.5 ? amplitude : 0.0;
    });
    return {std::move(f), std::nullopt, nan, 0.0};
  }
  if (builtin == "linear") {
    GridFunction f = sample_function(spec, level, window, [&](const std::vector<double>& x) {
      return amplitude * x[0];
    });
    return {std::move(f), std::nullopt, nan, 0.0};
  }
  if (builtin == "const") {
    GridFunction f = sample_function(spec, level, window,
                                     [&](const std::vector<double>&) { return amplitude; });
    return {std::move(f), std::nullopt, nan, 0.0};
  }
  if (builtin == "csv") {
    GridFunction f = ingest_csv(config.get("function", "csv_path"), spec, level, window);
    return {std::move(f), std::nullopt, nan, 0.0};
  }
  raise(Errc::BadParameters, "unknown builtin '" + builtin + "'");
}

namespace {

struct AnalysisParams {
  double s, p, q;
  int degree, lmax, margin, level_lo, level_hi;
};

AnalysisParams analysis_params(const RunConfig& config, const GridFunction& f) {
  AnalysisParams a{};
  a.s = config.get_real("analysis", "s");
  a.p = config.get_real("analysis", "p");
  a.q = config.get_real("analysis", "q");
  a.margin = config.get_int("analysis", "margin");
  a.degree = config.get_int("analysis", "k");
  if (a.degree < 0) a.degree = default_degree_for(a.s);
  a.lmax = config.get_int("analysis", "lmax");
  if (a.lmax < 0) a.lmax = std::max(0, f.level() - a.margin);
  a.level_lo = config.get_int("analysis", "level_lo");
  a.level_hi = config.get_int("analysis", "level_hi");
  if (a.level_hi < 0) a.level_hi = a.lmax;
  a.level_hi = std::min(a.level_hi, a.lmax);
  return a;
}

std::vector<std::vector<double>> probe_points(const RunConfig& config, int dim) {
  std::vector<std::vector<double>> pts;
  std::stringstream ss(config.get("analysis", "points"));
  std::string group;
  while (std::getline(ss, group, ';')) {
    std::istringstream gs(group);
    std::vector<double> x;
    std::string tok;
    while (gs >> tok) {
      std::stringstream cs(tok);
      std::string part;
      while (std::getline(cs, part, ','))
        if (!part.empty()) x.push_back(std::stod(part));
    }
    if (static_cast<int>(x.size()) == dim) pts.push_back(std::move(x));
  }
  return pts;
}

GeneratorSet generator_from_config(const RunConfig& config,
                                   std::shared_ptr<const TilingSpec> spec) {
  const std::string g = config.get("analysis", "generator");
  if (g == "haar") return GeneratorSet::haar(spec);
  const std::size_t colon = g.find(':');
  const std::string kind = g.substr(0, colon);
  const int arg = colon == std::string::npos ? 1 : std::stoi(g.substr(colon + 1));
  if (kind == "monomials") return GeneratorSet::monomials(spec, arg);
  if (kind == "bspline") return GeneratorSet::bspline(spec, arg);
  raise(Errc::BadParameters, "unknown generator '" + g + "'");
}

}  // namespace

std::vector<SessionOutput> Session::run(const std::string& command) {
  if (command == "print-config") return {{"config.txt", config.to_text()}};

  auto spec = build_spec();

  if (command == "tile") {
    const int depth = config.get_int("tiling", "depth");
    const TileApproximation tile = tile_points(*spec, depth);
    std::string csv;
    for (int d = 0; d < spec->dim(); ++d) csv += (d ? ",x" : "x") + std::to_string(d);
    csv += "\n";
    for (std::int64_t i = 0; i < tile.count; ++i) {
      for (int d = 0; d < spec->dim(); ++d) {
        if (d) csv += ',';
        csv += fmt(tile.point(i)[d]);
      }
      csv += '\n';
    }
    const auto& geo = spec->geometry();
    ordered_json j;
    j["dimension"] = spec->dim();
    j["m"] = spec->digit_count();
    j["lambda0"] = jnum(spec->lambda0());
    j["cube"] = spec->is_cube();
    j["depth"] = depth;
    j["points"] = tile.count;
    j["inradius"] = jnum(geo.inradius);
    j["circumradius"] = jnum(geo.circumradius);
    j["circumradius_ratio"] = jnum(geo.circumradius_ratio);
    j["measure_estimate"] = jnum(geo.measure_estimate);
    {
      ordered_json probe = ordered_json::array();
      for (double c : spec->probe_point()) probe.push_back(jnum(c));
      j["probe_point"] = probe;
    }
    return {{"tile_points.csv", csv}, {"tile_geometry.json", j.dump(2) + "\n"}};
  }

  BuiltFunction built = build_function(spec);
  const GridFunction& f = built.f;
  const AnalysisParams a = analysis_params(config, f);

  if (command == "norm") {
    ordered_json j;
    j["s"] = jnum(a.s);
    j["p"] = jnum(a.p);
    j["q"] = jnum(a.q);
    j["k"] = a.degree;
    j["lmax"] = a.lmax;
    j["lp_norm"] = jnum(f.lp_norm(a.p));
    j["truncation_bound"] = jnum(built.truncation_bound);

    std::map<std::string, std::vector<double>> level_table;
    ordered_json families = ordered_json::object();
    for (const std::string& fam : config.get_list("analysis", "variants")) {
      ordered_json fj;
      if (fam == "theorem1") {
        const NormReport r = norm_variants(f, a.s, a.p, a.q, a.degree, a.lmax);
        for (const auto& [name, value] : r.variants) fj["totals"][name] = jnum(value);
        for (const auto& [name, slope] : r.slopes) fj["slopes"][name] = jnum(slope);
        for (const auto& [name, last] : r.last_weighted_term) fj["last_weighted_term"][name] = jnum(last);
        for (const auto& [name, lv] : r.per_level) level_table[fam + ":" + name] = lv;
      } else if (fam == "lp") {
        const LPNormReport r = lp_besov_norm(f, a.s, a.p, a.q, a.lmax);
        for (const auto& [name, value] : r.variants) fj["totals"][name] = jnum(value);
        for (const auto& [name, lv] : r.per_level) {
          fj["slopes"][name] = jnum(log2_slope(lv, a.level_lo, a.level_hi).slope);
          level_table[fam + ":" + name] = lv;
        }
      } else {
        RunConfig sub = config;
        sub.set("analysis.generator", fam);
        const GeneratorSet gens = generator_from_config(sub, spec);
        MRASystem mra(gens, f);
        const NormReport r = mra.norm_variants(f, a.s, a.p, a.q, a.lmax);
        for (const auto& [name, value] : r.variants) fj["totals"][name] = jnum(value);
        for (const auto& [name, slope] : r.slopes) fj["slopes"][name] = jnum(slope);
        for (const auto& [name, lv] : r.per_level) level_table[fam + ":" + name] = lv;
      }
      families[fam] = fj;
    }
    j["families"] = families;

    std::string csv = "level";
    for (const auto& [name, lv] : level_table) csv += "," + name;
    csv += "\n";
    std::size_t rows = 0;
    for (const auto& [name, lv] : level_table) rows = std::max(rows, lv.size());
    for (std::size_t l = 0; l < rows; ++l) {
      csv += std::to_string(l);
      for (const auto& [name, lv] : level_table)
        csv += "," + (l < lv.size() && !std::isnan(lv[l]) ? fmt(lv[l]) : std::string());
      csv += "\n";
    }
    return {{"norm_report.json", j.dump(2) + "\n"}, {"norm_per_level.csv", csv}};
  }

  if (command == "exponent") {
    ordered_json j;
    j["reference"] = jnum(built.reference_exponent);
    j["level_lo"] = a.level_lo;
    j["level_hi"] = a.level_hi;
    ordered_json global = ordered_json::array();
    std::string csv = "scope,route,point,estimate,reference,fit_quality,saturation\n";

    auto add_csv = [&](const std::string& scope, const ExponentReport& r,
                       const std::string& point) {
      csv += scope + "," + r.route + "," + point + "," + fmt(r.estimate) + "," +
             (std::isnan(built.reference_exponent) ? "" : fmt(built.reference_exponent)) + "," +
             fmt(r.fit_quality) + "," + (r.saturation_flag ? "1" : "0") + "\n";
    };

    for (const std::string& route : config.get_list("analysis", "routes")) {
      ExponentReport r;
      if (route == "osc")
        r = global_exponent_osc(f, a.p, a.degree, a.level_lo, a.level_hi);
      else if (route == "diff")
        r = global_exponent_diff(f, a.p, a.degree, a.level_lo, a.level_hi);
      else if (route == "band")
        r = global_exponent_band(f, a.p, a.level_lo, a.level_hi);
      else if (route == "sigma" || route == "residue" || route == "coeff" || route == "wavelet") {
        const GeneratorSet gens = generator_from_config(config, spec);
        MRASystem mra(gens, f);
        r = global_exponent_mra(f, mra, route, a.p, a.level_lo, a.level_hi);
      } else {
        raise(Errc::BadParameters, "unknown route '" + route + "'");
      }
      global.push_back(exponent_json(r, built.reference_exponent));
      add_csv("global", r, "");
    }
    j["global"] = global;

    ordered_json pointwise = ordered_json::array();
    const auto pts = probe_points(config, spec->dim());
    std::optional<LPDecomposition> lp;
    if (spec->is_cube()) {
      try {
        lp = lp_decompose(f, a.level_hi);
      } catch (const Error&) {
        lp.reset();
      }
    }
    for (const auto& x : pts) {
      ordered_json pj;
      pj["x"] = jlist(x);
      const ExponentReport r =
          pointwise_exponent(f, x, a.p, a.degree, a.level_hi, "osc", a.level_lo);
      pj["osc"] = exponent_json(r, built.reference_exponent);
      std::string label = fmt(x[0]);
      for (std::size_t d = 1; d < x.size(); ++d) label += ";" + fmt(x[d]);
      add_csv("pointwise", r, label);
      if (lp) {
        try {
          const ExponentReport dl = double_limit_alpha(f, *lp, x, a.level_hi);
          pj["double_limit"] = exponent_json(dl, built.reference_exponent);
          add_csv("pointwise", dl, label);
        } catch (const Error& e) {
          if (e.code() != Errc::InsufficientLevels) throw;
          pj["double_limit"] = nullptr;
        }
      }
      if (built.series) {
        const TauReport t0 = tau0(*built.series, *spec, x, a.level_hi);
        pj["tau0"] = jnum(t0.value);
        pj["tau0_slope"] = jnum(t0.slope_value);
        try {
          const TauReport t1 = tau1(*built.series, *spec, x, a.level_hi);
          pj["tau1"] = jnum(t1.bounded_ratio ? t1.via_remark : t1.slope_value);
          pj["tau1_ratio_sup"] = jnum(t1.ratio_sup);
        } catch (const Error& e) {
          if (e.code() != Errc::DegenerateBoundaryDistance) throw;
          pj["tau1"] = "degenerate";
        }
        const Theorem4Audit t4 =
            theorem4_audit(*built.series, f, x, a.level_hi, a.degree, a.level_lo, a.level_hi);
        ordered_json tj;
        tj["alpha_estimate"] = jnum(t4.alpha_estimate);
        tj["alpha_profile"] = jnum(t4.alpha_profile);
        tj["tau0"] = jnum(t4.tau0_value);
        tj["tau1"] = jnum(t4.tau1_value);
        tj["lower_ok"] = t4.lower_ok;
        tj["upper_ok"] = t4.upper_ok;
        pj["theorem4"] = tj;
      }
      pointwise.push_back(pj);
    }
    j["pointwise"] = pointwise;
    return {{"exponent_report.json", j.dump(2) + "\n"}, {"exponent_battery.csv", csv}};
  }

  if (command == "mra-report") {
    const GeneratorSet gens = generator_from_config(config, spec);
    MRASystem mra(gens, f);
    ordered_json j;
    j["generator"] = config.get("analysis", "generator");
    const StabilityCertificate cert = mra.check_stability();
    j["stability"]["min_eigenvalue"] = jnum(cert.min_eigenvalue);
    j["stability"]["max_eigenvalue"] = jnum(cert.max_eigenvalue);

    const RefinementMask mask = mra.refinement_mask();
    j["refinement"]["residual"] = jnum(mask.residual);
    ordered_json mj = ordered_json::array();
    for (std::size_t o = 0; o < mask.offsets.size(); ++o) {
      ordered_json row;
      ordered_json nu = ordered_json::array();
      for (auto v : mask.offsets[o]) nu.push_back(v);
      row["nu"] = nu;
      ordered_json cc = ordered_json::array();
      for (int jj = 0; jj < gens.count(); ++jj) {
        ordered_json per_k = ordered_json::array();
        for (int k = 0; k < gens.count(); ++k) per_k.push_back(jnum(mask.c[jj][k][o]));
        cc.push_back(per_k);
      }
      row["c"] = cc;
      mj.push_back(row);
    }
    j["refinement"]["coefficients"] = mj;

    const StrangFixReport sf = mra.strang_fix_check(config.get_int("analysis", "sf_order"));
    j["strang_fix"]["order"] = sf.order;
    j["strang_fix"]["max_residual"] = jnum(sf.max_residual);
    j["strang_fix"]["pass"] = sf.pass;

    const NormReport nr = mra.norm_variants(f, a.s, a.p, a.q, a.lmax);
    for (const auto& [name, value] : nr.variants) j["norms"]["totals"][name] = jnum(value);
    for (const auto& [name, slope] : nr.slopes) j["norms"]["slopes"][name] = jnum(slope);
    const NormReport eq6 = besov_norm(f, a.s, a.p, a.q, a.degree, a.lmax);
    j["norms"]["eq_osc_total"] = jnum(eq6.variants.at("osc"));
    j["norms"]["eq_osc_slope"] = jnum(eq6.slopes.at("osc"));

    std::string csv = "kind,level,j,eps,nu,value\n";
    const CoefficientPyramid pyr = mra.pyramid(f, a.lmax);
    for (int l = 0; l < static_cast<int>(pyr.a.size()); ++l)
      for (int jj = 0; jj < gens.count(); ++jj)
        for (std::size_t nu = 0; nu < pyr.a[l][jj].size(); ++nu)
          csv += "a," + std::to_string(l) + "," + std::to_string(jj) + ",," + std::to_string(nu) +
                 "," + fmt(pyr.a[l][jj][nu]) + "\n";
    if (gens.count() == 1 && gens.members()[0].kind == GeneratorSet::Kind::HaarIndicator) {
      const WaveletPyramid wp = wavelet_coeffs(f, haar_wavelets(*spec), a.lmax);
      j["parseval"]["lhs"] = jnum(wp.parseval_lhs);
      j["parseval"]["rhs"] = jnum(wp.parseval_rhs);
      for (int l = 0; l <= wp.lmax; ++l)
        for (std::size_t eps = 0; eps < wp.b[l].size(); ++eps)
          for (std::size_t nu = 0; nu < wp.b[l][eps].size(); ++nu)
            csv += "b," + std::to_string(l) + ",," + std::to_string(eps) + "," +
                   std::to_string(nu) + "," + fmt(wp.b[l][eps][nu]) + "\n";
    }
    return {{"mra_report.json", j.dump(2) + "\n"}, {"pyramid.csv", csv}};
  }

  raise(Errc::BadParameters, "unknown command '" + command + "'");
}

}  // namespace saft

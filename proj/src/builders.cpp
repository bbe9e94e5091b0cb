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

#include "saft/builders.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "saft/error.hpp"

namespace saft {

namespace {

constexpr double kPi = 3.14159265358979323846;

double named_profile_value(Profile::Kind kind, double y) {
  // Profiles live on the open tile (0,1). Sample points are cell corners
  // representing half-open cells, so a corner takes the right-limit value;
  // the isolated point value at 0 is invisible to the essential sup the
  // norms discretize.
  switch (kind) {
    case Profile::Kind::Tent:
      if (y < 0.0 || y >= 1.0) return 0.0;
      return y <= 0.5 ? y : 1.0 - y;
    case Profile::Kind::Sawtooth:
      if (y < 0.0 || y >= 1.0) return 0.0;
      return y - 0.5;
    case Profile::Kind::Step:
      if (y < 0.0 || y >= 1.0) return 0.0;
      return y < 0.5 ? 0.5 : -0.5;
    case Profile::Kind::Parabola:
      if (y < 0.0 || y >= 1.0) return 0.0;
      return y * (1.0 - y);
    case Profile::Kind::Sampled:
      break;
  }
  raise(Errc::BadParameters, "profile kind has no closed form");
}

}  // namespace

Profile Profile::named(const std::string& name) {
  Profile p;
  if (name == "tent")
    p.kind = Kind::Tent;
  else if (name == "sawtooth" || name == "saw")
    p.kind = Kind::Sawtooth;
  else if (name == "step")
    p.kind = Kind::Step;
  else if (name == "parabola")
    p.kind = Kind::Parabola;
  else
    raise(Errc::BadParameters, "unknown profile '" + name + "'");
  return p;
}

std::vector<double> Profile::sample(const TilingSpec& spec, int lambda) const {
  const std::int64_t count = ipow(spec.digit_count(), lambda);
  std::vector<double> out(count);
  if (kind == Kind::Sampled) {
    if (!sampled) raise(Errc::BadParameters, "sampled profile missing data");
    if (&sampled->spec() != &spec && !(sampled->spec().dilation() == spec.dilation()))
      raise(Errc::BadParameters, "profile tiling mismatch");
    if (sampled->tile_count() != 1) raise(Errc::BadParameters, "profile window must be one tile");
    if (sampled->level() < lambda) raise(Errc::DepthExceedsGrid, "profile grid too coarse");
    const std::int64_t stride = ipow(spec.digit_count(), sampled->level() - lambda);
    for (std::int64_t i = 0; i < count; ++i) out[i] = (*sampled)[i * stride];
    return out;
  }
  if (spec.dim() != 1) raise(Errc::BadParameters, "named profiles are one-dimensional");
  // 1-d digit systems: representative position of rank i at level lambda.
  const int m = spec.digit_count();
  std::vector<int> digits(lambda);
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t r = i;
    for (int l = lambda - 1; l >= 0; --l) {
      digits[l] = static_cast<int>(r % m);
      r /= m;
    }
    const IntVec nu = spec.translate_of(digits);
    std::vector<double> v = {static_cast<double>(nu[0]) + spec.radix_origin()[0]};
    v = apply_inverse_power(spec.dilation(), lambda, v);
    out[i] = named_profile_value(kind, v[0]);
  }
  return out;
}

std::optional<double> Profile::reference_exponent() const {
  switch (kind) {
    case Kind::Tent: return 1.0;
    case Kind::Sawtooth: return 0.0;
    case Kind::Step: return 0.0;
    case Kind::Parabola: return 2.0;
    case Kind::Sampled: return std::nullopt;
  }
  return std::nullopt;
}

BuildResult sample_series(const SeriesSpec& series, std::shared_ptr<const TilingSpec> spec,
                          int level, IntVec window) {
  const int m = spec->digit_count();
  if (static_cast<int>(series.multipliers.size()) != m)
    raise(Errc::BadParameters, "needs one multiplier per digit");
  double mu_max = 0;
  for (double mu : series.multipliers) {
    const double a = std::abs(mu);
    if (a <= 0.0 || a >= 1.0) raise(Errc::BadParameters, "|mu| must lie in (0,1)");
    mu_max = std::max(mu_max, a);
  }
  if (series.depth > level) raise(Errc::DepthExceedsGrid, "series depth exceeds grid level");

  // Profile samples per suffix level.
  std::vector<std::vector<double>> phi(series.depth + 1);
  double sup_phi = 0;
  for (int l = 0; l <= series.depth; ++l) {
    phi[l] = series.profile.sample(*spec, level - l);
    for (double v : phi[l]) sup_phi = std::max(sup_phi, std::abs(v));
  }

  GridFunction f = GridFunction::zeros(spec, level, window);
  auto& samples = f.mutable_samples();
  const std::int64_t per_tile = f.samples_per_tile();

  // Depth-first over digit prefixes; each prefix contributes its profile
  // block scaled by the running digit product.
  struct Frame {
    int l;
    std::int64_t base;
    double mu;
  };
  for (std::int64_t tile = 0; tile < f.tile_count(); ++tile) {
    std::vector<Frame> stack = {{0, tile * per_tile, 1.0}};
    while (!stack.empty()) {
      const Frame fr = stack.back();
      stack.pop_back();
      const auto& block = phi[fr.l];
      const std::int64_t width = static_cast<std::int64_t>(block.size());
      for (std::int64_t i = 0; i < width; ++i) samples[fr.base + i] += fr.mu * block[i];
      if (fr.l < series.depth) {
        const std::int64_t child_width = width / m;
        for (int g = 0; g < m; ++g)
          stack.push_back({fr.l + 1, fr.base + g * child_width, fr.mu * series.multipliers[g]});
      }
    }
  }

  BuildResult out{std::move(f), 0.0};
  out.truncation_bound = std::pow(mu_max, series.depth + 1) / (1.0 - mu_max) * sup_phi;
  return out;
}

BuildResult sample_weierstrass(double mu, std::shared_ptr<const TilingSpec> spec, int level,
                               int depth, IntVec window) {
  if (!(spec->dim() == 1 && spec->is_cube() && spec->cube_base() == 2))
    raise(Errc::WrongDilation, "requires the dyadic line (M = [2], digits {0,1})");
  if (mu <= 0.0 || mu >= 1.0) raise(Errc::BadParameters, "mu must lie in (0,1)");
  if (depth > level) raise(Errc::DepthExceedsGrid, "depth exceeds grid level");

  GridFunction f = GridFunction::zeros(spec, level, window);
  auto& samples = f.mutable_samples();
  const std::int64_t total = f.size();
  for (std::int64_t i = 0; i < total; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(ipow(2, level));
    double acc = 0, w = 1;
    for (int l = 0; l <= depth; ++l) {
      acc += w * std::sin(2.0 * kPi * std::ldexp(x, l));
      w *= mu;
    }
    samples[i] = acc;
  }
  BuildResult out{std::move(f), std::pow(mu, depth + 1) / (1.0 - mu)};
  return out;
}

GridFunction sample_function(std::shared_ptr<const TilingSpec> spec, int level, IntVec window,
                             const std::function<double(const std::vector<double>&)>& fn) {
  GridFunction f = GridFunction::zeros(std::move(spec), level, std::move(window));
  auto& samples = f.mutable_samples();
  for (std::int64_t i = 0; i < f.size(); ++i) samples[i] = fn(f.point_of(i));
  return f;
}

std::string to_csv(const GridFunction& f) {
  std::string out;
  const int n = f.spec().dim();
  out.reserve(static_cast<std::size_t>(f.size()) * 24);
  for (int i = 0; i < n; ++i) {
    out += "z";
    out += std::to_string(i);
    out += ',';
  }
  out += "value\n";
  char buf[64];
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const IntVec z = f.z_of(i);
    for (int d = 0; d < n; ++d) {
      out += std::to_string(z[d]);
      out += ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", f[i]);
    out += buf;
  }
  return out;
}

void emit_csv(const GridFunction& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) raise(Errc::IoError, "cannot open '" + path + "' for writing");
  os << to_csv(f);
  if (!os) raise(Errc::IoError, "write failed for '" + path + "'");
}

GridFunction ingest_csv_text(const std::string& text, std::shared_ptr<const TilingSpec> spec,
                             int level, IntVec window) {
  GridFunction f = GridFunction::zeros(std::move(spec), level, std::move(window));
  const int n = f.spec().dim();
  auto& samples = f.mutable_samples();
  std::vector<char> seen(samples.size(), 0);
  std::istringstream is(text);
  std::string line;
  std::int64_t rows = 0;
  bool header_checked = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (!header_checked) {
      header_checked = true;
      if (line.find("value") != std::string::npos) continue;  // optional header
    }
    std::istringstream ls(line);
    std::string tok;
    IntVec z(n);
    for (int d = 0; d < n; ++d) {
      if (!std::getline(ls, tok, ',')) raise(Errc::ShapeMismatch, "short row in CSV");
      z[d] = std::stoll(tok);
    }
    if (!std::getline(ls, tok, ',')) raise(Errc::ShapeMismatch, "missing value column");
    const double v = std::stod(tok);
    if (!std::isfinite(v)) raise(Errc::NonFiniteValue, "non-finite sample in CSV");
    const std::int64_t idx = f.index_of_z(z);
    if (seen[idx]) raise(Errc::ShapeMismatch, "duplicate grid index in CSV");
    seen[idx] = 1;
    samples[idx] = v;
    ++rows;
  }
  if (rows != f.size())
    raise(Errc::ShapeMismatch, "row count " + std::to_string(rows) + " does not match grid size " +
                                   std::to_string(f.size()));
  return f;
}

GridFunction ingest_csv(const std::string& path, std::shared_ptr<const TilingSpec> spec,
                        int level, IntVec window) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ingest_csv_text(ss.str(), std::move(spec), level, std::move(window));
}

}  // namespace saft

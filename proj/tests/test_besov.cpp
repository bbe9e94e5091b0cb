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

#include <doctest.h>

#include <cmath>

#include "saft/besov.hpp"
#include "saft/builders.hpp"
#include "saft/error.hpp"

using namespace saft;

namespace {

std::shared_ptr<const TilingSpec> dyadic_line() {
  return validate_digit_set(IntMatrix(1, {2}), {{0}, {1}});
}

GridFunction takagi(double mu, int level) {
  SeriesSpec s;
  s.multipliers = {mu, mu};
  s.profile = Profile::named("tent");
  s.depth = level;
  return sample_series(s, dyadic_line(), level, {1}).function;
}

}  // namespace

TEST_CASE("besov norm basics") {
  auto spec = dyadic_line();
  SUBCASE("zero function has zero norm") {
    const GridFunction f = GridFunction::zeros(spec, 10, {1});
    const NormReport r = besov_norm(f, 0.5, 2.0, 2.0, 1, 6);
    CHECK(r.variants.at("osc") == doctest::Approx(0.0));
  }
  SUBCASE("linear function: oscillation terms vanish, norm is ||f||_p") {
    const GridFunction f = sample_function(spec, 10, {1}, [](const std::vector<double>& x) {
      return x[0];
    });
    const NormReport r = besov_norm(f, 0.5, 2.0, 1.0, 1, 6);
    CHECK(r.variants.at("osc") == doctest::Approx(f.lp_norm(2.0)).epsilon(1e-10));
  }
  SUBCASE("parameter validation") {
    const GridFunction f = GridFunction::zeros(spec, 8, {1});
    try {
      besov_norm(f, 1.5, 2.0, 2.0, 0, 4);  // k+1 = 1 <= s
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BadParameters);
    }
    CHECK(default_degree_for(0.4) == 1);
    CHECK(default_degree_for(1.0) == 1);
    CHECK(default_degree_for(1.5) == 2);
  }
  SUBCASE("takagi weighted terms: decay below s=1/2, growth above") {
    const GridFunction f = takagi(std::pow(2.0, -0.5), 14);
    const NormReport low = besov_norm(f, 0.4, kInf, kInf, 1, 10);
    const NormReport high = besov_norm(f, 0.6, kInf, kInf, 1, 10);
    const auto& t = low.per_level.at("osc");
    // Weighted terms lambda^{ls} t_l computed per report parameters.
    auto weighted = [&](const NormReport& r, int l) {
      return std::pow(2.0, r.s * l) * r.per_level.at("osc")[l];
    };
    CHECK(weighted(low, 9) < weighted(low, 3));
    CHECK(weighted(high, 9) > weighted(high, 3));
    CHECK(t[9] < t[3]);
  }
}

TEST_CASE("norm variants") {
  auto spec = dyadic_line();
  SUBCASE("constants reduce every variant to ||f||_p") {
    const GridFunction f = sample_function(spec, 10, {1}, [](const std::vector<double>&) {
      return 2.5;
    });
    const NormReport r = norm_variants(f, 0.5, 2.0, 2.0, 1, 5);
    CHECK(r.variants.at("osc") == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(r.variants.at("omega") == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(r.variants.at("diff") == doctest::Approx(2.5).epsilon(1e-10));
  }
  SUBCASE("takagi: the three per-level slopes agree") {
    const GridFunction f = takagi(std::pow(2.0, -0.5), 14);
    const NormReport r = norm_variants(f, 0.4, kInf, kInf, 1, 10);
    const SlopeFit so = log2_slope(r.per_level.at("osc"), 4, 10);
    const SlopeFit sw = log2_slope(r.per_level.at("omega"), 4, 10);
    const SlopeFit sd = log2_slope(r.per_level.at("diff"), 4, 10);
    CHECK(std::abs(so.slope - sw.slope) < 0.05);
    CHECK(std::abs(so.slope - sd.slope) < 0.05);
  }
  SUBCASE("q monotonicity: the q=inf total never exceeds q=1") {
    const GridFunction f = takagi(0.5, 12);
    const NormReport r1 = besov_norm(f, 0.3, kInf, 1.0, 1, 8);
    const NormReport ri = besov_norm(f, 0.3, kInf, kInf, 1, 8);
    CHECK(ri.variants.at("osc") <= r1.variants.at("osc") + 1e-12);
  }
  SUBCASE("homogeneity under scaling") {
    const GridFunction f = takagi(0.5, 12);
    std::vector<double> scaled(f.samples());
    for (double& v : scaled) v *= 3.0;
    const GridFunction g(spec, 12, {1}, std::move(scaled));
    const NormReport rf = besov_norm(f, 0.4, 2.0, 2.0, 1, 8);
    const NormReport rg = besov_norm(g, 0.4, 2.0, 2.0, 1, 8);
    CHECK(rg.variants.at("osc") == doctest::Approx(3.0 * rf.variants.at("osc")).epsilon(1e-12));
  }
  SUBCASE("termwise monotonicity in s") {
    const GridFunction f = takagi(0.5, 12);
    const NormReport a = besov_norm(f, 0.3, kInf, kInf, 1, 8);
    const NormReport b = besov_norm(f, 0.4, kInf, kInf, 1, 8);
    CHECK(a.variants.at("osc") <= b.variants.at("osc") + 1e-12);
  }
}

TEST_CASE("pointwise functional") {
  auto spec = dyadic_line();
  SUBCASE("smooth functions are stable under lmax growth") {
    const GridFunction f = sample_function(spec, 12, {1}, [](const std::vector<double>& x) {
      return std::sin(2 * 3.14159265358979323846 * x[0]);
    });
    const PointwiseNorm a = tspq_value(f, {1.0 / 3.0}, 0.8, kInf, 1.0, 1, 6);
    const PointwiseNorm b = tspq_value(f, {1.0 / 3.0}, 0.8, kInf, 1.0, 1, 8);
    CHECK(b.variants.at("osc") <= a.variants.at("osc") * 1.2 + 1e-9);
    CHECK_FALSE(b.divergence_flag);
  }
  SUBCASE("takagi above its exponent diverges") {
    const GridFunction f = takagi(std::pow(2.0, -0.5), 14);
    const PointwiseNorm r = tspq_value(f, {0.2390176}, 0.6, kInf, kInf, 1, 10);
    CHECK(r.divergence_flag);
  }
  SUBCASE("embedding across s at fixed truncation") {
    const GridFunction f = takagi(0.5, 12);
    const PointwiseNorm lo = tspq_value(f, {1.0 / 3.0}, 0.3, kInf, kInf, 1, 8);
    const PointwiseNorm hi = tspq_value(f, {1.0 / 3.0}, 0.4, kInf, kInf, 1, 8);
    CHECK(lo.variants.at("osc") <= hi.variants.at("osc") + 1e-12);
  }
}

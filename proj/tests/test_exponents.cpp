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

#include "saft/builders.hpp"
#include "saft/error.hpp"
#include "saft/exponents.hpp"

using namespace saft;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::shared_ptr<const TilingSpec> dyadic_line() {
  return validate_digit_set(IntMatrix(1, {2}), {{0}, {1}});
}

SeriesSpec series_of(const std::string& profile, double mu1, double mu2, int depth) {
  SeriesSpec s;
  s.multipliers = {mu1, mu2};
  s.profile = Profile::named(profile);
  s.depth = depth;
  return s;
}

}  // namespace

TEST_CASE("global exponent routes") {
  auto spec = dyadic_line();
  SUBCASE("weierstrass band route recovers the lacunary exponent") {
    const double mu = std::pow(2.0, -0.7);
    const GridFunction f = sample_weierstrass(mu, spec, 14, 14, {1}).function;
    const ExponentReport r = global_exponent_band(f, kInf, 4, 9);
    CHECK(r.estimate == doctest::Approx(0.7).epsilon(0.05));
    CHECK_FALSE(r.saturation_flag);
  }
  SUBCASE("takagi osc route") {
    const GridFunction f =
        sample_series(series_of("tent", std::pow(2.0, -0.5), std::pow(2.0, -0.5), 14), spec, 14,
                      {1})
            .function;
    const ExponentReport r = global_exponent_osc(f, kInf, 1, 4, 8);
    CHECK(r.estimate == doctest::Approx(0.5).epsilon(0.1));
    CHECK(r.fit_quality < 0.2);
  }
  SUBCASE("polynomials saturate at the ceiling") {
    const GridFunction f = sample_function(spec, 12, {1}, [](const std::vector<double>& x) {
      return 1.0 + 2.0 * x[0];
    });
    const ExponentReport r = global_exponent_osc(f, kInf, 1, 4, 8);
    CHECK(r.saturation_flag);
    CHECK(r.floor_flag);
    CHECK(r.estimate == doctest::Approx(2.0));  // ceiling k+1
  }
  SUBCASE("too few levels") {
    const GridFunction f =
        sample_series(series_of("tent", 0.5, 0.5, 10), spec, 10, {1}).function;
    try {
      global_exponent_osc(f, kInf, 1, 4, 6);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InsufficientLevels);
    }
  }
}

TEST_CASE("pointwise exponents") {
  auto spec = dyadic_line();
  SUBCASE("takagi at 1/3") {
    const GridFunction f =
        sample_series(series_of("tent", std::pow(2.0, -0.5), std::pow(2.0, -0.5), 16), spec, 16,
                      {1})
            .function;
    const ExponentReport r = pointwise_exponent(f, {1.0 / 3.0}, kInf, 1, 10, "osc", 4);
    CHECK(r.estimate == doctest::Approx(0.5).epsilon(0.1));
  }
  SUBCASE("levy at bounded-ratio points") {
    const GridFunction f =
        sample_series(series_of("sawtooth", 0.5, 0.5, 16), spec, 16, {1}).function;
    for (double x : {1.0 / 3.0, 0.2}) {
      const ExponentReport r = pointwise_exponent(f, {x}, kInf, 1, 10, "osc", 4);
      CHECK(r.estimate == doctest::Approx(1.0).epsilon(0.1));
    }
  }
  SUBCASE("smooth functions saturate") {
    const GridFunction f = sample_function(spec, 14, {1}, [](const std::vector<double>& x) {
      return std::sin(2 * kPi * x[0]);
    });
    const ExponentReport r = pointwise_exponent(f, {0.3}, kInf, 1, 8, "osc", 3);
    CHECK(r.estimate >= 2.0 - 0.25);
    CHECK(r.saturation_flag);
  }
}

TEST_CASE("double limit functional") {
  auto spec = dyadic_line();
  SUBCASE("weierstrass") {
    const double mu = std::pow(2.0, -0.7);
    const GridFunction f = sample_weierstrass(mu, spec, 14, 14, {1}).function;
    const LPDecomposition lp = lp_decompose(f, 10);
    for (double x : {0.11, 0.5, 0.77}) {
      const ExponentReport r = double_limit_alpha(f, lp, {x}, 10);
      CHECK(r.estimate == doctest::Approx(0.7).epsilon(0.1));
    }
  }
  SUBCASE("takagi at 1/3") {
    const GridFunction f =
        sample_series(series_of("tent", std::pow(2.0, -0.5), std::pow(2.0, -0.5), 16), spec, 16,
                      {1})
            .function;
    const LPDecomposition lp = lp_decompose(f, 12);
    const ExponentReport r = double_limit_alpha(f, lp, {1.0 / 3.0}, 12);
    CHECK(r.estimate == doctest::Approx(0.5).epsilon(0.1));
  }
  SUBCASE("constants flag saturation") {
    const GridFunction f = sample_function(spec, 10, {1}, [](const std::vector<double>&) {
      return 7.0;
    });
    const LPDecomposition lp = lp_decompose(f, 6);
    const ExponentReport r = double_limit_alpha(f, lp, {0.4}, 6);
    CHECK(r.saturation_flag);
  }
}

TEST_CASE("digit functionals") {
  auto spec = dyadic_line();
  SUBCASE("uniform multipliers are exact at every depth") {
    const SeriesSpec s = series_of("tent", std::pow(2.0, -0.5), std::pow(2.0, -0.5), 10);
    for (int lmax : {6, 10, 14}) {
      const TauReport t = tau0(s, *spec, {1.0 / 3.0}, lmax);
      CHECK(t.value == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(t.slope_value == doctest::Approx(0.5).epsilon(1e-9));
    }
  }
  SUBCASE("mixed multipliers at 1/3: period average 1.5") {
    // Digits of 1/3 alternate 0,1; the period average of log|mu_i| against
    // log(1/2) is (1 + 2) / 2 = 1.5.
    const SeriesSpec s = series_of("tent", 0.5, 0.25, 10);
    const TauReport t = tau0(s, *spec, {1.0 / 3.0}, 16);
    // Tail-min surrogate dips below the limit by about 1/(2 lmax).
    CHECK(t.value == doctest::Approx(1.5).epsilon(0.04));
    CHECK(t.value <= 1.5 + 1e-12);
    CHECK(t.slope_value == doctest::Approx(1.5).epsilon(0.02));
  }
  SUBCASE("all-zero digits see only the first multiplier") {
    const SeriesSpec s = series_of("tent", 0.5, 0.25, 10);
    const TauReport t = tau0(s, *spec, {0.0}, 12);
    CHECK(t.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("tau1 at 1/3: bounded ratio, remark transport") {
    const SeriesSpec s = series_of("sawtooth", 0.5, 0.5, 10);
    const TauReport t = tau1(s, *spec, {1.0 / 3.0}, 12);
    CHECK(t.bounded_ratio);
    CHECK(t.ratio_sup == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(t.via_remark == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.slope_value == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("boundary points are degenerate for tau1") {
    const SeriesSpec s = series_of("tent", 0.5, 0.5, 10);
    try {
      tau1(s, *spec, {0.0}, 8);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DegenerateBoundaryDistance);
    }
  }
}

TEST_CASE("theorem 4 sandwich audit") {
  auto spec = dyadic_line();
  SUBCASE("takagi") {
    const SeriesSpec s = series_of("tent", std::pow(2.0, -0.5), std::pow(2.0, -0.5), 16);
    const GridFunction f = sample_series(s, spec, 16, {1}).function;
    const Theorem4Audit a = theorem4_audit(s, f, {1.0 / 3.0}, 12, 1, 4, 10);
    CHECK(a.lower_ok);
    CHECK(a.upper_ok);
    CHECK(a.tau0_value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(a.tau1_value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(a.alpha_estimate == doctest::Approx(0.5).epsilon(0.12));
  }
  SUBCASE("levy") {
    const SeriesSpec s = series_of("sawtooth", 0.5, 0.5, 16);
    const GridFunction f = sample_series(s, spec, 16, {1}).function;
    const Theorem4Audit a = theorem4_audit(s, f, {1.0 / 3.0}, 12, 1, 4, 10);
    CHECK(a.lower_ok);
    CHECK(a.upper_ok);
    CHECK(a.alpha_estimate == doctest::Approx(1.0).epsilon(0.1));
    CHECK(a.tau1_value == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("slow cascade mu = 0.9") {
    // tau = log 0.9 / log 0.5 ~ 0.152. The truncated ladder decays like
    // 0.9^{16-l}, which biases the osc regression upward by about +0.1 at
    // this grid; the estimate brackets tau from above within that bias.
    const SeriesSpec s = series_of("tent", 0.9, 0.9, 16);
    const GridFunction f = sample_series(s, spec, 16, {1}).function;
    const Theorem4Audit a = theorem4_audit(s, f, {1.0 / 3.0}, 12, 1, 4, 10);
    CHECK(a.tau0_value == doctest::Approx(0.152).epsilon(0.01));
    CHECK(a.alpha_estimate > 0.10);
    CHECK(a.alpha_estimate < 0.30);
    CHECK(a.lower_ok);
  }
  SUBCASE("cascade mu = 0.8 passes the full sandwich") {
    const SeriesSpec s = series_of("tent", 0.8, 0.8, 16);
    const GridFunction f = sample_series(s, spec, 16, {1}).function;
    const Theorem4Audit a = theorem4_audit(s, f, {1.0 / 3.0}, 12, 1, 4, 10);
    CHECK(a.tau0_value == doctest::Approx(0.3219).epsilon(0.01));
    CHECK(a.lower_ok);
    CHECK(a.upper_ok);
  }
}

TEST_CASE("proposition 5 ordering") {
  auto spec = dyadic_line();
  SUBCASE("takagi chain") {
    const GridFunction f =
        sample_series(series_of("tent", std::pow(2.0, -0.5), std::pow(2.0, -0.5), 16), spec, 16,
                      {1})
            .function;
    const OrderingAudit a = proposition5_audit(f, {1.0 / 3.0}, 1, {1.0, 2.0, kInf}, 4, 10);
    CHECK(a.chain_ok);
  }
  SUBCASE("smooth functions saturate consistently") {
    const GridFunction f = sample_function(spec, 14, {1}, [](const std::vector<double>& x) {
      return std::sin(2 * kPi * x[0]);
    });
    const OrderingAudit a = proposition5_audit(f, {0.3}, 1, {2.0, kInf}, 3, 8);
    CHECK(a.chain_ok);  // all pinned at the ceiling
  }
}

TEST_CASE("route consistency and invariances") {
  auto spec = dyadic_line();
  const GridFunction f =
      sample_series(series_of("tent", std::pow(2.0, -0.5), std::pow(2.0, -0.5), 16), spec, 16,
                    {1})
          .function;
  SUBCASE("osc, diff, sigma, band estimates agree within 0.1") {
    MRASystem haar(GeneratorSet::haar(spec), f);
    const double osc = global_exponent_osc(f, kInf, 1, 4, 10).estimate;
    const double diff = global_exponent_diff(f, kInf, 1, 4, 10).estimate;
    const double sigma = global_exponent_mra(f, haar, "sigma", kInf, 4, 10).estimate;
    const double band = global_exponent_band(f, kInf, 4, 10).estimate;
    for (double a : {osc, diff, sigma, band})
      for (double b : {osc, diff, sigma, band}) CHECK(std::abs(a - b) <= 0.1);
  }
  SUBCASE("window stability") {
    const double narrow = global_exponent_osc(f, kInf, 1, 4, 9).estimate;
    const double wide = global_exponent_osc(f, kInf, 1, 4, 11).estimate;
    CHECK(std::abs(narrow - wide) <= 0.05);
  }
  SUBCASE("scaling leaves estimates unchanged") {
    std::vector<double> scaled(f.samples());
    for (double& v : scaled) v *= 7.5;
    const GridFunction g(spec, 16, {1}, std::move(scaled));
    const double a = global_exponent_osc(f, kInf, 1, 4, 9).estimate;
    const double b = global_exponent_osc(g, kInf, 1, 4, 9).estimate;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
  SUBCASE("integer translation of the probe point") {
    const ExponentReport a = pointwise_exponent(f, {1.0 / 3.0}, kInf, 1, 9, "osc", 4);
    const ExponentReport b = pointwise_exponent(f, {1.0 / 3.0 + 1.0}, kInf, 1, 9, "osc", 4);
    CHECK(a.estimate == doctest::Approx(b.estimate).epsilon(1e-12));
  }
}

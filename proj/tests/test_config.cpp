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

#include "saft/config.hpp"
#include "saft/error.hpp"
#include "saft/session.hpp"

using namespace saft;

TEST_CASE("config parsing") {
  SUBCASE("defaults print and reload") {
    RunConfig config;
    const std::string text = config.to_text();
    RunConfig reparsed;
    reparsed.load_text(text);
    CHECK(reparsed.to_text() == text);
  }
  SUBCASE("values override") {
    RunConfig config;
    config.load_text("[analysis]\ns = 0.75\np = 2\n\n[function]\nlevel = 9\n");
    CHECK(config.get_real("analysis", "s") == doctest::Approx(0.75));
    CHECK(config.get_int("function", "level") == 9);
  }
  SUBCASE("unknown keys are rejected") {
    RunConfig config;
    try {
      config.load_text("[analysis]\nnot_a_key = 1\n");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnknownKey);
      CHECK(e.category() == ErrorCategory::Config);
    }
  }
  SUBCASE("set with dotted keys") {
    RunConfig config;
    config.set("tiling.matrix", "3");
    config.set("tiling.digits", "0 1 2");
    CHECK(config.get("tiling", "matrix") == "3");
  }
  SUBCASE("inf parses") {
    RunConfig config;
    CHECK(std::isinf(config.get_real("analysis", "p")));
  }
  SUBCASE("comments and blank lines") {
    RunConfig config;
    config.load_text("# header comment\n\n[analysis]\ns = 0.3  # inline\n");
    CHECK(config.get_real("analysis", "s") == doctest::Approx(0.3));
  }
  SUBCASE("malformed lines") {
    RunConfig config;
    try {
      config.load_text("[analysis]\njust words\n");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ConfigParse);
    }
  }
}

TEST_CASE("session runs") {
  SUBCASE("tile command emits points and geometry") {
    Session session;
    session.config.set("tiling.depth", "8");
    const auto outputs = session.run("tile");
    REQUIRE(outputs.size() == 2);
    CHECK(outputs[0].name == "tile_points.csv");
    CHECK(outputs[1].name == "tile_geometry.json");
    // 2^8 rows + header
    std::size_t rows = 0;
    for (char c : outputs[0].data)
      if (c == '\n') ++rows;
    CHECK(rows == 257);
    CHECK(outputs[1].data.find("\"inradius\": 0.5") != std::string::npos);
  }
  SUBCASE("twin dragon tile run") {
    Session session;
    session.config.set("tiling.dimension", "2");
    session.config.set("tiling.matrix", "1 1 -1 1");
    session.config.set("tiling.digits", "0 0 1 0");
    session.config.set("tiling.depth", "10");
    const auto outputs = session.run("tile");
    std::size_t rows = 0;
    for (char c : outputs[0].data)
      if (c == '\n') ++rows;
    CHECK(rows == 1025);  // 2^10 points + header
    CHECK(outputs[1].data.find("\"cube\": false") != std::string::npos);
  }
  SUBCASE("window auto policy") {
    Session session;
    session.config.set("function.level", "6");
    auto spec = session.build_spec();
    CHECK(session.build_function(spec).f.tile_count() == 1);  // series: one tile
    session.config.set("function.builtin", "sine");
    CHECK(session.build_function(spec).f.tile_count() == 2);  // generic: margin
  }
  SUBCASE("norm command on a small grid") {
    Session session;
    session.config.set("function.level", "10");
    session.config.set("analysis.lmax", "5");
    const auto outputs = session.run("norm");
    REQUIRE(outputs.size() == 2);
    CHECK(outputs[0].name == "norm_report.json");
    CHECK(outputs[0].data.find("\"families\"") != std::string::npos);
  }
  SUBCASE("exponent command emits global and pointwise reports") {
    Session session;
    session.config.set("function.level", "12");
    session.config.set("analysis.routes", "osc");
    session.config.set("analysis.level_lo", "3");
    const auto outputs = session.run("exponent");
    REQUIRE(outputs.size() == 2);
    CHECK(outputs[0].data.find("\"global\"") != std::string::npos);
    CHECK(outputs[0].data.find("\"tau0\"") != std::string::npos);
  }
  SUBCASE("mra-report runs the generator battery") {
    Session session;
    session.config.set("function.level", "10");
    session.config.set("analysis.lmax", "4");
    const auto outputs = session.run("mra-report");
    REQUIRE(outputs.size() == 2);
    CHECK(outputs[0].data.find("\"stability\"") != std::string::npos);
    CHECK(outputs[0].data.find("\"parseval\"") != std::string::npos);
    CHECK(outputs[1].name == "pyramid.csv");
  }
  SUBCASE("runs are byte-reproducible") {
    for (const char* cmd : {"tile", "norm", "exponent"}) {
      Session a, b;
      for (Session* s : {&a, &b}) {
        s->config.set("function.level", "10");
        s->config.set("tiling.depth", "6");
        s->config.set("analysis.lmax", "4");
        s->config.set("analysis.level_lo", "1");
        s->config.set("analysis.level_hi", "4");
      }
      const auto ra = a.run(cmd);
      const auto rb = b.run(cmd);
      REQUIRE(ra.size() == rb.size());
      for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].name == rb[i].name);
        CHECK(ra[i].data == rb[i].data);
      }
    }
  }
  SUBCASE("validation errors carry their category") {
    Session session;
    session.config.set("tiling.digits", "0 2");
    try {
      session.run("tile");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DuplicateResidue);
      CHECK(e.category() == ErrorCategory::Validation);
    }
  }
  SUBCASE("bad parameters surface as validation errors") {
    Session session;
    session.config.set("analysis.s", "3");
    session.config.set("analysis.k", "1");  // k+1 = 2 <= s = 3
    session.config.set("function.level", "10");
    try {
      session.run("norm");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BadParameters);
    }
  }
}

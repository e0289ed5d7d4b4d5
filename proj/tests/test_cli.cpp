#include <doctest.h>

#include <fstream>

#include "cli/runner.hpp"

using namespace bfvlab;
using namespace bfvlab::cli;

namespace {
std::string models_dir() { return BFVLAB_MODELS_DIR; }
}

TEST_CASE("model files load and validate") {
  Model m = load_model(models_dir() + "/so3.model");
  CHECK(m.name == "so3");
  REQUIRE(m.constraints.has_value());
  CHECK(m.constraints->pairs == 3);
  CHECK(!m.hash.empty());

  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_model(R"({"name":"x","bogus":1})", "<mem>"),
                    InputError);
    CHECK_THROWS_AS(
        parse_model(R"({"lattice":{"d":2,"steps":3}})", "<mem>"),
        InputError);
    CHECK_THROWS_AS(parse_model("not json", "<mem>"), InputError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_model("/nonexistent/foo.model"), InputError);
  }
  SUBCASE("hash is stable") {
    CHECK(fnv1a64_hex("abc") == fnv1a64_hex("abc"));
    CHECK(fnv1a64_hex("abc") != fnv1a64_hex("abd"));
  }
}

TEST_CASE("bundled fixtures pass their suites") {
  for (const char* name : {"so3.model", "abelian.model",
                           "nonconstant-f.model"}) {
    Model m = load_model(models_dir() + "/" + name);
    auto checks = run_bfv(m, 1, "");
    CHECK(all_pass(checks));
  }
}

TEST_CASE("reports are deterministic at fixed seed") {
  Model m = load_model(models_dir() + "/nonconstant-f.model");
  ReportMeta meta;
  meta.model_path = m.path;
  meta.model_hash = m.hash;
  meta.seed = 7;
  meta.conventions = conventions();

  auto a = run_toy(m, 7, "");
  auto b = run_toy(m, 7, "");
  // Runtimes differ between runs; the JSON omits them by default.
  CHECK(report_json(a, meta) == report_json(b, meta));
  CHECK(all_pass(a));
}

TEST_CASE("report shapes") {
  SUBCASE("empty check list still yields a valid summary") {
    ReportMeta meta;
    meta.seed = 1;
    std::string j = report_json({}, meta);
    CHECK(j.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(report_csv({}) == "check,N,defect_norm,est_order\n");
  }
  SUBCASE("failures are listed first in the transcript") {
    CheckRecord ok;
    ok.id = "alpha";
    ok.pass = true;
    CheckRecord bad;
    bad.id = "omega";
    bad.pass = false;
    bad.max_residual = "1/2";
    ReportMeta meta;
    std::string t = report_transcript({ok, bad}, meta);
    CHECK(t.find("[FAIL] omega") < t.find("[pass] alpha"));
    CHECK(t.find("1/2") != std::string::npos);
    CHECK(!all_pass({ok, bad}));
  }
  SUBCASE("convergence rows appear in the CSV") {
    CheckRecord c;
    c.id = "lat";
    c.pass = true;
    lattice::ConvRow row;
    row.check = "demo";
    row.N = 8;
    row.defect = 0.5;
    c.rows.push_back(row);
    std::string csv = report_csv({c});
    CHECK(csv.find("demo,8,5.0000") != std::string::npos);
  }
}

TEST_CASE("algebra property suite passes") {
  auto checks = run_algebra(nullptr, 2024, "");
  CHECK(!checks.empty());
  CHECK(all_pass(checks));
}

TEST_CASE("formal suite via the runner includes controls") {
  auto checks = run_formal(nullptr, "");
  CHECK(all_pass(checks));
  int controls = 0;
  for (const auto& c : checks)
    if (c.id.find("control") != std::string::npos) ++controls;
  CHECK(controls == 3);
}

TEST_CASE("model-declared derivations are checked") {
  const char* text = R"({
    "name": "koszul",
    "algebra": {
      "generators": [{"name":"x","degree":0},{"name":"b","degree":-1},
                      {"name":"c","degree":1}],
      "relations": {"annihilate": [], "substitute": []},
      "derivations": {
        "Q": {"degree": 1, "images": {"b": "x"}},
        "Bad": {"degree": 1, "images": {"c": "x*c"}}
      }
    }
  })";
  Model m = parse_model(text, "<mem>");
  auto checks = run_algebra(&m, 1, "nilpotent");
  REQUIRE(checks.size() == 2);
  for (const auto& c : checks) {
    if (c.id == "nilpotent-Q") CHECK(c.pass);
    if (c.id == "nilpotent-Bad") {
      CHECK(!c.pass);
      CHECK(c.max_residual.find("x^2*c") != std::string::npos);
    }
  }
}

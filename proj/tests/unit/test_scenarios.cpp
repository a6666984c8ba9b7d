#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cmf/errors.hpp"
#include "cmf/scenarios.hpp"

using namespace cmf;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run(const std::string& name, std::uint64_t seed = 1) {
  ScenarioOptions o;
  o.name = name;
  o.seed = seed;
  return run_scenario(o);
}

}  // namespace

TEST_CASE("registry") {
  const auto& names = scenario_names();
  CHECK(names.size() == 11);
  for (const char* n : {"delpezzo-r2", "curve-9-4", "surface-9-4", "rank3-c18", "rank4-plane", "bourbaki-r2",
                        "bourbaki-r3", "bourbaki-r4", "linked-r23", "hassett-arith", "extension-counts"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  ScenarioOptions o;
  o.name = "no-such-scenario";
  CHECK_THROWS_AS(run_scenario(o), InvalidArgument);
}

TEST_CASE("an empty report renders only its header") {
  Report r;
  r.scenario = "empty";
  r.prime = 7;
  r.seed = 3;
  std::string t = render_text(r);
  CHECK(t.find("scenario: empty") != std::string::npos);
  CHECK(t.find("[results]") == std::string::npos);
  CHECK(t.find("[expectations]") == std::string::npos);
  CHECK(r.passed());
  CHECK(r.exit_code() == 0);
}

TEST_CASE("exit codes") {
  Report r;
  r.scenario = "x";
  r.expectations.push_back({"a.note", "a note", 1, 2, false, false});
  CHECK(r.passed());
  CHECK(r.exit_code() == 0);
  r.expectations.push_back({"a.gate", "a gate", 1, 2, false, true});
  CHECK_FALSE(r.passed());
  CHECK(r.exit_code() == 2);
  REQUIRE(r.find("a.gate"));
  CHECK(r.find("a.gate")->description == "a gate");
  CHECK(r.find("missing") == nullptr);

  Report g;
  g.error_kind = "GenericityFailure";
  CHECK(g.exit_code() == 3);
  g.error_kind = "DegenerateSections";
  CHECK(g.exit_code() == 3);
  g.error_kind = "ShapeMismatch";
  CHECK(g.exit_code() == 2);
}

TEST_CASE("closed-form scenarios pass and round-trip through JSON") {
  for (const char* name : {"hassett-arith", "extension-counts"}) {
    Report r = run(name);
    CAPTURE(name);
    CHECK(r.passed());
    CHECK_FALSE(r.expectations.empty());
    Report back = report_from_json(report_to_json(r));
    CHECK(render_json(back) == render_json(r));
    CHECK(render_text(back) == render_text(r));
  }
}

TEST_CASE("Betti payload round trip") {
  BettiTable t;
  t.add(0, 0, 1);
  t.add(1, 2, 5);
  t.add(2, 3, 5);
  t.add(3, 5, 1);
  CHECK(betti_from_json(betti_json(t)) == t);
}

TEST_CASE("del Pezzo report matches the golden file and is deterministic") {
  Report a = run("delpezzo-r2");
  CHECK(a.passed());
  CHECK(render_text(a) == slurp(std::string(CMF_GOLDEN_DIR) + "/delpezzo-r2.txt"));
  Report b = run("delpezzo-r2");
  CHECK(render_json(a) == render_json(b));
  auto* betti = a.find("delpezzo.betti");
  REQUIRE(betti);
  CHECK(betti->pass);
}

TEST_CASE("other seeds give the same invariants") {
  Report r = run("delpezzo-r2", 7);
  CHECK(r.passed());
  CHECK(r.seed == 7);
}

TEST_CASE("a tiny budget stops the run") {
  ScenarioOptions o;
  o.name = "surface-9-4";
  o.budget = 0.01;
  Report r = run_scenario(o);
  CHECK(r.error_kind == "TimeBudgetExceeded");
  CHECK(r.exit_code() == 2);
  CHECK(render_json(r).find("TimeBudgetExceeded") != std::string::npos);
}

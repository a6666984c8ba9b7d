#ifndef CMF_SCENARIOS_HPP
#define CMF_SCENARIOS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmf/resolve.hpp"
#include "json.hpp"

namespace cmf {

using Json = nlohmann::ordered_json;

struct ScenarioOptions {
  std::string name;
  std::uint32_t prime = 32003;
  std::uint64_t seed = 1;
  double budget = 0;  // seconds, 0 = none
  bool check_smooth = false;
  bool heavy = false;
  bool timings = false;  // keep wall-clock data in the report
  std::string out_dir;   // exports (surfaces, certificates) go here when set
};

struct Expectation {
  std::string anchor;  // stable id, e.g. "delpezzo.betti"
  std::string description;
  Json expected, actual;
  bool pass = false;
  bool gating = true;  // notes do not affect the exit code
};

struct Report {
  std::string scenario;
  std::uint32_t prime = 0;
  std::uint64_t seed = 0;
  bool heavy = false;
  bool check_smooth = false;
  Json results = Json::object();
  std::vector<Expectation> expectations;
  std::vector<std::pair<std::string, double>> timings;  // empty unless requested
  std::string error_kind, error_message;                // empty when the run completed

  bool passed() const;  // every gating expectation passes and no error
  // 0 when passed, 3 on genericity exhaustion, 2 otherwise.
  int exit_code() const;
  const Expectation* find(const std::string& anchor) const;
};

const std::vector<std::string>& scenario_names();
// Unknown names throw InvalidArgument; library errors inside a run are
// recorded in the report instead of propagating.
Report run_scenario(const ScenarioOptions& opt);

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);
std::string render_json(const Report& r);  // dump(2) plus newline
std::string render_text(const Report& r);

// Betti table payload {"betti": [{"i","j","b"}...]} as used in the reports.
Json betti_json(const BettiTable& t);
BettiTable betti_from_json(const Json& j);

}  // namespace cmf

#endif  // CMF_SCENARIOS_HPP

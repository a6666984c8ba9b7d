// Scenario runner. Reports go to stdout, or to <out>/<scenario>.<txt|json>
// when --out is given. Exit code: 3 if any scenario ran out of generic
// choices, else 2 if any expectation failed, else 0.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cmf/errors.hpp"
#include "cmf/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ulrich bundle certificates on cubic fourfolds"};
  std::vector<std::string> names;
  cmf::ScenarioOptions base;
  std::string format = "text";
  int jobs = 1;
  bool all = false, list = false;
  app.add_option("--scenario", names, "scenario to run (repeatable)");
  app.add_flag("--all", all, "run every registered scenario");
  app.add_flag("--list", list, "print the registered scenarios and exit");
  app.add_option("--prime", base.prime, "field characteristic")->capture_default_str();
  app.add_option("--seed", base.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--out", base.out_dir, "directory for reports and exports");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--check-smooth", base.check_smooth, "verify smoothness of surfaces and cubics");
  app.add_flag("--heavy", base.heavy, "run normal-module h^1 and endomorphism cohomology");
  app.add_option("--budget", base.budget, "wall-clock budget per scenario in seconds (0 = none)");
  app.add_option("--jobs", jobs, "scenarios to run in parallel")->check(CLI::PositiveNumber);
  app.add_flag("--timings", base.timings, "include wall-clock timings in the reports");
  CLI11_PARSE(app, argc, argv);

  const auto& known = cmf::scenario_names();
  if (list) {
    for (const auto& n : known) std::cout << n << "\n";
    return 0;
  }
  if (all) names = known;
  if (names.empty()) {
    std::cerr << "no scenario given (use --scenario NAME, --all or --list)\n";
    return 1;
  }
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end()) {
      std::cerr << "unknown scenario '" << n << "'\n";
      return 1;
    }

  std::vector<cmf::Report> reports(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < names.size();) {
      cmf::ScenarioOptions o = base;
      o.name = names[i];
      reports[i] = cmf::run_scenario(o);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(jobs, static_cast<int>(names.size())); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int code = 0;
  for (const auto& r : reports) {
    std::string body = format == "json" ? cmf::render_json(r) : cmf::render_text(r);
    if (base.out_dir.empty()) {
      std::cout << body;
      if (reports.size() > 1) std::cout << "\n";
    } else {
      auto path = std::filesystem::path(base.out_dir) / (r.scenario + (format == "json" ? ".json" : ".txt"));
      std::ofstream f(path);
      if (!f) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
      }
      f << body;
      std::cerr << r.scenario << ": " << (r.passed() ? "PASS" : "FAIL") << " -> " << path.string() << "\n";
    }
    int c = r.exit_code();
    if (c == 3 || (c == 2 && code == 0)) code = c;
  }
  return code;
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "superbv/suites.hpp"

namespace {

const char* kind_name(sbv::ParseError::Kind k) {
  switch (k) {
    case sbv::ParseError::Kind::syntax: return "syntax error";
    case sbv::ParseError::Kind::parity: return "parity error";
    case sbv::ParseError::Kind::unknown_name: return "unknown name";
    case sbv::ParseError::Kind::cap_overflow: return "degree cap overflow";
    case sbv::ParseError::Kind::semantic: return "error";
  }
  return "error";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

sbv::Scenario load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return sbv::parse_scenario(ss.str());
  } catch (const sbv::ParseError& e) {
    throw UsageError(path + ":" + e.what() + " (" + kind_name(e.kind()) + ")");
  }
}

int verify(const std::string& file, const std::vector<std::string>& suites, std::optional<std::uint64_t> seed,
           std::optional<int> trials, const std::string& json_path, bool serial) {
  sbv::Scenario s = load(file);
  if (!suites.empty()) {
    s.suites.clear();
    for (const auto& n : suites) {
      if (n == "all") {
        for (const auto& d : sbv::default_suites()) s.suites.push_back(d);
      } else if (sbv::is_suite(n)) {
        s.suites.push_back(n);
      } else {
        throw UsageError("unknown suite '" + n + "'");
      }
    }
  }
  if (seed) s.seed = *seed;
  if (trials) s.trials = *trials;
  const sbv::Report r = sbv::run_suites(s, serial ? sbv::Execution::serial : sbv::Execution::parallel);
  std::cout << sbv::summary(r);
  if (!json_path.empty()) {
    auto j = sbv::to_json(r);
    j["determinism_hash"] = sbv::determinism_hash(r);
    std::ofstream out(json_path);
    if (!out) throw UsageError("cannot write " + json_path);
    out << j.dump(2) << "\n";
  }
  return r.exit_code();
}

int eval(const std::string& file, const std::string& expr) {
  const sbv::Scenario s = load(file);
  try {
    std::cout << sbv::render(sbv::evaluate(s, expr)) << "\n";
  } catch (const sbv::ParseError& e) {
    throw UsageError(std::string("--expr:") + e.what() + " (" + kind_name(e.kind()) + ")");
  }
  return 0;
}

int transform(const std::string& file, const std::string& map, const std::string& section) {
  const sbv::Scenario s = load(file);
  auto m = s.maps.find(map);
  if (m == s.maps.end()) throw UsageError("unknown map '" + map + "'");
  auto a = s.sections.find(section);
  if (a == s.sections.end()) throw UsageError("unknown section '" + section + "'");
  std::cout << sbv::render(sbv::pull_mvform(m->second, a->second)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superbv: exact BV calculus on supermanifold charts"};
  app.require_subcommand(1);

  std::string file, json_path, expr, map, section;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool serial = false;

  auto* v = app.add_subcommand("verify", "run lemma suites and report");
  v->add_option("file", file, "scenario file")->required();
  v->add_option("--suite", suites, "suite to run (repeatable; 'all' for the default set)");
  v->add_option("--seed", seed, "override the scenario seed");
  v->add_option("--trials", trials, "override the number of trials")->check(CLI::NonNegativeNumber);
  v->add_option("--json", json_path, "write the JSON report here");
  v->add_flag("--serial", serial, "run trials on one thread");

  auto* e = app.add_subcommand("eval", "evaluate an expression in a scenario");
  e->add_option("file", file, "scenario file")->required();
  e->add_option("--expr", expr, "expression")->required();

  auto* t = app.add_subcommand("transform", "pull a section back along a map");
  t->add_option("file", file, "scenario file")->required();
  t->add_option("--map", map, "map name")->required();
  t->add_option("--section", section, "section name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*v) return verify(file, suites, seed, trials, json_path, serial);
    if (*e) return eval(file, expr);
    return transform(file, map, section);
  } catch (const UsageError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}

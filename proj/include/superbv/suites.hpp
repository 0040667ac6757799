#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "superbv/parallel.hpp"
#include "superbv/scenario.hpp"

namespace sbv {

enum class CheckStatus { pass, fail, error };

struct CheckRecord {
  std::string suite;
  std::string check;
  std::string anchor;
  int trials = 0;
  CheckStatus status = CheckStatus::pass;
  std::string counterexample;  // first failing trial, only for fail
  std::string error;           // scenario-level precondition failure, only for error
  double elapsed_ms = 0;
};

struct Report {
  std::uint64_t seed = 0;
  RingSignature sig;
  std::vector<CheckRecord> records;

  bool passed() const;
  // 0 all pass, 1 a check failed, 2 a precondition error.
  int exit_code() const;
};

// Every suite in run order; default_suites() omits the negative control.
const std::vector<std::string>& suite_names();
std::vector<std::string> default_suites();
bool is_suite(std::string_view name);
std::vector<std::string> suite_checks(std::string_view name);

// Runs s.suites with s.trials trials each; trial t of suite S draws from
// derive_seed(s.seed, hash_name(S), t), so the report does not depend on `mode`.
Report run_suites(const Scenario& s, Execution mode = Execution::parallel);

const char* to_string(CheckStatus s);
nlohmann::ordered_json to_json(const Report& r, bool timing = true);
// FNV-1a of the report JSON without timing fields, as 16 hex digits.
std::string determinism_hash(const Report& r);
std::string summary(const Report& r);

}  // namespace sbv

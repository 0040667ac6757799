// One line per acceptance criterion; exit status 0 only when every criterion passes.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "superbv/suites.hpp"

using namespace sbv;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void note(const std::string& s) { detail << (detail.tellp() > 0 ? "; " : "") << s; }
};

Report run(const std::string& ring, std::vector<std::string> suites, int trials, std::uint64_t seed = 20261015,
           int order = 4) {
  Scenario s = parse_scenario(ring);
  s.suites = std::move(suites);
  s.trials = trials;
  s.seed = seed;
  s.order = order;
  return run_suites(s, Execution::parallel);
}

// Every record of the report passes (and at least `min_trials` trials ran).
void require_pass(Outcome& o, const std::string& label, const Report& r, int min_trials) {
  int checks = 0;
  for (const auto& c : r.records) {
    ++checks;
    if (c.status != CheckStatus::pass || c.trials < min_trials) {
      o.ok = false;
      o.note(label + " " + c.suite + "/" + c.check + " " + to_string(c.status) + " " + c.counterexample + c.error);
    }
  }
  if (checks == 0) {
    o.ok = false;
    o.note(label + " produced no records");
  }
}

void require_check(Outcome& o, const std::string& label, const Report& r, const std::string& check, int min_trials) {
  bool seen = false;
  for (const auto& c : r.records) {
    if (c.check != check) continue;
    seen = true;
    if (c.status != CheckStatus::pass || c.trials < min_trials) {
      o.ok = false;
      o.note(label + " " + c.suite + "/" + c.check + " " + to_string(c.status));
    }
  }
  if (!seen) {
    o.ok = false;
    o.note(label + " has no check " + check);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::string> kMain{"ring 1|1 cap 4;", "ring 2|1 cap 4;", "ring 2|2 cap 4;"};

Outcome criterion_tian_todorov() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& ring : kMain) require_pass(o, ring, run(ring, {"tian_todorov"}, 25), 25);
  const double secs = seconds_since(t0);
  if (secs >= 60) {
    o.ok = false;
    o.note("took " + std::to_string(secs) + " s");
  }
  o.note("3 signatures x 25 pairs, omega cycling [dxi], (1+z1)[dxi], (1+z1+z1*z2)[dxi], " + std::to_string(secs) + " s");
  return o;
}

Outcome criterion_dgbv() {
  Outcome o;
  for (const auto& ring : kMain) require_pass(o, ring, run(ring, {"gbv_compat"}, 25), 25);
  o.note("derivation, compatibility, square zero, dbar anticommutation, bracket identity on 25 triples per signature");
  return o;
}

Outcome criterion_integral_forms() {
  Outcome o;
  for (const std::string ring : {"ring 1|1 cap 4;", "ring 2|1 cap 4;"}) {
    require_pass(o, ring, run(ring, {"partial_dbar"}, 25), 25);
    Report neg = run(ring, {"negative_control"}, 25);
    if (neg.records.size() != 1 || neg.records[0].status != CheckStatus::fail) {
      o.ok = false;
      o.note(ring + " negative control did not fail");
    }
  }
  o.note("25 forms and 25 morphisms per signature; unsigned variant fails at 1|1 and 2|1");
  return o;
}

Outcome criterion_supermatrix() {
  Outcome o;
  for (const auto& ring : kMain) require_pass(o, ring, run(ring, {"jacobi_sum"}, 25), 25);
  o.note("shapes (1|1), (2|1), (2|2), 25 matrices and morphisms each");
  return o;
}

Outcome criterion_connection() {
  Outcome o;
  for (const std::string ring : {"ring 1|1 cap 5;", "ring 2|1 cap 5;"}) require_pass(o, ring, run(ring, {"bv_flat"}, 25), 25);
  o.note("flatness, parallel equivalence, round trip, constant ambiguity, covariance; 25 omega and 25 coordinate changes per signature");
  return o;
}

Outcome criterion_transport() {
  Outcome o;
  for (const std::string ring : {"ring 1|1 cap 6;", "ring 2|1 cap 6;"})
    require_pass(o, ring, run(ring, {"sdet_transport"}, 25, 20261015, 4), 25);
  o.note("t-order 4, 25 Christoffel data per signature, auxiliary odd parameters 0, 1, 2 by trial");
  return o;
}

Outcome criterion_calabi_yau() {
  Outcome o;
  for (const std::string ring : {"ring 1|1 cap 5;", "ring 2|1 cap 5;"}) require_pass(o, ring, run(ring, {"cy_consistency"}, 25), 25);
  o.note("25 constraint-satisfying pairs per signature; violations are rejected");
  return o;
}

Outcome criterion_manin() {
  Outcome o;
  for (const std::string ring : {"ring 1|1 cap 4;", "ring 2|1 cap 4;"}) require_pass(o, ring, run(ring, {"manin_comparison"}, 25), 25);
  o.note("25 integral forms per signature: bijectivity and intertwining");
  return o;
}

Outcome criterion_schouten() {
  Outcome o;
  for (const std::string ring : {"ring 1|1 cap 4;", "ring 2|1 cap 4;"}) {
    require_pass(o, ring, run(ring, {"schouten_symmetry", "schouten_derivation"}, 25), 25);
    require_check(o, ring, run(ring, {"covariance"}, 25), "bracket_equivariance", 25);
  }
  o.note("symmetry, derivation, vector bracket, equivariance; 25 samples each");
  return o;
}

Outcome criterion_projection() {
  Outcome o;
  for (const std::string ring : {"ring 1|1 cap 4;", "ring 2|1 cap 4;"}) require_pass(o, ring, run(ring, {"delta_projection"}, 25), 25);
  o.note("25 perturbations by barred contractions per signature");
  return o;
}

Outcome criterion_tooling() {
  Outcome o;
  int values = 0;
  for (const auto& ring : kMain) {
    Report r = run(ring, {"parser_round_trip"}, 25);
    require_pass(o, ring, r, 25);
    values += 25 * 8;
  }
  Scenario s = parse_scenario("ring 1|1 cap 5; suite all;");
  s.trials = 10;
  s.seed = 99;
  const Report a = run_suites(s, Execution::parallel);
  const Report b = run_suites(s, Execution::parallel);
  const Report c = run_suites(s, Execution::serial);
  const std::string ha = determinism_hash(a), hb = determinism_hash(b), hc = determinism_hash(c);
  if (ha != hb || ha != hc || to_json(a, false).dump() != to_json(b, false).dump()) {
    o.ok = false;
    o.note("hash differs: " + ha + " " + hb + " " + hc);
  }
  o.note(std::to_string(values) + " values round-tripped; hash " + ha + " stable over two runs and the serial path");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"tian_todorov", criterion_tian_todorov},   {"dgbv", criterion_dgbv},
      {"integral_forms", criterion_integral_forms}, {"supermatrix", criterion_supermatrix},
      {"connection", criterion_connection},       {"transport", criterion_transport},
      {"calabi_yau", criterion_calabi_yau},       {"manin", criterion_manin},
      {"schouten", criterion_schouten},           {"projection", criterion_projection},
      {"tooling", criterion_tooling},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}

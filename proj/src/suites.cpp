#include "superbv/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "superbv/errors.hpp"
#include "superbv/random.hpp"

namespace sbv {

namespace {

struct Draw {
  MultiVectorForm form;
  BiDegree deg;
};

Draw draw(const Chart& chart, Rng& rng, int max_p, int max_q, int min_p = 0, int min_q = 0) {
  const int p = rng.uniform(min_p, max_p), q = rng.uniform(min_q, max_q);
  const Parity par = parity_of(rng.uniform(0, 1));
  return {random_mvform(chart, rng, p, q, par), BiDegree{p + q, par}};
}

MultiVectorForm times(Sign s, const MultiVectorForm& a) { return s.negative() ? -a : a; }
Jet times(Sign s, const Jet& a) { return s.negative() ? -a : a; }

VectorField to_field(const MultiVectorForm& a) {
  const auto& sig = a.signature();
  VectorField v{sig, std::vector<Jet>(static_cast<std::size_t>(sig.directions()), Jet(sig))};
  for (const auto& [key, c] : a.terms()) {
    if (c.is_zero()) continue;
    if (key.q() != 0 || key.p() != 1) throw PreconditionError("not a vector field");
    for (int k = 0; k < sig.directions(); ++k)
      if (key.vec[static_cast<std::size_t>(k)]) v.coeffs[static_cast<std::size_t>(k)] = c;
  }
  return v;
}

// Failures of one trial, first one per check.
class Trial {
 public:
  Trial(const Scenario& s, std::uint64_t seed, int index)
      : scenario(s), chart(s.chart()), rng(seed), index(index), seed(seed) {}

  void expect(const std::string& check, bool ok, const std::function<std::string()>& describe) {
    if (ok || failures.count(check)) return;
    failures.emplace(check, "trial " + std::to_string(index) + ", seed " + std::to_string(seed) + ": " + describe());
  }

  Chart source() const { return Chart{chart.sig, "x"}; }
  Chart target() const { return Chart{chart.sig, "y"}; }
  Morphism morphism() { return random_morphism(source(), target(), rng); }

  const Scenario& scenario;
  Chart chart;
  Rng rng;
  int index;
  std::uint64_t seed;
  std::map<std::string, std::string> failures;
};

struct Suite {
  std::string name;
  std::string anchor;
  std::vector<std::string> checks;
  std::function<void(Trial&)> run;
};

std::string pair_text(const MultiVectorForm& a, const MultiVectorForm& b) {
  return "alpha = " + render(a) + "; beta = " + render(b);
}

std::vector<BerSection> omega_list(const Scenario& s) {
  const auto& sig = s.sig;
  const Chart c = s.chart();
  Jet z1 = Jet::generator(sig, holomorphic_generator(sig, 0));
  Jet second = sig.n >= 2 ? z1 * Jet::generator(sig, holomorphic_generator(sig, 1)) : z1 * z1;
  std::vector<BerSection> out{{c, Jet(sig, 1)}, {c, Jet(sig, 1) + z1}, {c, Jet(sig, 1) + z1 + second}};
  for (const auto& [name, w] : s.bers) out.push_back(w);
  return out;
}

void tian_todorov(Trial& t) {
  const auto omegas = omega_list(t.scenario);
  const BerSection& w = omegas[static_cast<std::size_t>(t.index) % omegas.size()];
  auto a = draw(t.chart, t.rng, 2, 1), b = draw(t.chart, t.rng, 2, 1);
  auto delta = [&](const MultiVectorForm& f) { return delta_omega(w, f); };
  const Sign sa = Sign::power(a.deg.cohom);
  MultiVectorForm rhs =
      times(sa, delta(wedge(a.form, b.form))) - times(sa, wedge(delta(a.form), b.form)) - wedge(a.form, delta(b.form));
  t.expect("identity", -schouten(a.form, b.form) == rhs,
           [&] { return "omega = " + render(w) + "; " + pair_text(a.form, b.form); });
}

void gbv_compat(Trial& t) {
  const auto omegas = omega_list(t.scenario);
  const BerSection w = omegas[static_cast<std::size_t>(t.index) % omegas.size()];
  std::vector<MultiVectorForm> samples;
  for (int i = 0; i < 3; ++i) samples.push_back(draw(t.chart, t.rng, 2, 1).form);
  SectionOperator delta = [w](const MultiVectorForm& a) { return delta_omega(w, a); };
  for (const auto& r : check_bv_axioms(delta, samples))
    t.expect(r.check, r.passed, [&] { return "omega = " + render(w) + "; " + r.counterexample; });
}

void partial_dbar(Trial& t) {
  IntegralForm s{draw(t.chart, t.rng, 3, 1).form};
  t.expect("partial_squared", partial_int(partial_int(s)).body.is_zero(), [&] { return "sigma = " + render(s); });
  t.expect("partial_dbar", (partial_int(dbar(s)).body + dbar(partial_int(s)).body).is_zero(),
           [&] { return "sigma = " + render(s); });
  auto phi = t.morphism();
  IntegralForm u{draw(t.target(), t.rng, 2, 1).form};
  t.expect("partial_covariance", pull_integral(phi, partial_int(u)) == partial_int(pull_integral(phi, u)),
           [&] { return render(phi, "phi") + "; sigma = " + render(u); });
}

void negative_control(Trial& t) {
  IntegralForm s{draw(t.chart, t.rng, 3, 1, 1, 1).form};
  t.expect("partial_dbar_unsigned", (partial_int(dbar(s), false).body + dbar(partial_int(s, false)).body).is_zero(),
           [&] { return "sigma = " + render(s); });
}

void jacobi_sum(Trial& t) {
  const auto& sig = t.chart.sig;
  SuperMatrix a = random_even_matrix(sig, sig.n, sig.m, t.rng), b = random_even_matrix(sig, sig.n, sig.m, t.rng);
  t.expect("sdet_multiplicative", sdet(a * b) == sdet(a) * sdet(b), [&] { return "A = " + render(a) + "; B = " + render(b); });
  t.expect("sdet_supertranspose", sdet(supertranspose(a)) == sdet(a), [&] { return "A = " + render(a); });

  auto phi = t.morphism();
  SuperMatrix j = differential(phi), ji = inverse(j);
  Jet sd = sdet(j);
  for (int k = 0; k < sig.directions(); ++k) {
    auto xk = VectorField::coordinate(sig, k);
    const int px = bit(sig.direction_parity(k));
    Jet rhs(sig);
    for (int r = 0; r < j.size(); ++r)
      for (int c = 0; c < j.size(); ++c) {
        const int pr = bit(j.index_parity(r)), pc = bit(j.index_parity(c));
        rhs += times(Sign::power(pr + px * (pr + pc)), sd * ji(r, c) * apply(xk, j(c, r)));
      }
    t.expect("jacobi_formula", apply(xk, sd) == rhs,
             [&] { return render(phi, "phi") + "; direction = " + direction_name(sig, k); });
    Jet sum(sig);
    for (int r = 0; r < sig.directions(); ++r) sum += partial(sd * ji(r, k), holomorphic_generator(sig, r));
    t.expect("jacobi_sum", sum.is_zero(),
             [&] { return render(phi, "phi") + "; direction = " + direction_name(sig, k) + "; residual = " + render(sum); });
  }
}

void bv_flat(Trial& t) {
  const auto& sig = t.chart.sig;
  BerSection w{t.chart, random_unit(sig, t.rng)};
  DeltaOperator d = delta_table(w);
  BerConnection a = bv_connection(d);
  t.expect("flatness", is_flat(curvature_ber(a, true)), [&] { return "omega = " + render(w); });

  BerSection other{t.chart, random_unit(sig, t.rng)};
  auto cov = covariant_derivative(a, other);
  auto res = delta_formula_residual(other, d);
  bool same = true;
  for (std::size_t k = 0; k < cov.size(); ++k) same = same && cov[k] == -res[k];
  for (const auto& v : covariant_derivative(a, w)) same = same && v.is_zero();
  t.expect("parallel_equivalence", same, [&] { return "omega = " + render(w) + "; section = " + render(other); });

  Jet h = solve_delta_formula(d);
  DeltaOperator back = delta_table(BerSection{t.chart, h});
  t.expect("delta_round_trip", h.body() == GaussianRational(1) && back.table == d.table,
           [&] { return "omega = " + render(w) + "; solved = " + render(h); });
  Jet f = w.coefficient * invert(h);
  t.expect("constant_ambiguity", f == Jet(sig, f.body()),
           [&] { return "omega = " + render(w) + "; ratio = " + render(f); });

  auto phi = t.morphism();
  BerSection wy{t.target(), w.coefficient};
  DeltaOperator dy = delta_table(wy);
  t.expect("bv_covariance", transform_ber_connection(phi, bv_connection(dy)) == bv_connection(transport_delta(phi, dy)),
           [&] { return render(phi, "phi") + "; omega = " + render(wy); });
  Christoffel g = random_christoffel(t.target(), t.rng);
  t.expect("ber_covariance",
           transform_ber_connection(phi, ber_from_tangent(g)) == ber_from_tangent(transform_christoffel(phi, g)),
           [&] { return render(phi, "phi") + "; " + render(g); });
}

void sdet_transport(Trial& t) {
  const Scenario& s = t.scenario;
  std::vector<std::pair<const Christoffel*, const FormalPath*>> given;
  for (const auto& [cn, g] : s.connections)
    for (const auto& [pn, p] : s.paths) given.emplace_back(&g, &p);
  CheckReport rep;
  std::string inputs;
  if (static_cast<std::size_t>(t.index) < given.size()) {
    const auto& [g, p] = given[static_cast<std::size_t>(t.index)];
    rep = check_sdet_transport(*g, *p);
    inputs = render(*g);
  } else {
    Christoffel g = random_christoffel(t.chart, t.rng);
    FormalPath path = random_path(t.chart, t.rng, t.index % 3, s.order);
    rep = check_sdet_transport(g, path);
    inputs = render(g) + "; aux odd = " + std::to_string(t.index % 3);
  }
  t.expect("sdet_transport", rep.passed, [&] { return inputs + "; " + rep.detail; });
}

void cy_consistency(Trial& t) {
  auto cy = random_cy_pair(t.chart, t.rng);
  auto rep = check_cy_consistency(cy.h, cy.gamma);
  t.expect("cy_connections", rep.passed,
           [&] { return "h = " + render(cy.h) + "; " + render(cy.gamma) + "; " + rep.detail; });
  cy.gamma(0, 0, 0) += Jet(t.chart.sig, 1);
  bool rejected = false;
  try {
    (void)check_cy_consistency(cy.h, cy.gamma);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  t.expect("constraint_enforced", rejected, [&] { return "h = " + render(cy.h) + "; " + render(cy.gamma); });
}

void schouten_symmetry(Trial& t) {
  auto a = draw(t.chart, t.rng, 2, 1), b = draw(t.chart, t.rng, 2, 1);
  const int pa = bit(a.deg.parity), pb = bit(b.deg.parity);
  const Sign sym = -Sign::power((a.deg.cohom + 1) * (b.deg.cohom + 1) + pa * pb);
  t.expect("symmetry", schouten(a.form, b.form) == times(sym, schouten(b.form, a.form)),
           [&] { return pair_text(a.form, b.form); });

  const auto& sig = t.chart.sig;
  const Parity pv = parity_of(t.rng.uniform(0, 1)), pw = parity_of(t.rng.uniform(0, 1));
  auto v = random_mvform(t.chart, t.rng, 1, 0, pv), w = random_mvform(t.chart, t.rng, 1, 0, pw);
  Jet f = random_jet(sig, t.rng, std::nullopt);
  VectorField fv = to_field(v), fw = to_field(w);
  Jet lhs = apply(to_field(schouten(v, w)), f);
  Jet rhs = apply(fv, apply(fw, f));
  Jet other = apply(fw, apply(fv, f));
  rhs = (bit(pv) && bit(pw)) ? rhs + other : rhs - other;
  t.expect("vector_bracket", lhs == rhs, [&] { return "v = " + render(v) + "; w = " + render(w) + "; f = " + render(f); });
}

void schouten_derivation(Trial& t) {
  auto a = draw(t.chart, t.rng, 2, 1), b = draw(t.chart, t.rng, 2, 1), g = draw(t.chart, t.rng, 1, 1);
  const int pa = bit(a.deg.parity), pb = bit(b.deg.parity);
  const Sign der = Sign::power((a.deg.cohom + 1) * b.deg.cohom + pa * pb);
  t.expect("derivation",
           schouten(a.form, wedge(b.form, g.form)) ==
               wedge(schouten(a.form, b.form), g.form) + times(der, wedge(b.form, schouten(a.form, g.form))),
           [&] { return pair_text(a.form, b.form) + "; gamma = " + render(g.form); });
}

void delta_projection(Trial& t) {
  const auto& sig = t.chart.sig;
  if (sig.n < 1) throw PreconditionError("the barred contraction needs an even direction");
  BerSection w{t.chart, random_unit(sig, t.rng)};
  std::vector<MultiVectorForm> samples;
  for (int i = 0; i < 3; ++i) samples.push_back(draw(t.chart, t.rng, 2, 1).form);
  const int k = t.rng.uniform(0, sig.n - 1);
  GaussianRational c = random_scalar(t.rng);
  if (c.is_zero()) c = GaussianRational(1);
  SectionOperator delta = as_operator(delta_table(w));
  SectionOperator perturbed = [&](const MultiVectorForm& a) { return delta(a) + barred_contraction(a, k, c); };
  auto text = [&] {
    return "omega = " + render(w) + "; contraction direction = " + direction_name(sig, k) + "; coefficient = " + render(c);
  };
  t.expect("perturbation_not_strong", !perturbed(MultiVectorForm::barred_form(t.chart, k)).is_zero(), text);
  for (const auto& r : check_bv_axioms(perturbed, samples))
    if (r.check == "compatibility") t.expect("perturbation_compatible", r.passed, [&] { return text() + "; " + r.counterexample; });

  auto proj = project_strong(perturbed, t.chart);
  const auto base = delta_table(w);
  bool strong = proj.table.table == base.table;
  for (const auto& a : samples) strong = strong && proj.literal(a) == extend_delta(proj.table, a);
  t.expect("strongly_compatible", strong, text);
  for (const auto& a : samples)
    t.expect("square_zero", proj.literal(proj.literal(a)).is_zero(), [&] { return text() + "; alpha = " + render(a); });
}

void manin_comparison(Trial& t) {
  IntegralForm s{draw(t.chart, t.rng, 3, 0).form};
  auto text = [&] { return "sigma = " + render(s); };
  t.expect("round_trip", manin_gamma_inverse(manin_gamma(s)) == s, text);
  t.expect("intertwining", manin_delta(manin_gamma(s)) == ManinForm{-manin_gamma(partial_int(s)).body}, text);
  t.expect("square_zero", manin_delta(manin_delta(manin_gamma(s))).body.is_zero(), text);
}

void covariance(Trial& t) {
  Morphism phi = t.morphism();
  if (static_cast<std::size_t>(t.index) < t.scenario.maps.size()) {
    phi = std::next(t.scenario.maps.begin(), t.index)->second;
    phi.source = t.source();
    phi.target = t.target();
  }
  auto a = draw(t.target(), t.rng, 2, 1), b = draw(t.target(), t.rng, 1, 1);
  auto pa = pull_mvform(phi, a.form), pb = pull_mvform(phi, b.form);
  auto text = [&] { return render(phi, "phi") + "; " + pair_text(a.form, b.form); };
  t.expect("wedge", pull_mvform(phi, wedge(a.form, b.form)) == wedge(pa, pb), text);
  t.expect("dbar", pull_mvform(phi, dbar(a.form)) == dbar(pa), text);
  t.expect("bracket_equivariance", pull_mvform(phi, schouten(a.form, b.form)) == schouten(pa, pb), text);
  BerSection w{t.target(), random_unit(t.chart.sig, t.rng)};
  t.expect("delta_covariance", pull_mvform(phi, delta_omega(w, a.form)) == delta_omega(pull_ber(phi, w), pa),
           [&] { return text() + "; omega = " + render(w); });
}

void parser_round_trip(Trial& t) {
  const auto& sig = t.chart.sig;
  for (int i = 0; i < 2; ++i) {
    Jet f = random_jet(sig, t.rng, i ? std::optional<Parity>() : parity_of(t.rng.uniform(0, 1)));
    if (t.rng.chance(1, 3)) f = f.truncated(t.rng.uniform(0, sig.cap - 1));
    const std::string text = render(f);
    bool ok = false;
    try {
      ok = parse_jet(sig, text).identical(f);
    } catch (const std::exception&) {
    }
    t.expect("jet", ok, [&] { return "value = " + text; });

    auto a = draw(t.chart, t.rng, 2, 2).form;
    const std::string atext = render(a);
    ok = false;
    try {
      ok = parse_mvform(t.chart, atext) == a;
    } catch (const std::exception&) {
    }
    t.expect("mvform", ok, [&] { return "value = " + atext; });

    BerSection w{t.chart, random_unit(sig, t.rng, t.rng.chance(1, 2))};
    const std::string wtext = render(w);
    ok = false;
    try {
      ok = parse_ber(t.chart, wtext).coefficient.identical(w.coefficient);
    } catch (const std::exception&) {
    }
    t.expect("ber", ok, [&] { return "value = " + wtext; });

    Morphism phi = random_morphism(t.chart, t.chart, t.rng);
    const std::string mtext = render(phi, "phi");
    ok = false;
    try {
      Morphism back = parse_map(t.chart, mtext);
      ok = back.images.size() == phi.images.size();
      for (std::size_t k = 0; ok && k < phi.images.size(); ++k) ok = back.images[k].identical(phi.images[k]);
    } catch (const std::exception&) {
    }
    t.expect("map", ok, [&] { return "value = " + mtext; });
  }
}

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites{
      {"tian_todorov", "Tian-Todorov identity: the Schouten bracket measures the failure of Delta^omega to be a derivation",
       {"identity"}, tian_todorov},
      {"gbv_compat", "Delta^omega makes the sections a strongly compatible dGBV superalgebra",
       {"derivation", "compatibility", "square_zero", "dbar_anticommutes", "bracket_identity"}, gbv_compat},
      {"partial_dbar", "the operator on integral forms squares to zero, anticommutes with dbar and is chart independent",
       {"partial_squared", "partial_dbar", "partial_covariance"}, partial_dbar},
      {"negative_control", "dropping the (-1)^q factor breaks the anticommutation with dbar",
       {"partial_dbar_unsigned"}, negative_control},
      {"jacobi_sum", "Berezinian multiplicativity, supertranspose invariance, Jacobi formula and divergence of the cofactors",
       {"sdet_multiplicative", "sdet_supertranspose", "jacobi_formula", "jacobi_sum"}, jacobi_sum},
      {"bv_flat", "the connection of a BV operator on the Berezinian is flat; parallel sections solve the local formula",
       {"flatness", "parallel_equivalence", "delta_round_trip", "constant_ambiguity", "bv_covariance", "ber_covariance"},
       bv_flat},
      {"sdet_transport", "parallel transport on the Berezinian is the inverse superdeterminant of tangent transport",
       {"sdet_transport"}, sdet_transport},
      {"cy_consistency", "a Calabi-Yau volume form is parallel for the Berezinian connection induced by a tangent connection",
       {"cy_connections", "constraint_enforced"}, cy_consistency},
      {"schouten_symmetry", "graded symmetry of the Schouten-Nijenhuis bracket and agreement with the vector field bracket",
       {"symmetry", "vector_bracket"}, schouten_symmetry},
      {"schouten_derivation", "the Schouten-Nijenhuis bracket is a graded derivation of the wedge product",
       {"derivation"}, schouten_derivation},
      {"delta_projection", "projecting a compatible operator to bidegree (p-1, q) yields a strongly compatible BV operator",
       {"perturbation_not_strong", "perturbation_compatible", "strongly_compatible", "square_zero"}, delta_projection},
      {"manin_comparison", "the Manin isomorphism intertwines the operator on integral forms with delta up to sign",
       {"round_trip", "intertwining", "square_zero"}, manin_comparison},
      {"covariance", "wedge, dbar, bracket and Delta^omega commute with holomorphic coordinate changes",
       {"wedge", "dbar", "bracket_equivariance", "delta_covariance"}, covariance},
      {"parser_round_trip", "rendered values parse back to the same value", {"jet", "mvform", "ber", "map"},
       parser_round_trip},
  };
  return suites;
}

const Suite& find_suite(std::string_view name) {
  for (const auto& s : registry())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

struct TrialResult {
  std::map<std::string, std::string> failures;
  std::string error;
  double ms = 0;
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::vector<std::string> default_suites() {
  std::vector<std::string> out;
  for (const auto& n : suite_names())
    if (n != "negative_control") out.push_back(n);
  return out;
}

bool is_suite(std::string_view name) {
  return std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::vector<std::string> suite_checks(std::string_view name) { return find_suite(name).checks; }

bool Report::passed() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.status == CheckStatus::pass; });
}

int Report::exit_code() const {
  int code = 0;
  for (const auto& r : records) {
    if (r.status == CheckStatus::error) return 2;
    if (r.status == CheckStatus::fail) code = 1;
  }
  return code;
}

Report run_suites(const Scenario& s, Execution mode) {
  std::vector<const Suite*> selected;
  for (const auto& n : s.suites) selected.push_back(&find_suite(n));
  const int trials = std::max(0, s.trials);
  const int tasks = static_cast<int>(selected.size()) * trials;
  auto results = run_indexed(
      tasks,
      [&](int i) {
        const Suite& suite = *selected[static_cast<std::size_t>(i / trials)];
        const int index = i % trials;
        const auto start = std::chrono::steady_clock::now();
        Trial t(s, derive_seed(s.seed, hash_name(suite.name.c_str()), static_cast<std::uint64_t>(index)), index);
        TrialResult out;
        try {
          suite.run(t);
          out.failures = std::move(t.failures);
        } catch (const std::exception& e) {
          out.error = "trial " + std::to_string(index) + ": " + e.what();
        }
        out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
      },
      mode);

  Report r;
  r.seed = s.seed;
  r.sig = s.sig;
  for (std::size_t si = 0; si < selected.size(); ++si) {
    const Suite& suite = *selected[si];
    double ms = 0;
    for (int i = 0; i < trials; ++i) ms += results[si * static_cast<std::size_t>(trials) + static_cast<std::size_t>(i)].ms;
    for (const auto& check : suite.checks) {
      CheckRecord rec{suite.name, check, suite.anchor, trials, CheckStatus::pass, {}, {}, ms};
      for (int i = 0; i < trials; ++i) {
        const auto& tr = results[si * static_cast<std::size_t>(trials) + static_cast<std::size_t>(i)];
        if (!tr.error.empty()) {
          rec.status = CheckStatus::error;
          rec.error = tr.error;
          rec.counterexample.clear();
          break;
        }
        if (auto it = tr.failures.find(check); it != tr.failures.end() && rec.status == CheckStatus::pass) {
          rec.status = CheckStatus::fail;
          rec.counterexample = it->second;
        }
      }
      r.records.push_back(std::move(rec));
    }
  }
  return r;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::error: return "error";
  }
  return "error";
}

nlohmann::ordered_json to_json(const Report& r, bool timing) {
  nlohmann::ordered_json out;
  out["seed"] = r.seed;
  out["signature"] = {{"n", r.sig.n}, {"m", r.sig.m}, {"cap", r.sig.cap}};
  out["passed"] = r.passed();
  auto& recs = out["records"] = nlohmann::ordered_json::array();
  for (const auto& c : r.records) {
    nlohmann::ordered_json j;
    j["suite"] = c.suite;
    j["check"] = c.check;
    j["anchor"] = c.anchor;
    j["trials"] = c.trials;
    j["status"] = to_string(c.status);
    if (c.status == CheckStatus::fail) j["counterexample"] = c.counterexample;
    if (c.status == CheckStatus::error) j["error"] = c.error;
    if (timing) j["elapsed_ms"] = c.elapsed_ms;
    recs.push_back(std::move(j));
  }
  return out;
}

std::string determinism_hash(const Report& r) {
  const std::string text = to_json(r, false).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string summary(const Report& r) {
  std::ostringstream os;
  int pass = 0, fail = 0, err = 0;
  for (const auto& c : r.records) {
    os << to_string(c.status) << "  " << c.suite << "/" << c.check << " (" << c.trials << " trials)";
    if (c.status == CheckStatus::fail) os << "\n      " << c.counterexample;
    if (c.status == CheckStatus::error) os << "\n      " << c.error;
    os << "\n";
    (c.status == CheckStatus::pass ? pass : c.status == CheckStatus::fail ? fail : err)++;
  }
  os << pass << " passed, " << fail << " failed, " << err << " errors; hash " << determinism_hash(r) << "\n";
  return os.str();
}

}  // namespace sbv

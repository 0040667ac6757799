#include "superbv/bvcalc.hpp"

#include <set>
#include <utility>

#include "superbv/errors.hpp"

namespace sbv {

namespace {

Jet with_sign(const Jet& f, Sign s) { return s.negative() ? -f : f; }
MultiVectorForm with_sign(const MultiVectorForm& a, Sign s) { return s.negative() ? -a : a; }

bool skip_part(const Jet& whole, Parity p, const Jet& part) {
  if (!part.is_zero()) return false;
  return !whole.is_zero() || p == Parity::odd;
}

std::vector<int> expand(const std::array<std::uint8_t, kMaxDirections>& a, const RingSignature& sig) {
  std::vector<int> out;
  for (int k = 0; k < sig.directions(); ++k)
    for (int c = 0; c < a[static_cast<std::size_t>(k)]; ++c) out.push_back(k);
  return out;
}

Parity vec_parity(const MVKey& key, const RingSignature& sig) {
  int odd = 0;
  for (int k = sig.n; k < sig.directions(); ++k) odd += key.vec[static_cast<std::size_t>(k)];
  return parity_of(odd);
}

const Jet& trivializing(const BerSection& omega) {
  const Jet& h = omega.coefficient;
  if (h.parity() != Parity::even) throw ParityError("trivializing section: coefficient must be even");
  if (!h.has_unit_body()) throw NotAUnit("trivializing section: coefficient is not a unit");
  return h;
}

MultiVectorForm fn(const Chart& c, const Jet& f) { return MultiVectorForm::function(c, f); }

}  // namespace

IntegralForm eta(const BerSection& omega, const MultiVectorForm& a) {
  if (!(omega.chart == a.chart())) throw SignatureMismatch("eta: section and form on different charts");
  return IntegralForm{wedge(a, fn(a.chart(), trivializing(omega)))};
}

MultiVectorForm eta_inverse(const BerSection& omega, const IntegralForm& s) {
  if (!(omega.chart == s.chart())) throw SignatureMismatch("eta: section and form on different charts");
  return wedge(s.body, fn(s.chart(), invert(trivializing(omega))));
}

IntegralForm partial_int(const IntegralForm& s, bool q_sign) {
  const auto& sig = s.body.signature();
  MultiVectorForm r = MultiVectorForm(s.chart()).truncated(s.body.precision_floor());
  for (const auto& [key, c] : s.body.terms()) {
    const auto js = expand(key.vec, sig);
    if (js.empty()) continue;
    const int pj = bit(vec_parity(key, sig));
    const Sign qs = Sign::power(q_sign ? key.q() : 0);
    for (Parity pc : {Parity::even, Parity::odd}) {
      Jet part = c.part(pc);
      if (skip_part(c, pc, part)) continue;
      // d_J c = (-1)^{|c||J|} c d_J
      const Jet f = with_sign(part, Sign::power(bit(pc) * pj));
      int before = 0;
      for (std::size_t i = 0; i < js.size(); ++i) {
        const int k = js[i];
        const int pk = bit(sig.direction_parity(k));
        const Sign mi = Sign::power(static_cast<long>(i) + pk * (before + bit(pc)));
        Jet g = partial(f, holomorphic_generator(sig, k));
        MVKey out = key;
        --out.vec[static_cast<std::size_t>(k)];
        // g d_J' = (-1)^{|g||J'|} d_J' g
        const int pg = bit(pc) + pk, pjr = pj + pk;
        r.add_term(out, with_sign(g, qs * mi * Sign::power(pg * pjr)));
        before += pk;
      }
    }
  }
  return IntegralForm{std::move(r)};
}

IntegralForm dbar(const IntegralForm& s) { return IntegralForm{dbar(s.body)}; }

IntegralForm pull_integral(const Morphism& phi, const IntegralForm& s) {
  Jet ber = sdet(differential(phi));
  return IntegralForm{wedge(pull_mvform(phi, s.body), fn(phi.source, ber))};
}

std::string render(const IntegralForm& s) {
  const auto& terms = s.body.terms();
  bool pure = true;
  for (const auto& [key, c] : terms)
    if (!c.is_zero() && (key.p() || key.q())) pure = false;
  if (pure) return "(" + render(s.body.coefficient(MVKey{})) + ") [dxi]";
  return "(" + render(s.body) + ") [dxi]";
}

MultiVectorForm delta_omega(const BerSection& omega, const MultiVectorForm& a) {
  if (!omega.coefficient.is_holomorphic()) throw PreconditionError("delta_omega: coefficient must be holomorphic");
  return eta_inverse(omega, partial_int(eta(omega, a)));
}

DeltaOperator delta_table(const BerSection& omega) {
  const Jet& h = trivializing(omega);
  const auto& sig = omega.chart.sig;
  DeltaOperator d{omega.chart, {}};
  Jet hinv = invert(h);
  for (int k = 0; k < sig.directions(); ++k) d.table.push_back(partial(h, holomorphic_generator(sig, k)) * hinv);
  return d;
}

namespace {

struct Factors {
  std::vector<MultiVectorForm> gens;
  std::vector<MultiVectorForm> base;  // Delta on each generator
};

Factors factors_of(const DeltaOperator& d, const MVKey& key) {
  const auto& sig = d.chart.sig;
  Factors f;
  for (int k : expand(key.bar, sig)) {
    f.gens.push_back(MultiVectorForm::barred_form(d.chart, k));
    f.base.push_back(MultiVectorForm(d.chart));
  }
  for (int k : expand(key.vec, sig)) {
    f.gens.push_back(MultiVectorForm::vector(d.chart, k));
    f.base.push_back(fn(d.chart, d.table[static_cast<std::size_t>(k)]));
  }
  return f;
}

// Delta(x R) = -(-1)^{deg x}[[x,R]] + Delta(x) R + (-1)^{deg x} x Delta(R)
MultiVectorForm compat_step(const MultiVectorForm& x, int deg_x, const MultiVectorForm& dx, const MultiVectorForm& r,
                            const MultiVectorForm& dr) {
  const Sign s = Sign::power(deg_x);
  return with_sign(schouten(x, r), -s) + wedge(dx, r) + with_sign(wedge(x, dr), s);
}

}  // namespace

MultiVectorForm extend_delta(const DeltaOperator& d, const MultiVectorForm& a, Peel order) {
  if (!(d.chart == a.chart())) throw SignatureMismatch("extend_delta: operator and section on different charts");
  const Chart& chart = a.chart();
  MultiVectorForm out = MultiVectorForm(chart).truncated(a.precision_floor());
  for (const auto& [key, c] : a.terms()) {
    Factors f = factors_of(d, key);
    const MultiVectorForm coef = fn(chart, c);
    const MultiVectorForm none(chart);
    const std::size_t r = f.gens.size();
    if (order == Peel::left) {
      // suffix[i] = x_i ... x_{r-1} c
      std::vector<MultiVectorForm> suffix(r + 1, coef);
      for (std::size_t i = r; i-- > 0;) suffix[i] = wedge(f.gens[i], suffix[i + 1]);
      MultiVectorForm acc = none;  // Delta of the function
      for (std::size_t i = r; i-- > 0;) acc = compat_step(f.gens[i], 1, f.base[i], suffix[i + 1], acc);
      out += acc;
    } else {
      // Delta(L c) = -(-1)^{deg L}[[L, c]] + Delta(L) c, L peeled from the right
      MultiVectorForm prefix = fn(chart, Jet(chart.sig, 1));
      MultiVectorForm dprefix = none;
      for (std::size_t i = 0; i < r; ++i) {
        const Sign s = Sign::power(static_cast<long>(i));
        MultiVectorForm next = with_sign(schouten(prefix, f.gens[i]), -s) + wedge(dprefix, f.gens[i]) +
                               with_sign(wedge(prefix, f.base[i]), s);
        prefix = wedge(prefix, f.gens[i]);
        dprefix = std::move(next);
      }
      out += with_sign(schouten(prefix, coef), -Sign::power(static_cast<long>(r))) + wedge(dprefix, coef);
    }
  }
  return out;
}

SectionOperator as_operator(const DeltaOperator& d, Peel order) {
  return [d, order](const MultiVectorForm& a) { return extend_delta(d, a, order); };
}

MultiVectorForm barred_contraction(const MultiVectorForm& a, int k, const GaussianRational& c) {
  const auto& sig = a.signature();
  if (k < 0 || k >= sig.n) throw PreconditionError("barred_contraction: direction must be even");
  MultiVectorForm r = MultiVectorForm(a.chart()).truncated(a.precision_floor());
  for (const auto& [key, f] : a.terms()) {
    if (!key.bar[static_cast<std::size_t>(k)]) continue;
    int before = 0;
    for (int l = 0; l < k; ++l) before += key.bar[static_cast<std::size_t>(l)];
    MVKey out = key;
    --out.bar[static_cast<std::size_t>(k)];
    r.add_term(out, with_sign(f * c, Sign::power(before)));
  }
  return r;
}

MultiVectorForm project_apply(const SectionOperator& general, const MultiVectorForm& a) {
  std::set<std::pair<int, int>> grades;
  for (const auto& [key, c] : a.terms()) grades.insert({key.p(), key.q()});
  MultiVectorForm out = MultiVectorForm(a.chart()).truncated(a.precision_floor());
  for (const auto& [p, q] : grades) {
    if (p == 0) continue;
    out += general(a.component(p, q)).component(p - 1, q);
  }
  return out;
}

StrongProjection project_strong(const SectionOperator& general, const Chart& chart) {
  DeltaOperator d{chart, {}};
  for (int k = 0; k < chart.sig.directions(); ++k)
    d.table.push_back(general(MultiVectorForm::vector(chart, k)).coefficient(MVKey{}));
  return {std::move(d), [general](const MultiVectorForm& a) { return project_apply(general, a); }};
}

std::vector<AxiomResult> check_bv_axioms(const SectionOperator& delta, std::span<const MultiVectorForm> samples) {
  std::vector<AxiomResult> res{{"derivation", true, {}},
                               {"compatibility", true, {}},
                               {"square_zero", true, {}},
                               {"dbar_anticommutes", true, {}},
                               {"bracket_identity", true, {}}};
  auto fail = [](AxiomResult& r, const std::string& inputs, const MultiVectorForm& residual) {
    if (!r.passed) return;
    r.passed = false;
    r.counterexample = inputs + "; residual = " + render(residual);
  };
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const MultiVectorForm& a = samples[i];
    const MultiVectorForm& b = samples[(i + 1) % n];
    const MultiVectorForm& g = samples[(i + 2) % n];
    const BiDegree da = degree_of(a), db = degree_of(b);
    const Sign sa = Sign::power(da.cohom);
    const MultiVectorForm delta_a = delta(a);
    auto delta_of = [&](const MultiVectorForm& x) {
      return with_sign(delta(wedge(a, x)), sa) - with_sign(wedge(delta_a, x), sa) - wedge(a, delta(x));
    };
    const std::string ab = "alpha = " + render(a) + "; beta = " + render(b);
    const MultiVectorForm dab = delta_of(b);

    MultiVectorForm r1 = delta_of(wedge(b, g)) - wedge(dab, g) -
                         with_sign(wedge(b, delta_of(g)),
                                   Sign::power((da.cohom + 1) * db.cohom + bit(da.parity) * bit(db.parity)));
    if (!r1.is_zero()) fail(res[0], ab + "; gamma = " + render(g), r1);

    MultiVectorForm r2 = schouten(a, b) + dab;
    if (!r2.is_zero()) fail(res[1], ab, r2);

    MultiVectorForm r3 = delta(delta_a);
    if (!r3.is_zero()) fail(res[2], "alpha = " + render(a), r3);

    MultiVectorForm r4 = dbar(delta_a) + delta(dbar(a));
    if (!r4.is_zero()) fail(res[3], "alpha = " + render(a), r4);

    MultiVectorForm r5 = -delta(schouten(a, b)) + schouten(delta_a, b) - with_sign(schouten(a, delta(b)), sa);
    if (!r5.is_zero()) fail(res[4], ab, r5);
  }
  return res;
}

}  // namespace sbv

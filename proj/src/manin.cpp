#include "superbv/bvcalc.hpp"
#include "superbv/errors.hpp"

namespace sbv {

namespace {

Jet with_sign(const Jet& f, Sign s) { return s.negative() ? -f : f; }

// Sign relating d_J c [d xi] to Gamma's image [d xi] c (x) pi_J for c of parity pc.
Sign gamma_sign(const RingSignature& sig, const MVKey& key, Parity pc) {
  const int m = sig.m % 2;
  const int c = bit(pc);
  int p = 0, pj = 0;
  long weighted = 0;
  std::vector<int> js;
  for (int k = 0; k < sig.directions(); ++k)
    for (int r = 0; r < key.vec[static_cast<std::size_t>(k)]; ++r) js.push_back(k);
  p = static_cast<int>(js.size());
  for (int i = 0; i < p; ++i) {
    const int pk = bit(sig.direction_parity(js[static_cast<std::size_t>(i)]));
    pj += pk;
    weighted += static_cast<long>(p - i) * pk;  // (p - i + 1) for 1-based i
  }
  // d_J c [dxi] = (-1)^{m(|c|+|J|) + |c||J|} [dxi] c d_J
  const long reorder = static_cast<long>(m) * (c + pj) + static_cast<long>(c) * pj;
  return Sign::power(reorder + static_cast<long>(p) * (m + c) + weighted);
}

template <class Out>
Out transform(const MultiVectorForm& in) {
  const auto& sig = in.signature();
  MultiVectorForm r = MultiVectorForm(in.chart()).truncated(in.precision_floor());
  for (const auto& [key, c] : in.terms()) {
    if (key.q() != 0) throw PreconditionError("Manin comparison: only (0,0)-form valued integral forms");
    for (Parity pc : {Parity::even, Parity::odd}) {
      Jet part = c.part(pc);
      if (part.is_zero() && (!c.is_zero() || pc == Parity::odd)) continue;
      r.add_term(key, with_sign(part, gamma_sign(sig, key, pc)));
    }
  }
  return Out{std::move(r)};
}

}  // namespace

ManinForm manin_gamma(const IntegralForm& s) { return transform<ManinForm>(s.body); }

IntegralForm manin_gamma_inverse(const ManinForm& t) { return transform<IntegralForm>(t.body); }

ManinForm manin_delta(const ManinForm& t) {
  const auto& sig = t.body.signature();
  const int m = sig.m % 2;
  MultiVectorForm r = MultiVectorForm(t.body.chart()).truncated(t.body.precision_floor());
  for (const auto& [key, f] : t.body.terms()) {
    for (Parity pf : {Parity::even, Parity::odd}) {
      Jet part = f.part(pf);
      if (part.is_zero() && (!f.is_zero() || pf == Parity::odd)) continue;
      int before = 0;  // parity of the pi's preceding pi_k
      for (int k = 0; k < sig.directions(); ++k) {
        const int count = key.vec[static_cast<std::size_t>(k)];
        const int pk = bit(sig.direction_parity(k));
        const int ppi = (pk + 1) % 2;
        if (count > 0) {
          // d/d pi_k first (left derivative past f and the earlier pi's), then d/d xi^k
          const Sign s = Sign::power(ppi * bit(pf) + ppi * before + 1 + m + pk);
          Jet g = partial(part, holomorphic_generator(sig, k)) * GaussianRational(ppi ? 1 : count);
          MVKey out = key;
          --out.vec[static_cast<std::size_t>(k)];
          r.add_term(out, with_sign(g, s));
        }
        before += count * ppi;
      }
    }
  }
  return ManinForm{std::move(r)};
}

std::string render(const ManinForm& t) {
  const auto& sig = t.body.signature();
  std::string out;
  for (const auto& [key, c] : t.body.terms()) {
    if (c.is_zero()) continue;
    std::string term = "[dxi]*(" + render(c) + ")";
    for (int k = 0; k < sig.directions(); ++k) {
      const int n = key.vec[static_cast<std::size_t>(k)];
      if (n) term += "*pi(" + direction_name(sig, k) + ")" + (n > 1 ? "^" + std::to_string(n) : "");
    }
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace sbv

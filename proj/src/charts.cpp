#include "superbv/charts.hpp"

#include "superbv/errors.hpp"

namespace sbv {

namespace {

void require_same(const RingSignature& a, const RingSignature& b, const char* what) {
  if (!(a == b)) throw SignatureMismatch(what);
}

}  // namespace

Morphism make_morphism(const Chart& source, const Chart& target, std::vector<Jet> images) {
  const auto& ts = target.sig;
  if (static_cast<int>(images.size()) != ts.directions())
    throw std::invalid_argument("morphism: one pullback per target coordinate required");
  for (int i = 0; i < ts.directions(); ++i) {
    require_same(images[static_cast<std::size_t>(i)].signature(), source.sig, "morphism: pullback ring mismatch");
    auto p = images[static_cast<std::size_t>(i)].parity();
    if (!images[static_cast<std::size_t>(i)].is_zero() && (!p || *p != ts.direction_parity(i)))
      throw ParityError("morphism: pullback parity differs from coordinate parity");
    if (!images[static_cast<std::size_t>(i)].body().is_zero())
      throw PreconditionError("morphism: pullbacks must vanish at the origin");
  }
  return Morphism{source, target, std::move(images)};
}

Morphism identity_morphism(const Chart& chart) {
  std::vector<Jet> images;
  for (int k = 0; k < chart.sig.directions(); ++k)
    images.push_back(Jet::generator(chart.sig, holomorphic_generator(chart.sig, k)));
  return Morphism{chart, chart, std::move(images)};
}

bool is_holomorphic(const Morphism& phi) {
  for (const auto& p : phi.images)
    if (!p.is_holomorphic()) return false;
  return true;
}

std::vector<Jet> slot_images(const Morphism& phi) {
  const auto& ts = phi.target.sig;
  std::vector<Jet> slots(static_cast<std::size_t>(slot_count(ts)), Jet(phi.source.sig));
  for (int k = 0; k < ts.directions(); ++k) {
    const Jet& p = phi.images[static_cast<std::size_t>(k)];
    slots[static_cast<std::size_t>(generator_slot(ts, holomorphic_generator(ts, k)))] = p;
    slots[static_cast<std::size_t>(generator_slot(ts, antiholomorphic_generator(ts, k)))] = conjugate(p);
  }
  return slots;
}

Jet pullback(const Morphism& phi, const Jet& g) {
  require_same(g.signature(), phi.target.sig, "pullback: function not on the target chart");
  auto slots = slot_images(phi);
  return substitute(g, slots, phi.source.sig);
}

SuperMatrix differential(const Morphism& phi) {
  const auto& ss = phi.source.sig;
  const auto& ts = phi.target.sig;
  if (ss.n != ts.n || ss.m != ts.m) throw SignatureMismatch("differential: dimensions differ");
  SuperMatrix d(ss, ts.n, ts.m);
  for (int i = 0; i < ts.directions(); ++i)
    for (int k = 0; k < ss.directions(); ++k) {
      Jet e = partial(phi.images[static_cast<std::size_t>(i)], holomorphic_generator(ss, k));
      const int pi = bit(ts.direction_parity(i)), pk = bit(ss.direction_parity(k));
      d(i, k) = Sign::power((pk + pi) * pi).negative() ? -e : e;
    }
  return d;
}

Morphism compose(const Morphism& psi, const Morphism& phi) {
  if (!(phi.target == psi.source)) throw SignatureMismatch("compose: target of phi is not the source of psi");
  std::vector<Jet> images;
  auto slots = slot_images(phi);
  for (const auto& q : psi.images) images.push_back(substitute(q, slots, phi.source.sig));
  return Morphism{phi.source, psi.target, std::move(images)};
}

Morphism invert_morphism(const Morphism& phi) {
  if (!is_holomorphic(phi)) throw PreconditionError("invert_morphism: map must be holomorphic");
  const auto& ss = phi.source.sig;
  const auto& ts = phi.target.sig;
  if (ss.n != ts.n || ss.m != ts.m) throw SignatureMismatch("invert_morphism: dimensions differ");
  const int n = ts.n, m = ts.m, dim = n + m;

  // linear part L and remainder N, P = L x + N(x)
  std::vector<Jet> lin_even(static_cast<std::size_t>(n * n), Jet(ss)), lin_odd(static_cast<std::size_t>(m * m), Jet(ss));
  std::vector<Jet> rest;
  for (int i = 0; i < dim; ++i) {
    Jet r = phi.images[static_cast<std::size_t>(i)];
    for (int j = 0; j < (i < n ? n : m); ++j) {
      Monomial mono;
      if (i < n) {
        mono.exps[static_cast<std::size_t>(j)] = 1;
        mono.degree = 1;
      } else {
        mono.odd = static_cast<std::uint16_t>(1u << j);
      }
      auto it = r.terms().find(mono);
      GaussianRational c = it == r.terms().end() ? GaussianRational() : it->second;
      if (i < n) lin_even[static_cast<std::size_t>(i * n + j)] = Jet(ss, c);
      else lin_odd[static_cast<std::size_t>((i - n) * m + j)] = Jet(ss, c);
      r.add_term(mono, -c);
    }
    rest.push_back(r);
  }
  auto inverse_constant = [&](const std::vector<Jet>& a, int k) {
    SuperMatrix mat(ss, k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) mat(i, j) = a[static_cast<std::size_t>(i * k + j)];
    if (even_determinant(a, k, ss).body().is_zero())
      throw PreconditionError("invert_morphism: linear part is not invertible");
    return inverse(mat);
  };
  SuperMatrix le = inverse_constant(lin_even, n), lo = inverse_constant(lin_odd, m);

  // Q = L^{-1}(y - N(Q)) in the target ring
  const RingSignature& ring = ts;
  std::vector<Jet> y;
  for (int k = 0; k < dim; ++k) y.push_back(Jet::generator(ring, holomorphic_generator(ring, k)));
  auto apply_linv = [&](const std::vector<Jet>& v) {
    std::vector<Jet> out(static_cast<std::size_t>(dim), Jet(ring));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(j)] * le(i, j).body();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out[static_cast<std::size_t>(n + i)] += v[static_cast<std::size_t>(n + j)] * lo(i, j).body();
    return out;
  };
  std::vector<Jet> q = apply_linv(y);
  const int guard = ring.cap + 2 * ring.m + 3;
  for (int it = 0; it <= guard; ++it) {
    Morphism trial{phi.target, phi.source, q};
    auto slots = slot_images(trial);
    std::vector<Jet> rhs;
    for (int i = 0; i < dim; ++i)
      rhs.push_back(y[static_cast<std::size_t>(i)] - substitute(rest[static_cast<std::size_t>(i)], slots, ring));
    std::vector<Jet> next = apply_linv(rhs);
    bool fixed = true;
    for (int i = 0; i < dim && fixed; ++i)
      fixed = next[static_cast<std::size_t>(i)].identical(q[static_cast<std::size_t>(i)]);
    if (fixed) return Morphism{phi.target, phi.source, std::move(q)};
    q = std::move(next);
  }
  throw PreconditionError("invert_morphism: fixpoint iteration did not converge");
}

VectorField VectorField::coordinate(const RingSignature& sig, int k) {
  VectorField x{sig, std::vector<Jet>(static_cast<std::size_t>(sig.directions()), Jet(sig))};
  x.coeffs[static_cast<std::size_t>(k)] = Jet(sig, 1);
  return x;
}

Jet apply(const VectorField& x, const Jet& g) {
  Jet r(g.signature());
  for (int k = 0; k < x.sig.directions(); ++k) {
    const Jet& c = x.coeffs[static_cast<std::size_t>(k)];
    Jet d = partial(g, holomorphic_generator(x.sig, k));
    if (x.sig.direction_parity(k) == Parity::odd) {
      r += c.part(Parity::even) * d;
      r -= c.part(Parity::odd) * d;
    } else {
      r += c * d;
    }
  }
  return r;
}

VectorField pull_vector(const Morphism& phi, const VectorField& x) {
  SuperMatrix jinv = inverse(differential(phi));
  const auto& ss = phi.source.sig;
  VectorField out{ss, std::vector<Jet>(static_cast<std::size_t>(ss.directions()), Jet(ss))};
  std::vector<Jet> pulled;
  for (const auto& c : x.coeffs) pulled.push_back(pullback(phi, c));
  for (int m = 0; m < ss.directions(); ++m)
    for (int k = 0; k < ss.directions(); ++k)
      out.coeffs[static_cast<std::size_t>(m)] += jinv(m, k) * pulled[static_cast<std::size_t>(k)];
  return out;
}

Covector exterior_derivative(const Jet& f) {
  const auto& sig = f.signature();
  Covector w{sig, {}};
  for (int m = 0; m < sig.directions(); ++m) w.coeffs.push_back(partial(f, holomorphic_generator(sig, m)));
  return w;
}

Covector pull_covector(const Morphism& phi, const Covector& w) {
  SuperMatrix jst = supertranspose(differential(phi));
  const auto& ss = phi.source.sig;
  Covector out{ss, std::vector<Jet>(static_cast<std::size_t>(ss.directions()), Jet(ss))};
  std::vector<Jet> pulled;
  for (const auto& c : w.coeffs) pulled.push_back(pullback(phi, c));
  for (int m = 0; m < ss.directions(); ++m)
    for (int j = 0; j < ss.directions(); ++j)
      out.coeffs[static_cast<std::size_t>(m)] += jst(m, j) * pulled[static_cast<std::size_t>(j)];
  return out;
}

Jet pair(const Covector& w, const VectorField& x) {
  require_same(w.sig, x.sig, "pair: different charts");
  Jet r(w.sig);
  for (int k = 0; k < w.sig.directions(); ++k) {
    const Jet& a = w.coeffs[static_cast<std::size_t>(k)];
    const Jet& b = x.coeffs[static_cast<std::size_t>(k)];
    if (w.sig.direction_parity(k) == Parity::odd) {
      // (-1)^{|a| + 1}
      r -= a.part(Parity::even) * b;
      r += a.part(Parity::odd) * b;
    } else {
      r += a * b;
    }
  }
  return r;
}

Parity BerSection::parity() const {
  auto p = coefficient.parity();
  if (!p) throw ParityError("Berezinian section is inhomogeneous");
  return *p + parity_of(chart.sig.m);
}

BerSection pull_ber(const Morphism& phi, const BerSection& s) {
  if (!(s.chart == phi.target)) throw SignatureMismatch("pull_ber: section not on the target chart");
  return BerSection{phi.source, pullback(phi, s.coefficient) * sdet(differential(phi))};
}

std::string render(const BerSection& s) { return "(" + render(s.coefficient) + ") [dxi]"; }

std::string render(const Morphism& phi, const std::string& name) {
  std::string out = "map " + name + " {";
  for (std::size_t i = 0; i < phi.images.size(); ++i)
    out += " zeta" + std::to_string(i + 1) + " = " + render(phi.images[i]) + ";";
  return out + " }";
}

}  // namespace sbv

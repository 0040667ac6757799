#include "superbv/connect.hpp"

#include <bit>

#include "superbv/errors.hpp"

namespace sbv {

namespace {

Jet with_sign(const Jet& f, Sign s) { return s.negative() ? -f : f; }
int dir_bit(const RingSignature& sig, int k) { return bit(sig.direction_parity(k)); }
std::size_t at(int i) { return static_cast<std::size_t>(i); }

void require_holomorphic(const Jet& f, const char* what) {
  if (!f.is_holomorphic()) throw PreconditionError(std::string(what) + ": data must be holomorphic");
}

// Left coefficients N(k, m) of phi_* d_{xi^k} = sum_m N(k, m) d_{zeta^m}.
SuperMatrix frame_matrix(const Morphism& phi) {
  const auto& ss = phi.source.sig;
  const auto& ts = phi.target.sig;
  SuperMatrix n(ss, ss.n, ss.m);
  for (int k = 0; k < ts.directions(); ++k) {
    VectorField x = pull_vector(phi, VectorField::coordinate(ts, k));
    for (int m = 0; m < ss.directions(); ++m)
      n(k, m) = with_sign(x.coeffs[at(m)], Sign::power((dir_bit(ss, m) + dir_bit(ts, k)) * dir_bit(ss, m)));
  }
  return n;
}

}  // namespace

Christoffel::Christoffel(const Chart& chart)
    : chart_(chart), g_(static_cast<std::size_t>(size() * size() * size()), Jet(chart.sig)) {}

Parity Christoffel::expected_parity(int q, int k, int l) const {
  const auto& s = chart_.sig;
  return s.direction_parity(q) + s.direction_parity(k) + s.direction_parity(l);
}

Jet Christoffel::right(int q, int k, int l) const {
  return with_sign((*this)(q, k, l), Sign::power(dir_bit(chart_.sig, q) * bit(expected_parity(q, k, l))));
}

void Christoffel::validate() const {
  for (int q = 0; q < size(); ++q)
    for (int k = 0; k < size(); ++k)
      for (int l = 0; l < size(); ++l) {
        const Jet& g = (*this)(q, k, l);
        if (g.is_zero()) continue;
        if (g.parity() != expected_parity(q, k, l)) throw ParityError("Christoffel symbol of wrong parity");
      }
}

bool Christoffel::is_holomorphic() const {
  for (const auto& g : g_)
    if (!g.is_holomorphic()) return false;
  return true;
}

BerConnection bv_connection(const DeltaOperator& d) {
  BerConnection c{d.chart, {}, {}};
  for (const auto& v : d.table) c.a.push_back(-v);
  return c;
}

BerConnection ber_from_tangent(const Christoffel& g) {
  g.validate();
  const auto& sig = g.chart().sig;
  BerConnection c{g.chart(), {}, {}};
  for (int l = 0; l < g.size(); ++l) {
    SuperMatrix m(sig, sig.n, sig.m);
    for (int q = 0; q < g.size(); ++q)
      for (int k = 0; k < g.size(); ++k) m(q, k) = g.right(q, l, k);
    c.a.push_back(-str(m));
  }
  return c;
}

Christoffel transform_christoffel(const Morphism& phi, const Christoffel& g) {
  if (!(g.chart() == phi.target)) throw SignatureMismatch("transform_christoffel: connection not on the target chart");
  g.validate();
  // The transformation law expresses the symbols of the old chart through the new ones; it is
  // applied to psi = phi^{-1}, for which the roles are exchanged, and pulled back along phi.
  const Morphism psi = invert_morphism(phi);
  const SuperMatrix dpsi = differential(psi);
  const SuperMatrix dpsi_inv = inverse(dpsi);
  const auto& xs = psi.source.sig;  // xi
  const auto& zs = psi.target.sig;  // zeta
  const int nx = xs.directions(), nz = zs.directions();

  std::vector<std::vector<Jet>> d_inv(at(nx));  // d_{xi^m} (dpsi^{-1})^q_l at [m][q * nz + l]
  for (int m = 0; m < nx; ++m)
    for (int q = 0; q < nx; ++q)
      for (int l = 0; l < nz; ++l) d_inv[at(m)].push_back(partial(dpsi_inv(q, l), holomorphic_generator(xs, m)));

  Christoffel out(phi.source);
  for (int p = 0; p < nz; ++p)
    for (int k = 0; k < nz; ++k)
      for (int l = 0; l < nz; ++l) {
        Jet acc(xs);
        for (int m = 0; m < nx; ++m)
          for (int q = 0; q < nx; ++q) {
            const int bm = dir_bit(xs, m), bq = dir_bit(xs, q);
            const int bk = dir_bit(zs, k), bl = dir_bit(zs, l), bp = dir_bit(zs, p);
            Jet inner = with_sign(d_inv[at(m)][at(q * nz + l)], Sign::power(bq));
            for (int n = 0; n < nx; ++n)
              inner += with_sign(g(q, m, n) * dpsi_inv(n, l), Sign::power(bq * dir_bit(xs, n)));
            const Sign s = Sign::power(bm * (bm + bk) + bq * bl + bp * (bp + bq));
            acc += with_sign(dpsi_inv(m, k) * inner * dpsi(p, q), s);
          }
        out(p, k, l) = pullback(phi, acc);
      }
  return out;
}

BerConnection transform_ber_connection(const Morphism& phi, const BerConnection& c) {
  if (!(c.chart == phi.target)) throw SignatureMismatch("transform_ber_connection: connection not on the target chart");
  const auto& ss = phi.source.sig;
  const auto& ts = phi.target.sig;
  const Jet s = sdet(differential(phi));
  const Jet s_inv = invert(s);
  const SuperMatrix l = inverse(frame_matrix(phi));
  // sum_m N(k, m) A'_m = phi#(A_k) - S^{-1} X_k(S) with S = sdet(d phi), X_k = phi_* d_k
  std::vector<Jet> b;
  for (int k = 0; k < ts.directions(); ++k) {
    VectorField x = pull_vector(phi, VectorField::coordinate(ts, k));
    b.push_back(pullback(phi, c.a[at(k)]) - s_inv * apply(x, s));
  }
  BerConnection out{phi.source, {}, {}};
  for (int m = 0; m < ss.directions(); ++m) {
    Jet acc(ss);
    for (int k = 0; k < ts.directions(); ++k) acc += l(m, k) * b[at(k)];
    out.a.push_back(acc);
  }
  return out;
}

DeltaOperator transport_delta(const Morphism& phi, const DeltaOperator& d) {
  if (!(d.chart == phi.target)) throw SignatureMismatch("transport_delta: operator not on the target chart");
  const Morphism psi = invert_morphism(phi);
  DeltaOperator out{phi.source, {}};
  for (int m = 0; m < phi.source.sig.directions(); ++m) {
    MultiVectorForm pushed = pull_mvform(psi, MultiVectorForm::vector(phi.source, m));
    MultiVectorForm back = pull_mvform(phi, extend_delta(d, pushed));
    out.table.push_back(back.coefficient(MVKey{}));
  }
  return out;
}

std::vector<std::vector<Jet>> curvature_ber(const BerConnection& c, bool antiholomorphic) {
  const auto& sig = c.chart.sig;
  const int nd = sig.directions();
  const int total = antiholomorphic ? 2 * nd : nd;
  auto gen = [&](int i) { return i < nd ? holomorphic_generator(sig, i) : antiholomorphic_generator(sig, i - nd); };
  auto coef = [&](int i) {
    if (i < nd) return c.a[at(i)];
    if (c.abar.empty()) return Jet(sig);
    return c.abar[at(i - nd)];
  };
  auto par = [&](int i) { return dir_bit(sig, i < nd ? i : i - nd); };
  // nabla_l (A_m [dxi]) = d_l(A_m) [dxi] + (-1)^{|l||A_m|} A_m A_l [dxi]
  auto second = [&](int l, int m) {
    return partial(coef(m), gen(l)) + with_sign(coef(m) * coef(l), Sign::power(par(l) * par(m)));
  };
  std::vector<std::vector<Jet>> r(at(total), std::vector<Jet>(at(total), Jet(sig)));
  for (int l = 0; l < total; ++l)
    for (int m = 0; m < total; ++m)
      r[at(l)][at(m)] = second(l, m) - with_sign(second(m, l), Sign::power(par(l) * par(m)));
  return r;
}

bool is_flat(const std::vector<std::vector<Jet>>& r) {
  for (const auto& row : r)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

std::vector<Jet> covariant_derivative(const BerConnection& c, const BerSection& omega) {
  if (!(c.chart == omega.chart)) throw SignatureMismatch("covariant_derivative: different charts");
  const auto& sig = c.chart.sig;
  const Jet& h = omega.coefficient;
  std::vector<Jet> out;
  for (int k = 0; k < sig.directions(); ++k) {
    Jet dh = partial(h, holomorphic_generator(sig, k));
    for (Parity p : {Parity::even, Parity::odd})
      dh += with_sign(h.part(p) * c.a[at(k)], Sign::power(bit(p) * dir_bit(sig, k)));
    out.push_back(dh);
  }
  return out;
}

std::vector<Jet> delta_formula_residual(const BerSection& omega, const DeltaOperator& d) {
  if (!(d.chart == omega.chart)) throw SignatureMismatch("delta_formula_residual: different charts");
  const auto& sig = d.chart.sig;
  std::vector<Jet> out;
  for (int k = 0; k < sig.directions(); ++k)
    out.push_back(omega.coefficient * d.table[at(k)] - partial(omega.coefficient, holomorphic_generator(sig, k)));
  return out;
}

Jet solve_delta_formula(const DeltaOperator& d) {
  const auto& sig = d.chart.sig;
  const int nd = sig.directions();
  for (int k = 0; k < nd; ++k) {
    require_holomorphic(d.table[at(k)], "solve_delta_formula");
    if (!d.table[at(k)].is_zero() && d.table[at(k)].parity() != sig.direction_parity(k))
      throw ParityError("solve_delta_formula: Delta(d_k) must have the parity of d_k");
  }
  // d_l D_k = (-1)^{|l||k|} d_k D_l, the closedness of d log h
  for (int k = 0; k < nd; ++k)
    for (int l = 0; l < k; ++l) {
      Jet lhs = partial(d.table[at(k)], holomorphic_generator(sig, l));
      Jet rhs = partial(d.table[at(l)], holomorphic_generator(sig, k));
      if (!(lhs == with_sign(rhs, Sign::power(dir_bit(sig, k) * dir_bit(sig, l)))))
        throw PreconditionError("solve_delta_formula: table is not integrable");
    }
  // Euler operator: sum_k xi^k D_k = E(log h), E multiplies a monomial by its holomorphic degree.
  Jet w(sig);
  for (int k = 0; k < nd; ++k) w += Jet::generator(sig, holomorphic_generator(sig, k)) * d.table[at(k)];
  Jet u = Jet(sig).truncated(w.precision());
  for (const auto& [mono, c] : w.terms()) {
    const int deg = mono.degree + std::popcount(static_cast<unsigned>(mono.odd));
    u.add_term(mono, c * GaussianRational::ratio(1, deg));
  }
  return exp_nilpotent(u);
}

RingSignature path_ring(int aux_odd, int order) {
  RingSignature r{1, aux_odd, order};
  r.validate();
  return r;
}

FormalPath make_path(const Chart& chart, const RingSignature& ring, std::vector<Jet> images) {
  const auto& sig = chart.sig;
  if (ring.n < 1) throw SignatureMismatch("path ring needs the even parameter t");
  if (static_cast<int>(images.size()) != sig.directions()) throw std::invalid_argument("path: one image per coordinate");
  for (int k = 0; k < sig.directions(); ++k) {
    const Jet& im = images[at(k)];
    if (!(im.signature() == ring)) throw SignatureMismatch("path image over the wrong ring");
    if (!im.is_zero() && im.parity() != sig.direction_parity(k)) throw ParityError("path image of wrong parity");
    if (!im.is_holomorphic()) throw PreconditionError("path images are polynomials in t and the odd parameters");
    if (k < sig.n && !im.body().is_zero()) throw PreconditionError("path must start at the chart origin");
  }
  return FormalPath{chart, ring, std::move(images)};
}

GeneratorNames path_names(const RingSignature& ring) {
  GeneratorNames g;
  g.even.push_back("t");
  for (int k = 1; k < ring.n; ++k) g.even.push_back("s" + std::to_string(k));
  g.even.push_back("tb");
  for (int k = 1; k < ring.n; ++k) g.even.push_back("sb" + std::to_string(k));
  for (int k = 1; k <= ring.m; ++k) g.odd.push_back("eta" + std::to_string(k));
  for (int k = 1; k <= ring.m; ++k) g.odd.push_back("etab" + std::to_string(k));
  return g;
}

Jet pull_along(const FormalPath& path, const Jet& f) {
  const auto& sig = path.chart.sig;
  require_holomorphic(f, "parallel transport");
  std::vector<Jet> slots(at(slot_count(sig)), Jet(path.ring));
  for (int k = 0; k < sig.directions(); ++k) {
    const int s = generator_slot(sig, holomorphic_generator(sig, k));
    const int sb = generator_slot(sig, antiholomorphic_generator(sig, k));
    slots[at(s)] = path.images[at(k)];
    slots[at(sb)] = conjugate(path.images[at(k)]);
  }
  return substitute(f, slots, path.ring);
}

namespace {

const Generator kTime{GenKind::z, 0};

std::vector<Jet> velocities(const FormalPath& path) {
  std::vector<Jet> v;
  for (const auto& im : path.images) v.push_back(partial(im, kTime));
  return v;
}

}  // namespace

Jet parallel_transport(const BerConnection& c, const FormalPath& path) {
  if (!(c.chart == path.chart)) throw SignatureMismatch("parallel_transport: different charts");
  const auto vel = velocities(path);
  Jet rate(path.ring);  // -sum_l gamma'^l gamma#(A_l)
  for (std::size_t l = 0; l < vel.size(); ++l) rate -= vel[l] * pull_along(path, c.a[l]);
  const Jet one(path.ring, 1);
  Jet p = one;
  // Picard iteration gains one t-order per step.
  for (int it = 0; it <= path.ring.cap; ++it) p = one + integrate(rate * p, kTime);
  return p;
}

SuperMatrix parallel_transport(const Christoffel& g, const FormalPath& path) {
  if (!(g.chart() == path.chart)) throw SignatureMismatch("parallel_transport: different charts");
  g.validate();
  const auto& sig = path.chart.sig;
  const int nd = sig.directions();
  const auto vel = velocities(path);
  // G^m_k = sum_l (-1)^{m(k+1)} gamma'^l gamma#(Gamma^m_{lk}); d_t P = -G P
  SuperMatrix rate(path.ring, sig.n, sig.m);
  for (int m = 0; m < nd; ++m)
    for (int k = 0; k < nd; ++k) {
      Jet acc(path.ring);
      for (int l = 0; l < nd; ++l) acc += vel[at(l)] * pull_along(path, g(m, l, k));
      rate(m, k) = -with_sign(acc, Sign::power(dir_bit(sig, m) * (dir_bit(sig, k) + 1)));
    }
  const SuperMatrix one = SuperMatrix::identity(path.ring, sig.n, sig.m);
  SuperMatrix p = one;
  for (int it = 0; it <= path.ring.cap; ++it) {
    SuperMatrix f = rate * p;
    SuperMatrix next = one;
    for (int m = 0; m < nd; ++m)
      for (int k = 0; k < nd; ++k) next(m, k) += integrate(f(m, k), kTime);
    p = std::move(next);
  }
  return p;
}

CheckReport check_sdet_transport(const Christoffel& g, const FormalPath& path) {
  const SuperMatrix p = parallel_transport(g, path);
  const Jet lhs = parallel_transport(ber_from_tangent(g), path);
  const Jet rhs = invert(sdet(p));
  const int need = path.order();
  CheckReport r;
  const auto names = path_names(path.ring);
  if (lhs.precision() < need || rhs.precision() < need) {
    r.passed = false;
    r.detail = "transport known only to t-order " + std::to_string(std::min(lhs.precision(), rhs.precision()));
  } else if (!(lhs == rhs)) {
    r.passed = false;
    r.detail = "P_Ber = " + render(lhs, names) + "; sdet(P)^-1 = " + render(rhs, names);
  }
  return r;
}

CheckReport check_cy_consistency(const Jet& h, const Christoffel& g) {
  const Chart& chart = g.chart();
  const auto& sig = chart.sig;
  if (!(h.signature() == sig)) throw SignatureMismatch("check_cy_consistency: h over a different ring");
  require_holomorphic(h, "check_cy_consistency");
  const BerSection omega{chart, h};
  const Jet h_inv = invert(h);
  const BerConnection ber = ber_from_tangent(g);
  for (int k = 0; k < sig.directions(); ++k)
    if (!(-ber.a[at(k)] == partial(h, holomorphic_generator(sig, k)) * h_inv))
      throw PreconditionError("check_cy_consistency: str(Gamma_k) differs from d_k(h) h^-1 for k = " +
                              direction_name(sig, k));

  DeltaOperator d{chart, {}};
  for (int k = 0; k < sig.directions(); ++k)
    d.table.push_back(delta_omega(omega, MultiVectorForm::vector(chart, k)).coefficient(MVKey{}));
  const BerConnection bv = bv_connection(d);

  CheckReport r;
  auto fail = [&](const std::string& why) {
    if (r.passed) r.detail = why;
    r.passed = false;
  };
  for (int k = 0; k < sig.directions(); ++k)
    if (!(bv.a[at(k)] == ber.a[at(k)]))
      fail("A_" + direction_name(sig, k) + ": " + render(bv.a[at(k)]) + " vs " + render(ber.a[at(k)]));
  for (const auto* c : {&bv, &ber})
    for (const auto& v : covariant_derivative(*c, omega))
      if (!v.is_zero()) fail("omega not parallel: " + render(v));
  return r;
}

std::string render(const Christoffel& g) {
  std::string out;
  const auto& sig = g.chart().sig;
  for (int q = 0; q < g.size(); ++q)
    for (int k = 0; k < g.size(); ++k)
      for (int l = 0; l < g.size(); ++l) {
        const Jet& x = g(q, k, l);
        if (x.is_zero()) continue;
        if (!out.empty()) out += "; ";
        out += "Gamma[" + direction_name(sig, q) + "][" + direction_name(sig, k) + "][" + direction_name(sig, l) +
               "] = " + render(x);
      }
  return out.empty() ? "0" : out;
}

std::string render(const BerConnection& c) {
  std::string out;
  for (int k = 0; k < c.chart.sig.directions(); ++k) {
    if (k) out += "; ";
    out += "A[" + direction_name(c.chart.sig, k) + "] = " + render(c.a[at(k)]);
  }
  return out;
}

}  // namespace sbv

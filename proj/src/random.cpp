#include "superbv/random.hpp"

#include <bit>

namespace sbv {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

std::uint64_t hash_name(const char* s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
  return h;
}

GaussianRational random_scalar(Rng& rng) {
  static const long small[] = {-3, -2, -1, 1, 2, 3};
  const int kind = rng.uniform(0, 9);
  GaussianRational base(small[rng.uniform(0, 5)]);
  if (kind == 7) return base * GaussianRational::ratio(1, 2);
  if (kind == 8) return base * GaussianRational::i();
  if (kind == 9) return base + GaussianRational::i();
  return base;
}

Jet random_jet(const RingSignature& sig, Rng& rng, std::optional<Parity> parity, JetShape shape) {
  Jet f(sig);
  const int even_gens = shape.holomorphic ? sig.n : 2 * sig.n;
  const int odd_gens = shape.holomorphic ? sig.m : 2 * sig.m;
  if (parity == Parity::odd && odd_gens == 0) return f;
  const int terms = rng.uniform(1, shape.max_terms);
  const int max_deg = std::min(shape.max_degree, sig.cap);
  for (int t = 0; t < terms; ++t) {
    Monomial mono;
    int deg = even_gens ? rng.uniform(0, max_deg) : 0;
    if (!shape.constant_term && deg == 0 && even_gens) deg = 1;
    for (int d = 0; d < deg; ++d) {
      ++mono.exps[rng.uniform(0, even_gens - 1)];
    }
    mono.degree = static_cast<std::uint8_t>(deg);
    std::uint32_t mask = 0;
    for (int b = 0; b < odd_gens; ++b)
      if (rng.chance(1, 3)) mask |= 1u << b;
    if (parity && odd_gens) {
      if (parity_of(std::popcount(mask)) != *parity) mask ^= 1u << rng.uniform(0, odd_gens - 1);
    }
    if (!shape.constant_term && deg == 0 && mask == 0) continue;
    mono.odd = static_cast<std::uint16_t>(mask);
    f.add_term(mono, random_scalar(rng));
  }
  return f;
}

Jet random_unit(const RingSignature& sig, Rng& rng, bool holomorphic) {
  JetShape shape;
  shape.holomorphic = holomorphic;
  shape.constant_term = false;
  Jet u = random_jet(sig, rng, Parity::even, shape);
  static const long bodies[] = {1, 1, 2, -1, 3};
  return u + Jet(sig, GaussianRational(bodies[rng.uniform(0, 4)]));
}

namespace {

// Invertible constant matrix: unit-ish diagonal plus random strictly lower part.
std::vector<GaussianRational> random_linear(int k, Rng& rng) {
  static const long diag[] = {1, 2, -1, 3, 1};
  std::vector<GaussianRational> a(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      auto& e = a[static_cast<std::size_t>(i * k + j)];
      if (i == j) e = GaussianRational(diag[rng.uniform(0, 4)]);
      else if (j < i && rng.chance(1, 2)) e = GaussianRational(rng.uniform(-2, 2));
    }
  return a;
}

}  // namespace

SuperMatrix random_even_matrix(const RingSignature& sig, int p, int q, Rng& rng, bool invertible) {
  SuperMatrix mat(sig, p, q);
  JetShape shape;
  shape.max_terms = 3;
  shape.constant_term = !invertible;
  for (int r = 0; r < p + q; ++r)
    for (int c = 0; c < p + q; ++c) {
      const Parity par = mat.index_parity(r) + mat.index_parity(c);
      if (invertible && r == c) mat(r, c) = random_unit(sig, rng, false);
      else mat(r, c) = random_jet(sig, rng, par, shape);
    }
  return mat;
}

Morphism random_morphism(const Chart& source, const Chart& target, Rng& rng, MorphismShape shape) {
  const auto& sig = source.sig;
  const int n = sig.n, m = sig.m;
  std::vector<Jet> images;
  auto lin_e = random_linear(n, rng), lin_o = random_linear(m, rng);
  JetShape higher;
  higher.holomorphic = true;
  higher.constant_term = false;
  higher.max_terms = std::max(shape.extra_terms, 1);
  for (int i = 0; i < n + m; ++i) {
    const bool even = i < n;
    Jet p(sig);
    const int k = even ? n : m;
    for (int j = 0; j < k; ++j) {
      const auto& c = even ? lin_e[static_cast<std::size_t>(i * n + j)] : lin_o[static_cast<std::size_t>((i - n) * m + j)];
      if (!c.is_zero())
        p += Jet::generator(sig, even ? Generator{GenKind::z, j} : Generator{GenKind::theta, j}) * c;
    }
    if (shape.extra_terms > 0) {
      Jet extra = random_jet(sig, rng, even ? Parity::even : Parity::odd, higher);
      // keep only genuinely nonlinear terms
      Jet filtered(sig);
      for (const auto& [mono, c] : extra.terms()) {
        const int odd_count = std::popcount(static_cast<unsigned>(mono.odd));
        const bool linear = even ? (mono.degree == 1 && odd_count == 0) : (mono.degree == 0 && odd_count == 1);
        const bool nil = even && mono.degree == 0;
        if (linear || (nil && !shape.nilpotent_shift)) continue;
        filtered.add_term(mono, c);
      }
      p += filtered;
    }
    images.push_back(p);
  }
  return make_morphism(source, target, std::move(images));
}

namespace {

// Multiset of `count` directions; even directions at most once.
std::optional<std::array<std::uint8_t, kMaxDirections>> random_multiset(const RingSignature& sig, Rng& rng, int count,
                                                                        int max_odd) {
  std::array<std::uint8_t, kMaxDirections> c{};
  for (int i = 0; i < count; ++i) {
    std::vector<int> open;
    for (int k = 0; k < sig.directions(); ++k) {
      const int limit = sig.direction_parity(k) == Parity::even ? 1 : max_odd;
      if (c[static_cast<std::size_t>(k)] < limit) open.push_back(k);
    }
    if (open.empty()) return std::nullopt;
    ++c[static_cast<std::size_t>(open[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(open.size()) - 1))])];
  }
  return c;
}

}  // namespace

MultiVectorForm random_mvform(const Chart& chart, Rng& rng, int p, int q, Parity parity, FormShape shape) {
  const auto& sig = chart.sig;
  MultiVectorForm r(chart);
  const int terms = rng.uniform(1, shape.max_terms);
  for (int t = 0; t < terms; ++t) {
    auto bar = random_multiset(sig, rng, q, shape.max_odd_multiplicity);
    auto vec = random_multiset(sig, rng, p, shape.max_odd_multiplicity);
    if (!bar || !vec) continue;
    MVKey key;
    key.bar = *bar;
    key.vec = *vec;
    const Parity pc = parity + key_degree(sig, key).parity;
    r.add_term(key, random_jet(sig, rng, pc, shape.coefficient));
  }
  return r;
}

}  // namespace sbv

namespace sbv {

Christoffel random_christoffel(const Chart& chart, Rng& rng, JetShape shape) {
  shape.holomorphic = true;
  Christoffel g(chart);
  for (int q = 0; q < g.size(); ++q)
    for (int k = 0; k < g.size(); ++k)
      for (int l = 0; l < g.size(); ++l)
        if (rng.chance(1, 2)) g(q, k, l) = random_jet(chart.sig, rng, g.expected_parity(q, k, l), shape);
  return g;
}

FormalPath random_path(const Chart& chart, Rng& rng, int aux_odd, int order) {
  const RingSignature ring = path_ring(aux_odd, order);
  const Jet t = Jet::generator(ring, {GenKind::z, 0});
  JetShape shape{2, 3, true, false};
  std::vector<Jet> images;
  for (int k = 0; k < chart.sig.directions(); ++k) {
    const Parity p = chart.sig.direction_parity(k);
    Jet im = random_jet(ring, rng, p, shape);
    if (p == Parity::even) im += t * random_scalar(rng);
    images.push_back(im);
  }
  return make_path(chart, ring, std::move(images));
}

CYPair random_cy_pair(const Chart& chart, Rng& rng) {
  const auto& sig = chart.sig;
  CYPair out{random_unit(sig, rng), random_christoffel(chart, rng)};
  const Jet h_inv = invert(out.h);
  const BerConnection ber = ber_from_tangent(out.gamma);
  // the supertrace picks up Gamma^0_{k0} with sign (-1)^{|xi^0|}
  const bool odd0 = sig.direction_parity(0) == Parity::odd;
  for (int k = 0; k < sig.directions(); ++k) {
    Jet defect = partial(out.h, holomorphic_generator(sig, k)) * h_inv + ber.a[static_cast<std::size_t>(k)];
    out.gamma(0, k, 0) += odd0 ? -defect : defect;
  }
  return out;
}

}  // namespace sbv

#include <gtest/gtest.h>

#include "superbv/charts.hpp"
#include "superbv/errors.hpp"
#include "superbv/random.hpp"

using namespace sbv;

namespace {

Jet gen(const RingSignature& s, GenKind k, int i) { return Jet::generator(s, {k, i}); }

Chart source_chart(const RingSignature& s) { return Chart{s, "x"}; }
Chart target_chart(const RingSignature& s) { return Chart{s, "y"}; }

Jet jacobi_rhs(const SuperMatrix& j, const Jet& sd, const VectorField& x, Parity px) {
  Jet acc(sd.signature());
  for (int a = 0; a < j.size(); ++a)
    for (int b = 0; b < j.size(); ++b) {
      Jet term = sd * inverse(j)(a, b) * apply(x, j(b, a));
      const int e = bit(j.index_parity(a)) + bit(px) * (bit(j.index_parity(a)) + bit(j.index_parity(b)));
      acc += (e % 2) ? -term : term;
    }
  return acc;
}

}  // namespace

TEST(Charts, DifferentialExamples) {
  RingSignature s{1, 1, 4};
  auto id = identity_morphism(Chart{s});
  EXPECT_EQ(differential(id), SuperMatrix::identity(s, 1, 1));
  Jet z = gen(s, GenKind::z, 0), th = gen(s, GenKind::theta, 0);
  auto phi = make_morphism(source_chart(s), target_chart(s), {z, (Jet(s, 1) + z) * th});
  SuperMatrix d = differential(phi);
  EXPECT_EQ(d(0, 0), Jet(s, 1));
  EXPECT_TRUE(d(0, 1).is_zero());
  // odd row, even column picks up a minus sign
  EXPECT_EQ(d(1, 0), -th);
  EXPECT_EQ(d(1, 1), Jet(s, 1) + z);
}

TEST(Charts, MorphismValidation) {
  RingSignature s{1, 1, 4};
  Jet z = gen(s, GenKind::z, 0), th = gen(s, GenKind::theta, 0);
  EXPECT_THROW(make_morphism(source_chart(s), target_chart(s), {th, z}), ParityError);
  EXPECT_THROW(make_morphism(source_chart(s), target_chart(s), {Jet(s, 1) + z, th}), PreconditionError);
}

TEST(Charts, InvertExamples) {
  RingSignature s10{1, 0, 4};
  Jet z = gen(s10, GenKind::z, 0);
  auto phi = make_morphism(source_chart(s10), target_chart(s10), {z * GaussianRational(2)});
  auto psi = invert_morphism(phi);
  EXPECT_EQ(psi.images[0], z * GaussianRational::ratio(1, 2));

  RingSignature s{1, 1, 4};
  Jet zz = gen(s, GenKind::z, 0), th = gen(s, GenKind::theta, 0);
  auto f = make_morphism(source_chart(s), target_chart(s), {zz + zz * zz, (Jet(s, 1) + zz) * th});
  auto g = invert_morphism(f);
  auto gf = compose(g, f);
  EXPECT_EQ(gf.images[0], zz);
  EXPECT_EQ(gf.images[1], th);
  auto fg = compose(f, g);
  EXPECT_EQ(fg.images[0], zz);
  EXPECT_EQ(fg.images[1], th);
}

TEST(Charts, ComposeChartMismatch) {
  RingSignature s{1, 1, 4};
  auto a = identity_morphism(Chart{s, "a"});
  auto b = identity_morphism(Chart{s, "b"});
  EXPECT_THROW(compose(a, b), SignatureMismatch);
}

TEST(Charts, BerPullbackLinearDiagonal) {
  RingSignature s{1, 1, 4};
  Jet z = gen(s, GenKind::z, 0), th = gen(s, GenKind::theta, 0);
  auto phi = make_morphism(source_chart(s), target_chart(s), {z * GaussianRational(3), th * GaussianRational(2)});
  BerSection w{target_chart(s), Jet(s, 1)};
  EXPECT_EQ(pull_ber(phi, w).coefficient, Jet(s, GaussianRational::ratio(3, 2)));
  EXPECT_EQ(render(BerSection{Chart{s}, Jet(s, 1) + z}), "(1 + z1) [dxi]");
}

class ChartProperties : public ::testing::TestWithParam<RingSignature> {};

TEST_P(ChartProperties, ChainRuleInverseAndHessian) {
  const auto sig = GetParam();
  Rng rng(derive_seed(31, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  Chart x{sig, "x"}, y{sig, "y"}, w{sig, "w"};
  for (int t = 0; t < 8; ++t) {
    auto phi = random_morphism(x, y, rng);
    auto psi = random_morphism(y, w, rng);
    SuperMatrix dpsi = differential(psi), dphi = differential(phi);
    SuperMatrix pulled(sig, sig.n, sig.m);
    for (int i = 0; i < pulled.size(); ++i)
      for (int k = 0; k < pulled.size(); ++k) pulled(i, k) = pullback(phi, dpsi(i, k));
    EXPECT_EQ(differential(compose(psi, phi)), pulled * dphi);

    auto inv = invert_morphism(phi);
    auto id = compose(inv, phi);
    for (int k = 0; k < sig.directions(); ++k)
      EXPECT_EQ(id.images[static_cast<std::size_t>(k)], Jet::generator(sig, holomorphic_generator(sig, k)));
    SuperMatrix dinv = differential(inv);
    SuperMatrix lhs = inverse(dphi);
    for (int i = 0; i < lhs.size(); ++i)
      for (int k = 0; k < lhs.size(); ++k) EXPECT_EQ(lhs(i, k), pullback(phi, dinv(i, k)));

    for (int mm = 0; mm < dphi.size(); ++mm)
      for (int nn = 0; nn < dphi.size(); ++nn)
        for (int jj = 0; jj < dphi.size(); ++jj) {
          const int pm = bit(sig.direction_parity(mm)), pn = bit(sig.direction_parity(nn)),
                    pj = bit(sig.direction_parity(jj));
          Jet l = partial(dphi(mm, nn), holomorphic_generator(sig, jj));
          Jet r = partial(dphi(mm, jj), holomorphic_generator(sig, nn));
          if ((pn * pj + pn * pm + pj * pm) % 2) r = -r;
          EXPECT_EQ(l, r);
        }
  }
}

TEST_P(ChartProperties, JacobiFormulaAndSum) {
  const auto sig = GetParam();
  Rng rng(derive_seed(32, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  Chart x{sig, "x"}, y{sig, "y"};
  for (int t = 0; t < 8; ++t) {
    auto phi = random_morphism(x, y, rng);
    SuperMatrix j = differential(phi);
    SuperMatrix ji = inverse(j);
    Jet sd = sdet(j);
    for (int k = 0; k < sig.directions(); ++k) {
      auto xk = VectorField::coordinate(sig, k);
      EXPECT_EQ(apply(xk, sd), jacobi_rhs(j, sd, xk, sig.direction_parity(k)));
      Jet sum(sig);
      for (int a = 0; a < sig.directions(); ++a) sum += partial(sd * ji(a, k), holomorphic_generator(sig, a));
      EXPECT_TRUE(sum.is_zero()) << render(sum);
    }
  }
}

TEST_P(ChartProperties, PullbackNaturality) {
  const auto sig = GetParam();
  Rng rng(derive_seed(33, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  Chart x{sig, "x"}, y{sig, "y"}, w{sig, "w"};
  JetShape holo;
  holo.holomorphic = true;
  for (int t = 0; t < 8; ++t) {
    auto phi = random_morphism(x, y, rng);
    Jet g = random_jet(sig, rng, parity_of(rng.uniform(0, 1)), holo);
    VectorField v{sig, {}};
    for (int k = 0; k < sig.directions(); ++k) v.coeffs.push_back(random_jet(sig, rng, sig.direction_parity(k), holo));
    // (phi_* X)(phi# g) = phi#(X g)
    EXPECT_EQ(apply(pull_vector(phi, v), pullback(phi, g)), pullback(phi, apply(v, g)));
    // phi* dg = d(phi# g)
    Covector pulled = pull_covector(phi, exterior_derivative(g));
    Covector direct = exterior_derivative(pullback(phi, g));
    for (int k = 0; k < sig.directions(); ++k)
      EXPECT_EQ(pulled.coeffs[static_cast<std::size_t>(k)], direct.coeffs[static_cast<std::size_t>(k)]);
    // pairing is preserved
    EXPECT_EQ(pair(pulled, pull_vector(phi, v)), pullback(phi, pair(exterior_derivative(g), v)));
    // dual bases: (d xi^j)(d_k) = (-1)^{|j|} delta
    for (int jj = 0; jj < sig.directions(); ++jj)
      for (int k = 0; k < sig.directions(); ++k) {
        Covector dj{sig, std::vector<Jet>(static_cast<std::size_t>(sig.directions()), Jet(sig))};
        dj.coeffs[static_cast<std::size_t>(jj)] = Jet(sig, 1);
        Jet val = pair(pull_covector(phi, dj), pull_vector(phi, VectorField::coordinate(sig, k)));
        Jet expect(sig, jj == k ? (sig.direction_parity(jj) == Parity::odd ? -1 : 1) : 0);
        EXPECT_EQ(val, expect);
      }
    // functoriality of vectors and Berezinian sections
    auto psi = random_morphism(y, w, rng);
    auto comp = compose(psi, phi);
    EXPECT_EQ(apply(pull_vector(comp, v), pullback(comp, g)), apply(pull_vector(phi, pull_vector(psi, v)), pullback(comp, g)));
    BerSection b{w, random_unit(sig, rng)};
    EXPECT_EQ(pull_ber(comp, b).coefficient, pull_ber(phi, pull_ber(psi, b)).coefficient);
  }
}

INSTANTIATE_TEST_SUITE_P(Signatures, ChartProperties,
                         ::testing::Values(RingSignature{1, 1, 4}, RingSignature{2, 1, 4}, RingSignature{2, 2, 3}));

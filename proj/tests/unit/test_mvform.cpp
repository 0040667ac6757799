#include <gtest/gtest.h>

#include "superbv/errors.hpp"
#include "superbv/mvform.hpp"
#include "superbv/random.hpp"

using namespace sbv;

namespace {

Jet gen(const RingSignature& s, GenKind k, int i) { return Jet::generator(s, {k, i}); }

MultiVectorForm fn(const Chart& c, const Jet& f) { return MultiVectorForm::function(c, f); }

Sign sgn(long e) { return Sign::power(e); }

MultiVectorForm times(Sign s, const MultiVectorForm& a) { return s.negative() ? -a : a; }

VectorField to_field(const MultiVectorForm& a) {
  const auto& sig = a.signature();
  VectorField v{sig, std::vector<Jet>(static_cast<std::size_t>(sig.directions()), Jet(sig))};
  for (const auto& [key, c] : a.terms()) {
    if (c.is_zero()) continue;
    EXPECT_EQ(key.q(), 0);
    EXPECT_EQ(key.p(), 1);
    for (int k = 0; k < sig.directions(); ++k)
      if (key.vec[static_cast<std::size_t>(k)]) v.coeffs[static_cast<std::size_t>(k)] = c;
  }
  return v;
}

struct Draw {
  MultiVectorForm form;
  BiDegree deg;
};

Draw draw(const Chart& chart, Rng& rng, int max_p, int max_q) {
  const int p = rng.uniform(0, max_p), q = rng.uniform(0, max_q);
  const Parity par = parity_of(rng.uniform(0, 1));
  MultiVectorForm a = random_mvform(chart, rng, p, q, par);
  return {a, BiDegree{p + q, par}};
}

}  // namespace

TEST(MultiVectorForm, WedgeExamples) {
  RingSignature s{1, 1, 4};
  Chart c{s};
  Jet z = gen(s, GenKind::z, 0);
  auto dz = MultiVectorForm::vector(c, 0);
  auto dzb = MultiVectorForm::barred_form(c, 0);
  EXPECT_EQ(wedge(fn(c, z), dz), wedge(z, dz));
  EXPECT_EQ(wedge(dz, dzb), -wedge(dzb, dz));
  EXPECT_EQ(render(wedge(dz, dzb)), "dzb1*dv(z1)*(- 1)");
  EXPECT_TRUE(wedge(dzb, dzb).is_zero());
  auto dth = MultiVectorForm::vector(c, 1);
  EXPECT_FALSE(wedge(dth, dth).is_zero());
  EXPECT_EQ(render(wedge(dth, dth)), "dv(th1)^2");
  EXPECT_EQ(render(wedge(wedge(dzb, dz), fn(c, gen(s, GenKind::theta, 0)))), "dzb1*dv(z1)*(th1)");
}

TEST(MultiVectorForm, DbarExamples) {
  RingSignature s{1, 1, 4};
  Chart c{s};
  Jet zb = gen(s, GenKind::zbar, 0);
  EXPECT_EQ(dbar(fn(c, zb * zb)), wedge(MultiVectorForm::barred_form(c, 0), fn(c, zb * GaussianRational(2))));
  Jet z = gen(s, GenKind::z, 0), th = gen(s, GenKind::theta, 0);
  EXPECT_TRUE(dbar(wedge(MultiVectorForm::vector(c, 1), fn(c, z * th))).is_zero());
}

TEST(MultiVectorForm, SchoutenExamples) {
  RingSignature s{1, 1, 4};
  Chart c{s};
  Jet z = gen(s, GenKind::z, 0), th = gen(s, GenKind::theta, 0);
  auto dz = MultiVectorForm::vector(c, 0), dth = MultiVectorForm::vector(c, 1);
  EXPECT_EQ(schouten(dz, fn(c, z)), fn(c, Jet(s, 1)));
  EXPECT_EQ(schouten(fn(c, z), dz), fn(c, Jet(s, -1)));
  EXPECT_EQ(schouten(dth, fn(c, th)), fn(c, Jet(s, 1)));
  EXPECT_TRUE(schouten(wedge(dz, dth), wedge(dz, dth) * GaussianRational(3)).is_zero());
  EXPECT_TRUE(schouten(fn(c, z), fn(c, th)).is_zero());
  EXPECT_THROW(schouten(dz, MultiVectorForm::vector(Chart{s, "other"}, 0)), SignatureMismatch);
}

TEST(MultiVectorForm, PullbackExamples) {
  RingSignature s{1, 0, 4};
  Chart x{s, "x"}, y{s, "y"};
  Jet z = gen(s, GenKind::z, 0);
  auto phi = make_morphism(x, y, {z * GaussianRational(2)});
  auto v = MultiVectorForm::vector(y, 0);
  EXPECT_EQ(pull_mvform(phi, v), MultiVectorForm::vector(x, 0) * GaussianRational::ratio(1, 2));
  auto w = wedge(MultiVectorForm::barred_form(y, 0), v);
  EXPECT_EQ(pull_mvform(phi, w), wedge(MultiVectorForm::barred_form(x, 0), MultiVectorForm::vector(x, 0)));
  auto id = identity_morphism(y);
  RingSignature s2{2, 1, 3};
  Rng rng(5);
  Chart c2{s2};
  auto a = random_mvform(c2, rng, 2, 1, Parity::odd);
  EXPECT_EQ(pull_mvform(identity_morphism(c2), a), a);
  auto bad = make_morphism(x, y, {z + gen(s, GenKind::zbar, 0) * z});
  EXPECT_THROW(pull_mvform(bad, v), PreconditionError);
  (void)id;
}

class MVFormProperties : public ::testing::TestWithParam<RingSignature> {};

TEST_P(MVFormProperties, WedgeAlgebra) {
  const auto sig = GetParam();
  Chart c{sig};
  Rng rng(derive_seed(41, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  for (int t = 0; t < 10; ++t) {
    auto a = draw(c, rng, 2, 1), b = draw(c, rng, 2, 1), g = draw(c, rng, 1, 1);
    Sign s = commute_sign(a.deg, b.deg);
    EXPECT_EQ(wedge(a.form, b.form), times(s, wedge(b.form, a.form)));
    EXPECT_EQ(wedge(wedge(a.form, b.form), g.form), wedge(a.form, wedge(b.form, g.form)));
    // dbar is a deg-odd derivation squaring to zero
    EXPECT_TRUE(dbar(dbar(a.form)).is_zero());
    EXPECT_EQ(dbar(wedge(a.form, b.form)), wedge(dbar(a.form), b.form) + times(sgn(a.deg.cohom), wedge(a.form, dbar(b.form))));
  }
}

TEST_P(MVFormProperties, SchoutenSymmetryAndDerivation) {
  const auto sig = GetParam();
  Chart c{sig};
  Rng rng(derive_seed(42, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  for (int t = 0; t < 10; ++t) {
    auto a = draw(c, rng, 2, 1), b = draw(c, rng, 2, 1), g = draw(c, rng, 1, 1);
    const int pa = bit(a.deg.parity), pb = bit(b.deg.parity);
    Sign sym = -sgn((a.deg.cohom + 1) * (b.deg.cohom + 1) + pa * pb);
    EXPECT_EQ(schouten(a.form, b.form), times(sym, schouten(b.form, a.form)))
        << render(a.form) << " | " << render(b.form);
    Sign der = sgn((a.deg.cohom + 1) * b.deg.cohom + pa * pb);
    EXPECT_EQ(schouten(a.form, wedge(b.form, g.form)),
              wedge(schouten(a.form, b.form), g.form) + times(der, wedge(b.form, schouten(a.form, g.form))))
        << render(a.form) << " | " << render(b.form) << " | " << render(g.form);
  }
}

TEST_P(MVFormProperties, ExtendsVectorBracket) {
  const auto sig = GetParam();
  Chart c{sig};
  Rng rng(derive_seed(43, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  for (int t = 0; t < 10; ++t) {
    const Parity pv = parity_of(rng.uniform(0, 1)), pw = parity_of(rng.uniform(0, 1));
    auto v = random_mvform(c, rng, 1, 0, pv), w = random_mvform(c, rng, 1, 0, pw);
    Jet f = random_jet(sig, rng, std::nullopt);
    VectorField fv = to_field(v), fw = to_field(w);
    Jet lhs = apply(to_field(schouten(v, w)), f);
    Jet rhs = apply(fv, apply(fw, f));
    Jet other = apply(fw, apply(fv, f));
    rhs = (bit(pv) * bit(pw)) ? rhs + other : rhs - other;
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_P(MVFormProperties, CoordinateEquivariance) {
  const auto sig = GetParam();
  Chart x{sig, "x"}, y{sig, "y"};
  Rng rng(derive_seed(44, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  for (int t = 0; t < 5; ++t) {
    auto phi = random_morphism(x, y, rng);
    auto a = draw(y, rng, 2, 1), b = draw(y, rng, 1, 1);
    auto pa = pull_mvform(phi, a.form), pb = pull_mvform(phi, b.form);
    EXPECT_EQ(pull_mvform(phi, wedge(a.form, b.form)), wedge(pa, pb));
    EXPECT_EQ(pull_mvform(phi, dbar(a.form)), dbar(pa));
    EXPECT_EQ(pull_mvform(phi, schouten(a.form, b.form)), schouten(pa, pb));
  }
}

INSTANTIATE_TEST_SUITE_P(Signatures, MVFormProperties,
                         ::testing::Values(RingSignature{1, 1, 4}, RingSignature{2, 1, 4}, RingSignature{2, 2, 3}));

#include <gtest/gtest.h>

#include "superbv/errors.hpp"
#include "superbv/random.hpp"
#include "superbv/supermatrix.hpp"

using namespace sbv;

namespace {

Jet gen(const RingSignature& s, GenKind k, int i) { return Jet::generator(s, {k, i}); }

// sdet via the A-block Schur complement: det(A) / det(D - C A^{-1} B).
Jet sdet_a_block(const SuperMatrix& m) {
  const auto& sig = m.signature();
  const int p = m.even_size(), q = m.odd_size();
  SuperMatrix a(sig, p, 0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = m(i, j);
  SuperMatrix ainv = inverse(a);
  std::vector<Jet> schur;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      Jet e = m(p + i, p + j);
      for (int k = 0; k < p; ++k)
        for (int l = 0; l < p; ++l) e -= m(p + i, k) * ainv(k, l) * m(l, p + j);
      schur.push_back(e);
    }
  std::vector<Jet> ablock;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) ablock.push_back(m(i, j));
  return even_determinant(ablock, p, sig) * invert(even_determinant(schur, q, sig));
}

}  // namespace

TEST(SuperMatrix, SdetExamples) {
  RingSignature s{1, 2, 4};
  EXPECT_EQ(render(sdet(SuperMatrix::identity(s, 1, 1))), "1");
  Jet z = gen(s, GenKind::z, 0);
  SuperMatrix d(s, 1, 1);
  d(0, 0) = Jet(s, 1) + z;
  d(1, 1) = Jet(s, 2);
  EXPECT_EQ(sdet(d), (Jet(s, 1) + z) * GaussianRational::ratio(1, 2));
  SuperMatrix m = SuperMatrix::identity(s, 1, 1);
  m(0, 1) = gen(s, GenKind::theta, 0);
  m(1, 0) = gen(s, GenKind::theta, 1);
  EXPECT_EQ(render(sdet(m)), "1 - th1*th2");
}

TEST(SuperMatrix, SdetRejectsOddOrSingular) {
  RingSignature s{1, 1, 4};
  SuperMatrix m = SuperMatrix::identity(s, 1, 1);
  m(0, 0) = gen(s, GenKind::theta, 0);
  EXPECT_THROW(sdet(m), ParityError);
  SuperMatrix d = SuperMatrix::identity(s, 1, 1);
  d(1, 1) = gen(s, GenKind::z, 0);
  EXPECT_THROW(sdet(d), NotAUnit);
}

TEST(SuperMatrix, StrExamples) {
  RingSignature s{2, 1, 4};
  EXPECT_EQ(render(str(SuperMatrix::identity(s, 2, 1))), "1");
  RingSignature s11{1, 1, 4};
  SuperMatrix d(s11, 1, 1);
  Jet z = gen(s11, GenKind::z, 0);
  d(0, 0) = z;
  d(1, 1) = Jet(s11, 3);
  EXPECT_EQ(render(str(d)), "- 3 + z1");
}

TEST(SuperMatrix, SupertransposeExamples) {
  RingSignature s{1, 2, 4};
  EXPECT_EQ(supertranspose(SuperMatrix::identity(s, 1, 1)), SuperMatrix::identity(s, 1, 1));
  SuperMatrix e(s, 2, 0);
  e(0, 1) = gen(s, GenKind::z, 0);
  SuperMatrix et = supertranspose(e);
  EXPECT_EQ(et(1, 0), gen(s, GenKind::z, 0));
  EXPECT_TRUE(et(0, 1).is_zero());
  SuperMatrix m = SuperMatrix::identity(s, 1, 1);
  m(0, 1) = gen(s, GenKind::theta, 0);
  m(1, 0) = gen(s, GenKind::theta, 1);
  SuperMatrix mt = supertranspose(m);
  EXPECT_EQ(mt(0, 1), -gen(s, GenKind::theta, 1));
  EXPECT_EQ(mt(1, 0), gen(s, GenKind::theta, 0));
  EXPECT_EQ(sdet(mt), sdet(m));
}

TEST(SuperMatrix, InverseExamples) {
  RingSignature s{1, 1, 3};
  SuperMatrix d = SuperMatrix::identity(s, 1, 1);
  Jet z = gen(s, GenKind::z, 0);
  d(0, 0) = Jet(s, 1) + z;
  SuperMatrix di = inverse(d);
  EXPECT_EQ(render(di(0, 0)), "1 - z1 + z1^2 - z1^3");
  EXPECT_EQ(render(di(1, 1)), "1");
}

class SuperMatrixProperties : public ::testing::TestWithParam<RingSignature> {};

TEST_P(SuperMatrixProperties, SdetIdentities) {
  const auto sig = GetParam();
  const int p = sig.n, q = sig.m;
  Rng rng(derive_seed(21, static_cast<std::uint64_t>(p * 10 + q)));
  for (int t = 0; t < 25; ++t) {
    SuperMatrix a = random_even_matrix(sig, p, q, rng), b = random_even_matrix(sig, p, q, rng);
    EXPECT_EQ(sdet(a * b), sdet(a) * sdet(b));
    EXPECT_EQ(sdet(supertranspose(a)), sdet(a));
    EXPECT_EQ(sdet(a), sdet_a_block(a));
    SuperMatrix ai = inverse(a);
    EXPECT_EQ(a * ai, SuperMatrix::identity(sig, p, q));
    EXPECT_EQ(ai * a, SuperMatrix::identity(sig, p, q));
    EXPECT_EQ(sdet(ai) * sdet(a), Jet(sig, 1));
  }
}

TEST_P(SuperMatrixProperties, SupertraceOfCommutatorVanishes) {
  const auto sig = GetParam();
  const int p = sig.n, q = sig.m;
  Rng rng(derive_seed(22, static_cast<std::uint64_t>(p * 10 + q)));
  for (int t = 0; t < 25; ++t) {
    SuperMatrix a = random_even_matrix(sig, p, q, rng, false), b = random_even_matrix(sig, p, q, rng, false);
    EXPECT_TRUE(str(a * b - b * a).is_zero());
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, SuperMatrixProperties,
                         ::testing::Values(RingSignature{1, 1, 4}, RingSignature{2, 1, 4}, RingSignature{2, 2, 3}));

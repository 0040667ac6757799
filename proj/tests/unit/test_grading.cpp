#include <gtest/gtest.h>

#include <array>
#include <numeric>
#include <vector>

#include "superbv/grading.hpp"
#include "superbv/random.hpp"

using namespace sbv;

namespace {
constexpr Parity E = Parity::even;
constexpr Parity O = Parity::odd;
}  // namespace

TEST(Grading, CommuteSignTable) {
  EXPECT_EQ(commute_sign({0, E}, {3, O}), Sign::plus());
  EXPECT_EQ(commute_sign({1, E}, {1, E}), Sign::minus());
  EXPECT_EQ(commute_sign({1, O}, {1, O}), Sign::plus());
  EXPECT_EQ(commute_sign({0, O}, {0, O}), Sign::minus());
  EXPECT_EQ(commute_sign({2, O}, {1, E}), Sign::plus());
}

TEST(Grading, ReorderSignExamples) {
  std::array<Parity, 2> oo{O, O}, oe{O, E};
  std::array<std::size_t, 2> swap{1, 0};
  EXPECT_EQ(reorder_sign(std::span<const Parity>(oo), swap), Sign::minus());
  EXPECT_EQ(reorder_sign(std::span<const Parity>(oe), swap), Sign::plus());
  std::array<Parity, 3> ooo{O, O, O};
  std::array<std::size_t, 3> rot{2, 0, 1};
  EXPECT_EQ(reorder_sign(std::span<const Parity>(ooo), rot), Sign::plus());
}

TEST(Grading, MalformedPermutationThrows) {
  std::array<Parity, 2> oo{O, O};
  std::array<std::size_t, 2> bad{0, 0};
  std::array<std::size_t, 1> short_perm{0};
  EXPECT_THROW(reorder_sign(std::span<const Parity>(oo), bad), std::invalid_argument);
  EXPECT_THROW(reorder_sign(std::span<const Parity>(oo), short_perm), std::invalid_argument);
}

TEST(Grading, CommuteSignSymmetric) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int pa = 0; pa < 2; ++pa)
        for (int pb = 0; pb < 2; ++pb) {
          BiDegree x{a, parity_of(pa)}, y{b, parity_of(pb)};
          EXPECT_EQ(commute_sign(x, y), commute_sign(y, x));
        }
}

TEST(Grading, ReorderSignIdentityAndComposition) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    std::vector<BiDegree> xs(n);
    for (auto& x : xs) x = {rng.uniform(0, 3), parity_of(rng.uniform(0, 1))};
    std::vector<std::size_t> id(n), p(n), q(n);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_EQ(reorder_sign(std::span<const BiDegree>(xs), id), Sign::plus());
    p = id;
    q = id;
    for (std::size_t i = n; i > 1; --i) {
      std::swap(p[i - 1], p[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(i) - 1))]);
      std::swap(q[i - 1], q[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(i) - 1))]);
    }
    // apply p, then q to the permuted sequence
    std::vector<BiDegree> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = xs[p[i]];
    std::vector<std::size_t> pq(n);
    for (std::size_t i = 0; i < n; ++i) pq[i] = p[q[i]];
    EXPECT_EQ(reorder_sign(std::span<const BiDegree>(xs), p) * reorder_sign(std::span<const BiDegree>(ys), q),
              reorder_sign(std::span<const BiDegree>(xs), pq));
  }
}

TEST(Grading, OddMergeMatchesReorder) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::uint32_t a = static_cast<std::uint32_t>(rng.next() & 0xff);
    std::uint32_t b = static_cast<std::uint32_t>(rng.next() & 0xff) & ~a;
    std::vector<int> word;
    for (int k = 0; k < 8; ++k)
      if (a & (1u << k)) word.push_back(k);
    for (int k = 0; k < 8; ++k)
      if (b & (1u << k)) word.push_back(k);
    std::vector<std::size_t> perm(word.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return word[x] < word[y]; });
    std::vector<Parity> par(word.size(), O);
    EXPECT_EQ(odd_merge_sign(a, b), reorder_sign(std::span<const Parity>(par), perm));
  }
}

TEST(Grading, MultisetMergeMatchesReorder) {
  Rng rng(9);
  const std::array<BiDegree, 4> classes{BiDegree{1, E}, BiDegree{1, E}, BiDegree{1, O}, BiDegree{1, O}};
  for (int trial = 0; trial < 300; ++trial) {
    std::array<std::uint8_t, 4> l{}, r{};
    for (int k = 0; k < 4; ++k) {
      const int cap = k < 2 ? 1 : 2;
      l[k] = static_cast<std::uint8_t>(rng.uniform(0, cap));
      r[k] = static_cast<std::uint8_t>(rng.uniform(0, cap));
    }
    std::vector<int> word;
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < l[k]; ++c) word.push_back(k);
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < r[k]; ++c) word.push_back(k);
    auto got = multiset_merge_sign(l, r, classes);
    const bool vanishes = (l[0] && r[0]) || (l[1] && r[1]);
    ASSERT_EQ(got.has_value(), !vanishes);
    if (!got) continue;
    std::vector<std::size_t> perm(word.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return word[x] < word[y]; });
    std::vector<BiDegree> degs;
    for (int w : word) degs.push_back(classes[static_cast<std::size_t>(w)]);
    EXPECT_EQ(*got, reorder_sign(std::span<const BiDegree>(degs), perm));
  }
}

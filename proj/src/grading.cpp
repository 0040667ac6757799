#include "superbv/grading.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace sbv {

namespace {

void validate_perm(std::size_t n, std::span<const std::size_t> perm) {
  if (perm.size() != n) throw std::invalid_argument("reorder_sign: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("reorder_sign: not a permutation");
    seen[p] = true;
  }
}

template <class T, class F>
Sign inversion_sign(std::span<const T> items, std::span<const std::size_t> perm, F pair_sign) {
  validate_perm(items.size(), perm);
  Sign s;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s *= pair_sign(items[perm[i]], items[perm[j]]);
  return s;
}

}  // namespace

Sign reorder_sign(std::span<const Parity> parities, std::span<const std::size_t> perm) {
  return inversion_sign(parities, perm, [](Parity a, Parity b) {
    return Sign::power(bit(a) * bit(b));
  });
}

Sign reorder_sign(std::span<const BiDegree> degrees, std::span<const std::size_t> perm) {
  return inversion_sign(degrees, perm, [](BiDegree a, BiDegree b) { return commute_sign(a, b); });
}

Sign odd_merge_sign(std::uint32_t a, std::uint32_t b) noexcept {
  // each generator of b passes every generator of a that sorts after it
  long swaps = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    swaps += std::popcount(a >> (j + 1));
  }
  return Sign::power(swaps);
}

Sign odd_extract_sign(std::uint32_t mask, int index) noexcept {
  return Sign::power(std::popcount(mask & ((1u << index) - 1u)));
}

std::optional<Sign> multiset_merge_sign(std::span<const std::uint8_t> left,
                                        std::span<const std::uint8_t> right,
                                        std::span<const BiDegree> classes) {
  const std::size_t n = classes.size();
  Sign s;
  for (std::size_t k = 0; k < n; ++k) {
    if (left[k] && right[k] && commute_sign(classes[k], classes[k]).negative()) return std::nullopt;
  }
  // right generator k passes every left generator with index > k
  for (std::size_t k = 0; k < n; ++k) {
    if (!right[k]) continue;
    for (std::size_t l = k + 1; l < n; ++l) {
      if (!left[l]) continue;
      if ((static_cast<long>(right[k]) * left[l]) % 2 == 0) continue;
      s *= commute_sign(classes[k], classes[l]);
    }
  }
  return s;
}

BiDegree multiset_degree(std::span<const std::uint8_t> counts, std::span<const BiDegree> classes) {
  BiDegree d;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    d.cohom += counts[k] * classes[k].cohom;
    if (counts[k] & 1) d.parity += classes[k].parity;
  }
  return d;
}

}  // namespace sbv

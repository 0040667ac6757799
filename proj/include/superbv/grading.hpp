#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace sbv {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr Parity& operator+=(Parity& a, Parity b) noexcept { return a = a + b; }
constexpr Parity parity_of(long k) noexcept { return (k & 1) ? Parity::odd : Parity::even; }
constexpr int bit(Parity p) noexcept { return static_cast<int>(p); }

// Exact +1 / -1.
class Sign {
 public:
  constexpr Sign() noexcept = default;
  static constexpr Sign plus() noexcept { return Sign(false); }
  static constexpr Sign minus() noexcept { return Sign(true); }
  // (-1)^e
  static constexpr Sign power(long e) noexcept { return Sign((e & 1) != 0); }

  constexpr int value() const noexcept { return negative_ ? -1 : 1; }
  constexpr bool negative() const noexcept { return negative_; }
  constexpr Sign operator-() const noexcept { return Sign(!negative_); }
  constexpr Sign operator*(Sign o) const noexcept { return Sign(negative_ != o.negative_); }
  constexpr Sign& operator*=(Sign o) noexcept { return *this = *this * o; }
  friend constexpr bool operator==(Sign, Sign) noexcept = default;

 private:
  constexpr explicit Sign(bool neg) noexcept : negative_(neg) {}
  bool negative_ = false;
};

struct BiDegree {
  int cohom = 0;
  Parity parity = Parity::even;
  friend constexpr bool operator==(BiDegree, BiDegree) noexcept = default;
};

constexpr BiDegree operator+(BiDegree a, BiDegree b) noexcept {
  return {a.cohom + b.cohom, a.parity + b.parity};
}

// (-1)^{cohom(a)cohom(b) + |a||b|}
constexpr Sign commute_sign(BiDegree a, BiDegree b) noexcept {
  return Sign::power(static_cast<long>(a.cohom) * b.cohom + bit(a.parity) * bit(b.parity));
}

// The new sequence is (x[perm[0]], x[perm[1]], ...). Throws std::invalid_argument
// when perm is not a bijection on positions.
Sign reorder_sign(std::span<const Parity> parities, std::span<const std::size_t> perm);
Sign reorder_sign(std::span<const BiDegree> degrees, std::span<const std::size_t> perm);

// Odd generators encoded as bit masks, ascending bit order is the canonical order.
// Sign of rewriting (sorted a)(sorted b) as sorted(a|b); a and b must be disjoint.
Sign odd_merge_sign(std::uint32_t a, std::uint32_t b) noexcept;
// Sign of moving generator `index` (present in mask) to the front.
Sign odd_extract_sign(std::uint32_t mask, int index) noexcept;

// Multisets of generators stored as multiplicity counts; generator k has bidegree
// classes[k]. Sign of rewriting (sorted left)(sorted right) as the sorted union,
// or nullopt when the product vanishes (a repeated generator that squares to zero).
std::optional<Sign> multiset_merge_sign(std::span<const std::uint8_t> left,
                                        std::span<const std::uint8_t> right,
                                        std::span<const BiDegree> classes);

// Total bidegree of a multiset.
BiDegree multiset_degree(std::span<const std::uint8_t> counts, std::span<const BiDegree> classes);

}  // namespace sbv

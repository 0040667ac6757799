#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superbv/grading.hpp"
#include "superbv/scalar.hpp"

namespace sbv {

inline constexpr int kMaxEvenPairs = 4;
inline constexpr int kMaxOddPairs = 4;

// n even coordinate pairs (z, zb), m odd pairs (th, thb), truncation at even degree cap.
struct RingSignature {
  int n = 0;
  int m = 0;
  int cap = 6;

  int directions() const noexcept { return n + m; }
  Parity direction_parity(int k) const noexcept { return k < n ? Parity::even : Parity::odd; }
  void validate() const;
  friend bool operator==(const RingSignature&, const RingSignature&) = default;
};

enum class GenKind : std::uint8_t { z, zbar, theta, thetabar };

struct Generator {
  GenKind kind = GenKind::z;
  int index = 0;  // zero based

  Parity parity() const noexcept {
    return (kind == GenKind::theta || kind == GenKind::thetabar) ? Parity::odd : Parity::even;
  }
  bool barred() const noexcept { return kind == GenKind::zbar || kind == GenKind::thetabar; }
  Generator conjugate() const noexcept;
  friend bool operator==(const Generator&, const Generator&) = default;
};

// Holomorphic / antiholomorphic coordinate generator for direction k (0 <= k < n+m).
Generator holomorphic_generator(const RingSignature& sig, int k);
Generator antiholomorphic_generator(const RingSignature& sig, int k);

struct Monomial {
  std::array<std::uint8_t, 2 * kMaxEvenPairs> exps{};  // z_1..z_n, zb_1..zb_n
  std::uint16_t odd = 0;                                // bits th_1..th_m, thb_1..thb_m
  std::uint8_t degree = 0;

  Parity parity() const noexcept;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded order: by even degree, then exponent vectors descending, then odd subsets lex.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

class Jet {
 public:
  using TermMap = std::map<Monomial, GaussianRational, MonomialOrder>;

  explicit Jet(const RingSignature& sig);
  Jet(const RingSignature& sig, const GaussianRational& c);
  static Jet generator(const RingSignature& sig, Generator g);

  const RingSignature& signature() const noexcept { return sig_; }
  int precision() const noexcept { return prec_; }
  const TermMap& terms() const noexcept { return terms_; }

  void add_term(const Monomial& mono, const GaussianRational& c);
  // Lowers precision to min(current, p), dropping terms above it.
  Jet truncated(int p) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_holomorphic() const noexcept;
  // nullopt when inhomogeneous; zero counts as even.
  std::optional<Parity> parity() const noexcept;
  Jet part(Parity p) const;
  GaussianRational body() const;
  bool has_unit_body() const { return !body().is_zero(); }

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const GaussianRational& c);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const GaussianRational& c) { return a *= c; }
  friend Jet operator*(const GaussianRational& c, Jet a) { return a *= c; }
  friend Jet operator*(const Jet& a, const Jet& b);

  // Difference vanishes within the common precision.
  friend bool operator==(const Jet& a, const Jet& b);
  // Same terms and same precision.
  bool identical(const Jet& o) const { return prec_ == o.prec_ && sig_ == o.sig_ && terms_ == o.terms_; }

 private:
  friend Jet mul(const Jet&, const Jet&);
  RingSignature sig_;
  int prec_;
  TermMap terms_;
};

Jet mul(const Jet& f, const Jet& g);
// Left superderivation.
Jet partial(const Jet& f, Generator g);
Jet invert(const Jet& f);
Jet conjugate(const Jet& f);
// Antiderivative in an even generator with zero integration constant.
Jet integrate(const Jet& f, Generator g);
// exp(u) for u with zero body.
Jet exp_nilpotent(const Jet& u);

// images: one per generator slot of f's ring, in the order z, zb, th, thb; all in `target`.
// Even images must vanish at the origin.
Jet substitute(const Jet& f, std::span<const Jet> images, const RingSignature& target);
int generator_slot(const RingSignature& sig, Generator g);
int slot_count(const RingSignature& sig);

// Names used by the canonical renderer; defaults are z1, zb1, th1, thb1.
struct GeneratorNames {
  std::vector<std::string> even;  // 2n names
  std::vector<std::string> odd;   // 2m names
  static GeneratorNames standard(const RingSignature& sig);
};

// Canonical text; appends ` + O(k)` when precision is below the cap.
std::string render(const Jet& f);
std::string render(const Jet& f, const GeneratorNames& names);

}  // namespace sbv

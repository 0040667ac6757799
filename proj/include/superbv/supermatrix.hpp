#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "superbv/jet.hpp"

namespace sbv {

// Square (p|q)-graded matrix over the jet ring: rows/columns 0..p-1 even, p..p+q-1 odd.
class SuperMatrix {
 public:
  SuperMatrix(const RingSignature& sig, int p, int q);
  static SuperMatrix identity(const RingSignature& sig, int p, int q);

  const RingSignature& signature() const noexcept { return sig_; }
  int even_size() const noexcept { return p_; }
  int odd_size() const noexcept { return q_; }
  int size() const noexcept { return p_ + q_; }
  Parity index_parity(int i) const noexcept { return i < p_ ? Parity::even : Parity::odd; }

  Jet& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * size() + c)]; }
  const Jet& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * size() + c)]; }

  // Parity P with every entry (r,c) of parity |r|+|c|+P; nullopt when inhomogeneous.
  std::optional<Parity> parity() const;
  bool is_even() const { return parity() == Parity::even; }

  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

 private:
  RingSignature sig_;
  int p_;
  int q_;
  std::vector<Jet> a_;
};

// det(A - B D^{-1} C) det(D)^{-1}.
Jet sdet(const SuperMatrix& m);
// sum_i (-1)^{|i|(|i|+|M|)} M_ii for homogeneous M (trA - trD when M is even).
Jet str(const SuperMatrix& m);
// (M^ST)_{ab} = (-1)^{|b| + |a||b|} M_{ba}
SuperMatrix supertranspose(const SuperMatrix& m);
SuperMatrix inverse(const SuperMatrix& m);

// Determinant of a square block of pairwise commuting (even) entries.
Jet even_determinant(const std::vector<Jet>& entries, int k, const RingSignature& sig);

std::string render(const SuperMatrix& m);
nlohmann::json to_json(const SuperMatrix& m);

}  // namespace sbv

#pragma once

#include <string>
#include <vector>

#include "superbv/supermatrix.hpp"

namespace sbv {

// Coordinates xi^1..xi^{n+m}: the first n even, the rest odd.
struct Chart {
  RingSignature sig;
  std::string name = "xi";
  friend bool operator==(const Chart&, const Chart&) = default;
};

// phi: source -> target, given by the pullbacks phi#(target coordinate i) in the source ring.
struct Morphism {
  Chart source;
  Chart target;
  std::vector<Jet> images;
};

// Checks parities and that even pullbacks vanish at the origin.
Morphism make_morphism(const Chart& source, const Chart& target, std::vector<Jet> images);
Morphism identity_morphism(const Chart& chart);
bool is_holomorphic(const Morphism& phi);

// Images for every generator slot of the target ring (barred slots conjugated).
std::vector<Jet> slot_images(const Morphism& phi);
Jet pullback(const Morphism& phi, const Jet& g);

// d phi^i_k = (-1)^{(|k|+|i|)|i|} d(phi# target^i)/d source^k
SuperMatrix differential(const Morphism& phi);
// (psi o phi)# = phi# o psi#
Morphism compose(const Morphism& psi, const Morphism& phi);
// Holomorphic phi with invertible linear part.
Morphism invert_morphism(const Morphism& phi);

// X = sum_k d_k . X^k (coefficients on the right).
struct VectorField {
  RingSignature sig;
  std::vector<Jet> coeffs;
  static VectorField coordinate(const RingSignature& sig, int k);
};
Jet apply(const VectorField& x, const Jet& g);
// Source-chart coefficients of phi_* pulled back field: (d phi)^{-1} phi#(X).
VectorField pull_vector(const Morphism& phi, const VectorField& x);

// sum_m d xi^m . a_m
struct Covector {
  RingSignature sig;
  std::vector<Jet> coeffs;
};
Covector exterior_derivative(const Jet& f);
// (d phi)^{ST} phi#(a)
Covector pull_covector(const Morphism& phi, const Covector& w);
// (d xi^m a)[d_k b] = (-1)^{|a||k| + |m|} delta^m_k a b
Jet pair(const Covector& w, const VectorField& x);

// h [d xi]
struct BerSection {
  Chart chart;
  Jet coefficient;
  Parity parity() const;
};
BerSection pull_ber(const Morphism& phi, const BerSection& s);

std::string render(const BerSection& s);
std::string render(const Morphism& phi, const std::string& name);

}  // namespace sbv

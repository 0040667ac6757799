#pragma once

#include <string>
#include <vector>

#include "superbv/bvcalc.hpp"
#include "superbv/charts.hpp"
#include "superbv/supermatrix.hpp"

namespace sbv {

// Left symbols: nabla_{d_k} d_l = Gamma^q_{kl} d_q, stored in the complex picture on T^{1,0}.
class Christoffel {
 public:
  explicit Christoffel(const Chart& chart);

  const Chart& chart() const noexcept { return chart_; }
  int size() const noexcept { return chart_.sig.directions(); }
  Jet& operator()(int q, int k, int l) { return g_[index(q, k, l)]; }
  const Jet& operator()(int q, int k, int l) const { return g_[index(q, k, l)]; }
  // d_q . ^R Gamma^q_{kl} = Gamma^q_{kl} d_q
  Jet right(int q, int k, int l) const;
  Parity expected_parity(int q, int k, int l) const;
  // Throws ParityError when a symbol has the wrong parity.
  void validate() const;
  bool is_holomorphic() const;
  friend bool operator==(const Christoffel& a, const Christoffel& b) { return a.chart_ == b.chart_ && a.g_ == b.g_; }

 private:
  std::size_t index(int q, int k, int l) const {
    return static_cast<std::size_t>((q * size() + k) * size() + l);
  }
  Chart chart_;
  std::vector<Jet> g_;
};

// nabla_{d_k} [d xi] = a[k] [d xi]; `abar` holds the d/d xibar^k coefficients (empty means zero).
struct BerConnection {
  Chart chart;
  std::vector<Jet> a;
  std::vector<Jet> abar;
  friend bool operator==(const BerConnection& x, const BerConnection& y) {
    return x.chart == y.chart && x.a == y.a;
  }
};

// A_k = -Delta(d_k)
BerConnection bv_connection(const DeltaOperator& d);
// A_l = -str(^R Gamma_{l.}^{.})
BerConnection ber_from_tangent(const Christoffel& g);

// phi: zeta -> xi. Gamma lives on xi, the result on zeta.
Christoffel transform_christoffel(const Morphism& phi, const Christoffel& g);
// Defined by phi*(nabla_X s) = (phi* nabla)_{phi* X} phi* s.
BerConnection transform_ber_connection(const Morphism& phi, const BerConnection& c);
// phi# o Delta o (phi^{-1})# on the coordinate vectors of the source chart.
DeltaOperator transport_delta(const Morphism& phi, const DeltaOperator& d);

// R[l][m] for the holomorphic directions, or for holomorphic then antiholomorphic ones.
std::vector<std::vector<Jet>> curvature_ber(const BerConnection& c, bool antiholomorphic = false);
bool is_flat(const std::vector<std::vector<Jet>>& r);

// Coefficient of nabla_{d_k} omega for every k.
std::vector<Jet> covariant_derivative(const BerConnection& c, const BerSection& omega);
// h Delta(d_k) - d_k h for every k.
std::vector<Jet> delta_formula_residual(const BerSection& omega, const DeltaOperator& d);
// h with h(0) = 1 and h Delta(d_k) = d_k h; PreconditionError when the table is not integrable
// or not holomorphic.
Jet solve_delta_formula(const DeltaOperator& d);

// Path in `chart` over a ring with time t = z1, auxiliary odd parameters th1..thL and optionally
// further even parameters z2.., truncated at total order `order`.
struct FormalPath {
  Chart chart;
  RingSignature ring;
  std::vector<Jet> images;  // gamma#(xi^l)
  int order() const noexcept { return ring.cap; }
};
RingSignature path_ring(int aux_odd, int order);
FormalPath make_path(const Chart& chart, const RingSignature& ring, std::vector<Jet> images);
GeneratorNames path_names(const RingSignature& ring);
// gamma#(f) for a function on the chart.
Jet pull_along(const FormalPath& path, const Jet& f);

// Unique formal solution with P(0) = 1:
//   d_t P = -d_t(gamma#(xi^l)) gamma#(A_l) P
Jet parallel_transport(const BerConnection& c, const FormalPath& path);
//   d_t P^m_p = -(-1)^{m(k+1)} d_t(gamma#(xi^l)) gamma#(Gamma^m_{lk}) P^k_p
SuperMatrix parallel_transport(const Christoffel& g, const FormalPath& path);

struct CheckReport {
  bool passed = true;
  std::string detail;
};

// sdet(P)^{-1} against the transport of ber_from_tangent(Gamma), exactly to the path order.
CheckReport check_sdet_transport(const Christoffel& g, const FormalPath& path);
// PreconditionError unless str(^R Gamma_{k.}^{.}) = d_k(h) h^{-1} for every k.
CheckReport check_cy_consistency(const Jet& h, const Christoffel& g);

std::string render(const Christoffel& g);
std::string render(const BerConnection& c);

}  // namespace sbv

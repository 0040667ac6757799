#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "superbv/mvform.hpp"

namespace sbv {

// sum dxibar^I d_J f_{I,J} (x) [d xi]: the multivector-form body carries the coefficients,
// the Berezinian frame sits on the far right.
struct IntegralForm {
  MultiVectorForm body;
  const Chart& chart() const noexcept { return body.chart(); }
  friend bool operator==(const IntegralForm& a, const IntegralForm& b) { return a.body == b.body; }
};

IntegralForm eta(const BerSection& omega, const MultiVectorForm& a);
MultiVectorForm eta_inverse(const BerSection& omega, const IntegralForm& s);

// Divergence-type operator; `q_sign = false` drops the (-1)^q prefactor (negative control only).
IntegralForm partial_int(const IntegralForm& s, bool q_sign = true);
IntegralForm dbar(const IntegralForm& s);
IntegralForm pull_integral(const Morphism& phi, const IntegralForm& s);
std::string render(const IntegralForm& s);

// eta^{-1} o partial o eta
MultiVectorForm delta_omega(const BerSection& omega, const MultiVectorForm& a);

using SectionOperator = std::function<MultiVectorForm(const MultiVectorForm&)>;

// Values on the coordinate vectors; zero on functions and (0,1)-forms.
struct DeltaOperator {
  Chart chart;
  std::vector<Jet> table;
};

// d_k h * h^{-1}
DeltaOperator delta_table(const BerSection& omega);

enum class Peel { left, right };
// Extension to all sections through the bracket compatibility recursion.
MultiVectorForm extend_delta(const DeltaOperator& d, const MultiVectorForm& a, Peel order = Peel::left);
SectionOperator as_operator(const DeltaOperator& d, Peel order = Peel::left);

// c * interior product with d/d zbar^k (k an even direction): a deg-odd derivation lowering q.
MultiVectorForm barred_contraction(const MultiVectorForm& a, int k, const GaussianRational& c);

// Pi_{p-1,q} o Delta on each (p,q) component.
MultiVectorForm project_apply(const SectionOperator& general, const MultiVectorForm& a);

struct StrongProjection {
  DeltaOperator table;
  // Literal projection of the general operator, for comparison with the table extension.
  SectionOperator literal;
};
StrongProjection project_strong(const SectionOperator& general, const Chart& chart);

struct AxiomResult {
  std::string check;
  bool passed = true;
  std::string counterexample;
};

// Runs over consecutive triples of homogeneous samples: derivation property of delta_alpha,
// bracket compatibility, Delta^2 = 0, dbar anticommutation and the bracket identity for Delta.
std::vector<AxiomResult> check_bv_axioms(const SectionOperator& delta, std::span<const MultiVectorForm> samples);

// Manin side: [d xi] f (x) pi_J, pi_k = (d/d xi^k) Pi of parity |k| + 1, stored as vector keys
// with left coefficients.
struct ManinForm {
  MultiVectorForm body;
  friend bool operator==(const ManinForm& a, const ManinForm& b) { return a.body == b.body; }
};

// Defined for q = 0 integral forms.
ManinForm manin_gamma(const IntegralForm& s);
IntegralForm manin_gamma_inverse(const ManinForm& t);
ManinForm manin_delta(const ManinForm& t);
std::string render(const ManinForm& t);

}  // namespace sbv

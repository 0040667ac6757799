#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "superbv/charts.hpp"

namespace sbv {

inline constexpr int kMaxDirections = kMaxEvenPairs + kMaxOddPairs;

// Multiplicities of the barred forms d xi-bar^k and the vectors d/d xi^k, indexed by direction.
struct MVKey {
  std::array<std::uint8_t, kMaxDirections> bar{};
  std::array<std::uint8_t, kMaxDirections> vec{};
  friend bool operator==(const MVKey&, const MVKey&) = default;

  int q() const noexcept;
  int p() const noexcept;
};

// Lower (q, p) first, then earlier directions first.
struct MVKeyOrder {
  bool operator()(const MVKey& a, const MVKey& b) const noexcept;
};

// Bidegree class of the generators d xi-bar^k and d/d xi^k: {1, |xi^k|}.
std::array<BiDegree, kMaxDirections> direction_classes(const RingSignature& sig);
// Bidegree of the basis element d xi-bar^I d_J, coefficient excluded.
BiDegree key_degree(const RingSignature& sig, const MVKey& key);

// sum dxibar^I d_J f_{I,J}: forms first, then vectors, coefficient on the right.
class MultiVectorForm {
 public:
  using TermMap = std::map<MVKey, Jet, MVKeyOrder>;

  explicit MultiVectorForm(Chart chart);
  static MultiVectorForm function(const Chart& chart, const Jet& f);
  static MultiVectorForm vector(const Chart& chart, int k);
  static MultiVectorForm barred_form(const Chart& chart, int k);
  static MultiVectorForm from_vector_field(const Chart& chart, const VectorField& x);

  const Chart& chart() const noexcept { return chart_; }
  const RingSignature& signature() const noexcept { return chart_.sig; }
  // May hold zero coefficients whose precision is below the cap.
  const TermMap& terms() const noexcept { return terms_; }
  // Lowest precision of any coefficient that contributed, including cancelled ones.
  int precision_floor() const noexcept { return floor_; }

  void add_term(const MVKey& key, const Jet& coefficient);
  Jet coefficient(const MVKey& key) const;
  bool is_zero() const noexcept;

  // Zero counts as {0, even}; nullopt when terms of different bidegree are present.
  std::optional<BiDegree> bidegree() const;
  // (p, q) of a (0,q)-form with values in p-vectors; nullopt when mixed or zero.
  std::optional<std::pair<int, int>> pq() const;
  MultiVectorForm component(int p, int q) const;
  MultiVectorForm truncated(int prec) const;

  MultiVectorForm operator-() const;
  MultiVectorForm& operator+=(const MultiVectorForm& o);
  MultiVectorForm& operator-=(const MultiVectorForm& o);
  MultiVectorForm& operator*=(const GaussianRational& c);
  friend MultiVectorForm operator+(MultiVectorForm a, const MultiVectorForm& b) { return a += b; }
  friend MultiVectorForm operator-(MultiVectorForm a, const MultiVectorForm& b) { return a -= b; }
  friend MultiVectorForm operator*(MultiVectorForm a, const GaussianRational& c) { return a *= c; }

  friend bool operator==(const MultiVectorForm& a, const MultiVectorForm& b);

 private:
  Chart chart_;
  TermMap terms_;
  int floor_;
};

MultiVectorForm wedge(const MultiVectorForm& a, const MultiVectorForm& b);
// Left multiplication by a function.
MultiVectorForm wedge(const Jet& f, const MultiVectorForm& a);
MultiVectorForm dbar(const MultiVectorForm& a);
MultiVectorForm schouten(const MultiVectorForm& a, const MultiVectorForm& b);
// Lie superbracket of vector fields.
VectorField bracket(const VectorField& w, const VectorField& v);
// a lives on phi's target chart; the result on its source chart.
MultiVectorForm pull_mvform(const Morphism& phi, const MultiVectorForm& a);

// Cohomological degree p + q and parity of a homogeneous section; zero gives {0, even}.
BiDegree degree_of(const MultiVectorForm& a);

std::string direction_name(const RingSignature& sig, int k);
std::string render(const MultiVectorForm& a);

}  // namespace sbv

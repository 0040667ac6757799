#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "superbv/charts.hpp"
#include "superbv/connect.hpp"
#include "superbv/jet.hpp"
#include "superbv/mvform.hpp"

namespace sbv {

// Deterministic generator; bounded draws avoid std distributions so streams are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(int num, int den) { return static_cast<int>(next() % static_cast<std::uint64_t>(den)) < num; }

 private:
  std::mt19937_64 eng_;
};

// Seed for an independent stream (suite, check, trial) derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);
std::uint64_t hash_name(const char* s);

struct JetShape {
  int max_degree = 2;
  int max_terms = 6;
  bool holomorphic = false;
  bool constant_term = true;
};

GaussianRational random_scalar(Rng& rng);
// parity nullopt draws an inhomogeneous element.
Jet random_jet(const RingSignature& sig, Rng& rng, std::optional<Parity> parity, JetShape shape = {});
// Even unit with random nonzero body.
Jet random_unit(const RingSignature& sig, Rng& rng, bool holomorphic = true);

// Even (p|q) matrix; with `invertible` the diagonal carries units and the rest vanishes at the origin.
SuperMatrix random_even_matrix(const RingSignature& sig, int p, int q, Rng& rng, bool invertible = true);

struct MorphismShape {
  int extra_terms = 2;        // nonlinear terms per pullback
  bool nilpotent_shift = true;  // even pullbacks may carry th_a th_b terms
};

// Holomorphic invertible map source -> target (same dimensions).
Morphism random_morphism(const Chart& source, const Chart& target, Rng& rng, MorphismShape shape = {});

struct FormShape {
  int max_terms = 3;
  int max_odd_multiplicity = 2;
  JetShape coefficient{2, 3, false, true};
};

// Homogeneous section with the given (p, q) and total parity; zero when no basis element fits.
MultiVectorForm random_mvform(const Chart& chart, Rng& rng, int p, int q, Parity parity, FormShape shape = {});

// Holomorphic symbols of the right parities.
Christoffel random_christoffel(const Chart& chart, Rng& rng, JetShape shape = {1, 3, true, true});

// Path over path_ring(aux_odd, order); even components start at the origin.
FormalPath random_path(const Chart& chart, Rng& rng, int aux_odd, int order);

// Holomorphic unit h and symbols with str(^R Gamma_{k.}^{.}) = d_k(h) h^{-1}: random symbols,
// then the defect of each direction is put on Gamma^{xi^1}_{k xi^1}.
struct CYPair {
  Jet h;
  Christoffel gamma;
};
CYPair random_cy_pair(const Chart& chart, Rng& rng);

}  // namespace sbv

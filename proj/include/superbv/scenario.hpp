#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "superbv/connect.hpp"
#include "superbv/mvform.hpp"

namespace sbv {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, parity, unknown_name, cap_overflow, semantic };
  ParseError(Kind kind, int line, int column, const std::string& message);
  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

// Truncation cap used when a `ring` statement gives none: SUPERBV_DEFAULT_CAP, else 6.
int default_cap();

struct Scenario {
  RingSignature sig{1, 1, 6};
  std::map<std::string, Jet> functions;
  std::map<std::string, MultiVectorForm> sections;
  std::map<std::string, BerSection> bers;
  std::map<std::string, Morphism> maps;
  std::map<std::string, Christoffel> connections;
  std::map<std::string, FormalPath> paths;
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  int trials = 25;
  int order = 4;

  Chart chart() const { return Chart{sig}; }
};

Scenario parse_scenario(std::string_view text);

using Value = std::variant<Jet, MultiVectorForm>;

// Expression over the scenario ring, with access to its definitions.
Value evaluate(const Scenario& s, std::string_view expr);
// Standalone expression parsers over the standard generator names.
Jet parse_jet(const RingSignature& sig, std::string_view text);
Jet parse_jet(const RingSignature& sig, const GeneratorNames& names, std::string_view text);
MultiVectorForm parse_mvform(const Chart& chart, std::string_view text);
// "(h) [dxi]" or a bare coefficient.
BerSection parse_ber(const Chart& chart, std::string_view text);
// "map NAME { zeta1 = ...; ... }" as produced by render(Morphism, name).
Morphism parse_map(const Chart& chart, std::string_view text);

std::string render(const Value& v);

}  // namespace sbv

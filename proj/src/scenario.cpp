#include "superbv/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>
#include <set>

#include "superbv/bvcalc.hpp"
#include "superbv/errors.hpp"
#include "superbv/suites.hpp"

namespace sbv {

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

int default_cap() {
  if (const char* env = std::getenv("SUPERBV_DEFAULT_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v <= 16) return static_cast<int>(v);
  }
  return 6;
}

namespace {

using Kind = ParseError::Kind;

struct Token {
  enum class Type { ident, number, symbol, end } type;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int l = line, co = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Token::Type::ident, std::string(src.substr(i, j - i)), l, co});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Type::number, std::string(src.substr(i, j - i)), l, co});
      advance(j - i);
    } else if (std::string_view("+-*/^(){}[];=|,").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::symbol, std::string(1, c), l, co});
      advance(1);
    } else {
      throw ParseError(Kind::syntax, l, co, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Type::end, "", line, col});
  return out;
}

struct ExprContext {
  RingSignature sig;
  GeneratorNames names;
  bool forms = true;
  const Scenario* scenario = nullptr;
};

std::optional<Generator> lookup_generator(const ExprContext& cx, const std::string& name) {
  const auto& s = cx.sig;
  for (std::size_t k = 0; k < cx.names.even.size(); ++k)
    if (cx.names.even[k] == name) {
      const int i = static_cast<int>(k);
      return i < s.n ? Generator{GenKind::z, i} : Generator{GenKind::zbar, i - s.n};
    }
  for (std::size_t k = 0; k < cx.names.odd.size(); ++k)
    if (cx.names.odd[k] == name) {
      const int i = static_cast<int>(k);
      return i < s.m ? Generator{GenKind::theta, i} : Generator{GenKind::thetabar, i - s.m};
    }
  return std::nullopt;
}

std::optional<int> direction_index(const RingSignature& sig, const std::string& name) {
  for (int k = 0; k < sig.directions(); ++k)
    if (direction_name(sig, k) == name) return k;
  return std::nullopt;
}

Chart chart_of(const RingSignature& sig) { return Chart{sig}; }

MultiVectorForm as_form(const Value& v, const RingSignature& sig) {
  if (const auto* j = std::get_if<Jet>(&v)) return MultiVectorForm::function(chart_of(sig), *j);
  return std::get<MultiVectorForm>(v);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at_end() const { return peek().type == Token::Type::end; }
  bool is_symbol(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).type == Token::Type::symbol && peek(ahead).text == s;
  }
  bool is_ident(const char* s) const { return peek().type == Token::Type::ident && peek().text == s; }

  [[noreturn]] void fail(Kind k, const Token& t, const std::string& msg) const {
    throw ParseError(k, t.line, t.col, msg);
  }
  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    fail(Kind::syntax, t, "expected " + wanted + ", found " + (t.type == Token::Type::end ? "end of input" : "'" + t.text + "'"));
  }

  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect_symbol(const char* s) {
    if (!is_symbol(s)) unexpected(std::string("'") + s + "'");
    take();
  }
  std::string expect_ident(const std::string& what = "a name") {
    if (peek().type != Token::Type::ident) unexpected(what);
    return take().text;
  }
  long expect_number() {
    if (peek().type != Token::Type::number) unexpected("a number");
    const Token& t = take();
    if (t.text.size() > 9) fail(Kind::semantic, t, "number too large");
    return std::stol(t.text);
  }

  // expr := term (('+' | '-') term)*
  Value expr(const ExprContext& cx) {
    Value v = term(cx);
    while (is_symbol("+") || is_symbol("-")) {
      const bool minus = take().text == "-";
      Value r = term(cx);
      v = add(cx, v, r, minus);
    }
    return v;
  }

 private:
  Value add(const ExprContext& cx, const Value& a, const Value& b, bool minus) {
    if (std::holds_alternative<Jet>(a) && std::holds_alternative<Jet>(b))
      return minus ? std::get<Jet>(a) - std::get<Jet>(b) : std::get<Jet>(a) + std::get<Jet>(b);
    MultiVectorForm x = as_form(a, cx.sig), y = as_form(b, cx.sig);
    return minus ? x - y : x + y;
  }

  Value mul(const ExprContext& cx, const Value& a, const Value& b) {
    if (std::holds_alternative<Jet>(a) && std::holds_alternative<Jet>(b)) return std::get<Jet>(a) * std::get<Jet>(b);
    return wedge(as_form(a, cx.sig), as_form(b, cx.sig));
  }

  // term := unary (('*' | '/') unary)*
  Value term(const ExprContext& cx) {
    Value v = unary(cx);
    while (is_symbol("*") || is_symbol("/")) {
      const Token op = take();
      const Token& at = peek();
      Value r = unary(cx);
      if (op.text == "*") {
        v = mul(cx, v, r);
        continue;
      }
      const Jet* d = std::get_if<Jet>(&r);
      if (!d || d->terms().size() != 1 || d->terms().begin()->first.degree != 0 ||
          d->terms().begin()->first.odd != 0)
        fail(Kind::semantic, at, "division only by a nonzero constant");
      const GaussianRational inv = GaussianRational(1) / d->terms().begin()->second;
      if (auto* j = std::get_if<Jet>(&v)) *j *= inv;
      else std::get<MultiVectorForm>(v) = std::get<MultiVectorForm>(v) * inv;
    }
    return v;
  }

  Value unary(const ExprContext& cx) {
    if (is_symbol("-")) {
      take();
      Value v = unary(cx);
      if (auto* j = std::get_if<Jet>(&v)) return -*j;
      return -std::get<MultiVectorForm>(v);
    }
    if (is_symbol("+")) {
      take();
      return unary(cx);
    }
    return power(cx);
  }

  // power := atom ('^' number)? ('^' power)?   a non-numeric right operand of '^' is a wedge factor
  Value power(const ExprContext& cx) {
    Value base = atom(cx);
    if (!is_symbol("^")) return base;
    take();
    const Token& at = peek();
    if (at.type != Token::Type::number) {
      need_forms(cx, at);
      return mul(cx, base, power(cx));
    }
    const long k = expect_number();
    if (k < 1) fail(Kind::semantic, at, "exponent must be positive");
    if (const auto* j = std::get_if<Jet>(&base)) {
      int low = -1;
      for (const auto& [mono, c] : j->terms())
        if (low < 0 || mono.degree < low) low = mono.degree;
      if (low > 0 && static_cast<long>(low) * k > cx.sig.cap)
        fail(Kind::cap_overflow, at, "power exceeds the degree cap " + std::to_string(cx.sig.cap));
    }
    Value r = base;
    for (long i = 1; i < k; ++i) r = mul(cx, r, base);
    if (is_symbol("^")) {
      take();
      need_forms(cx, peek());
      return mul(cx, r, power(cx));
    }
    return r;
  }

  std::vector<Token> ident_args(std::size_t count) {
    std::vector<Token> out;
    expect_symbol("(");
    for (std::size_t i = 0; i < count; ++i) {
      if (i) expect_symbol(",");
      if (peek().type != Token::Type::ident) unexpected("a name");
      out.push_back(take());
    }
    expect_symbol(")");
    return out;
  }

  std::vector<Value> value_args(const ExprContext& cx) {
    std::vector<Value> out;
    expect_symbol("(");
    out.push_back(expr(cx));
    while (is_symbol(",")) {
      take();
      out.push_back(expr(cx));
    }
    expect_symbol(")");
    return out;
  }

  const Jet& need_jet(const Value& v, const Token& at, const char* fn) const {
    if (!std::holds_alternative<Jet>(v)) fail(Kind::semantic, at, std::string(fn) + " expects a function");
    return std::get<Jet>(v);
  }

  void need_forms(const ExprContext& cx, const Token& at) const {
    if (!cx.forms) fail(Kind::semantic, at, "forms are not allowed here");
  }

  Value call(const ExprContext& cx, const Token& name) {
    const std::string& f = name.text;
    if (f == "O") {
      expect_symbol("(");
      const long k = expect_number();
      expect_symbol(")");
      return Jet(cx.sig).truncated(static_cast<int>(k) - 1);
    }
    if (f == "dv") {
      need_forms(cx, name);
      auto a = ident_args(1);
      auto k = direction_index(cx.sig, a[0].text);
      if (!k) fail(Kind::unknown_name, a[0], "unknown direction '" + a[0].text + "'");
      return MultiVectorForm::vector(chart_of(cx.sig), *k);
    }
    if (f == "d") {
      expect_symbol("(");
      Value v = expr(cx);
      expect_symbol(",");
      const Token g = take();
      auto gen = g.type == Token::Type::ident ? lookup_generator(cx, g.text) : std::nullopt;
      if (!gen) fail(Kind::unknown_name, g, "unknown generator '" + g.text + "'");
      expect_symbol(")");
      return partial(need_jet(v, name, "d"), *gen);
    }
    if (f == "delta") {
      need_forms(cx, name);
      expect_symbol("(");
      BerSection w{chart_of(cx.sig), Jet(cx.sig, 1)};
      if (peek().type == Token::Type::ident && is_symbol(",", 1)) {
        const Token wn = take();
        take();
        if (!cx.scenario || !cx.scenario->bers.count(wn.text))
          fail(Kind::unknown_name, wn, "unknown Berezinian section '" + wn.text + "'");
        w = cx.scenario->bers.at(wn.text);
      }
      Value v = expr(cx);
      expect_symbol(")");
      return delta_omega(w, as_form(v, cx.sig));
    }
    auto args = value_args(cx);
    auto arity = [&](std::size_t n) {
      if (args.size() != n) fail(Kind::semantic, name, f + " takes " + std::to_string(n) + " argument(s)");
    };
    if (f == "dbar") {
      need_forms(cx, name);
      arity(1);
      return dbar(as_form(args[0], cx.sig));
    }
    if (f == "schouten") {
      need_forms(cx, name);
      arity(2);
      return schouten(as_form(args[0], cx.sig), as_form(args[1], cx.sig));
    }
    if (f == "conj") {
      arity(1);
      return conjugate(need_jet(args[0], name, "conj"));
    }
    if (f == "inv") {
      arity(1);
      return invert(need_jet(args[0], name, "inv"));
    }
    if (f == "exp") {
      arity(1);
      return exp_nilpotent(need_jet(args[0], name, "exp"));
    }
    fail(Kind::unknown_name, name, "unknown function '" + f + "'");
  }

  Value atom(const ExprContext& cx) {
    const Token& t = peek();
    if (t.type == Token::Type::number) {
      const long v = expect_number();
      return Jet(cx.sig, GaussianRational(v));
    }
    if (is_symbol("(")) {
      take();
      Value v = expr(cx);
      expect_symbol(")");
      return v;
    }
    if (t.type != Token::Type::ident) unexpected("an operand");
    const Token name = take();
    if (is_symbol("(")) return call(cx, name);
    if (name.text == "i") return Jet(cx.sig, GaussianRational::i());
    if (cx.forms && (name.text == "dzb" || name.text == "dthb") && is_symbol("^") &&
        peek(1).type == Token::Type::number) {
      take();
      const Token idx = peek();
      const long k = expect_number();
      const int count = name.text == "dzb" ? cx.sig.n : cx.sig.m;
      if (k < 1 || k > count) fail(Kind::unknown_name, idx, "no direction " + name.text + "^" + idx.text);
      return MultiVectorForm::barred_form(chart_of(cx.sig), static_cast<int>(name.text == "dzb" ? k - 1 : cx.sig.n + k - 1));
    }
    if (auto g = lookup_generator(cx, name.text)) return Jet::generator(cx.sig, *g);
    if (cx.forms && name.text.size() > 1 && name.text[0] == 'd') {
      const std::string rest = name.text.substr(1);
      if (auto g = lookup_generator(cx, rest); g && g->barred()) {
        const int k = g->kind == GenKind::zbar ? g->index : cx.sig.n + g->index;
        return MultiVectorForm::barred_form(chart_of(cx.sig), k);
      }
    }
    if (cx.scenario) {
      const Scenario& s = *cx.scenario;
      if (auto it = s.functions.find(name.text); it != s.functions.end()) return it->second;
      if (auto it = s.sections.find(name.text); it != s.sections.end()) {
        need_forms(cx, name);
        return it->second;
      }
      if (auto it = s.bers.find(name.text); it != s.bers.end()) return it->second.coefficient;
    }
    fail(Kind::unknown_name, name, "unknown name '" + name.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

ExprContext standard_context(const RingSignature& sig, const Scenario* s) {
  return ExprContext{sig, GeneratorNames::standard(sig), true, s};
}

template <class F>
auto translating(const Token& at, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const ParityError& e) {
    throw ParseError(Kind::parity, at.line, at.col, e.what());
  } catch (const std::exception& e) {
    throw ParseError(Kind::semantic, at.line, at.col, e.what());
  }
}

Value parse_whole(const ExprContext& cx, std::string_view text) {
  Parser p(lex(text));
  const Token start = p.peek();
  Value v = translating(start, [&] { return p.expr(cx); });
  if (!p.at_end()) p.unexpected("end of expression");
  return v;
}

class ScenarioParser {
 public:
  explicit ScenarioParser(std::string_view text) : p_(lex(text)) { s_.sig = RingSignature{1, 1, default_cap()}; }

  Scenario run() {
    while (!p_.at_end()) statement();
    return std::move(s_);
  }

 private:
  ExprContext cx() const { return standard_context(s_.sig, &s_); }

  void fresh_name(const Token& t) {
    if (lookup_generator(cx(), t.text) || t.text == "i" || t.text == "t")
      p_.fail(Kind::semantic, t, "'" + t.text + "' is a reserved name");
    if (used_.count(t.text)) p_.fail(Kind::semantic, t, "'" + t.text + "' is already defined");
    used_.insert(t.text);
  }

  void statement() {
    const Token head = p_.peek();
    if (head.type != Token::Type::ident) p_.unexpected("a statement");
    const std::string& kw = head.text;
    p_.take();
    translating(head, [&] {
      if (kw == "ring") ring(head);
      else if (kw == "let") let();
      else if (kw == "section") section();
      else if (kw == "ber") ber();
      else if (kw == "map") map();
      else if (kw == "connection") connection();
      else if (kw == "path") path();
      else if (kw == "order" || kw == "seed" || kw == "trials") setting(kw, head);
      else if (kw == "suite") suite();
      else p_.fail(Kind::syntax, head, "unknown statement '" + kw + "'");
      return 0;
    });
  }

  void ring(const Token& head) {
    if (defined_any_) p_.fail(Kind::semantic, head, "ring must precede all definitions");
    RingSignature sig;
    sig.n = static_cast<int>(p_.expect_number());
    p_.expect_symbol("|");
    sig.m = static_cast<int>(p_.expect_number());
    sig.cap = default_cap();
    if (p_.is_ident("cap")) {
      p_.take();
      sig.cap = static_cast<int>(p_.expect_number());
    }
    p_.expect_symbol(";");
    try {
      sig.validate();
    } catch (const std::exception& e) {
      p_.fail(Kind::semantic, head, e.what());
    }
    s_.sig = sig;
  }

  void let() {
    const Token name = p_.peek();
    p_.expect_ident();
    fresh_name(name);
    p_.expect_symbol("=");
    const Token at = p_.peek();
    ExprContext c = cx();
    c.forms = false;
    Value v = p_.expr(c);
    p_.expect_symbol(";");
    if (!std::holds_alternative<Jet>(v)) p_.fail(Kind::semantic, at, "let expects a function");
    s_.functions.emplace(name.text, std::get<Jet>(v));
    defined_any_ = true;
  }

  void section() {
    const Token name = p_.peek();
    p_.expect_ident();
    fresh_name(name);
    p_.expect_symbol("=");
    const Token at = p_.peek();
    MultiVectorForm f = as_form(p_.expr(cx()), s_.sig);
    p_.expect_symbol(";");
    try {
      (void)degree_of(f);
    } catch (const ParityError& e) {
      p_.fail(Kind::parity, at, std::string("section must be homogeneous: ") + e.what());
    }
    s_.sections.emplace(name.text, f);
    defined_any_ = true;
  }

  void ber() {
    const Token name = p_.peek();
    p_.expect_ident();
    fresh_name(name);
    p_.expect_symbol("=");
    const Token at = p_.peek();
    ExprContext c = cx();
    c.forms = false;
    Value v = p_.expr(c);
    if (p_.is_symbol("[")) {
      p_.take();
      if (p_.expect_ident("dxi") != "dxi") p_.fail(Kind::syntax, at, "expected [dxi]");
      p_.expect_symbol("]");
    }
    p_.expect_symbol(";");
    const Jet& h = std::get<Jet>(v);
    if (h.parity() != Parity::even) p_.fail(Kind::parity, at, "Berezinian coefficient must be even");
    s_.bers.emplace(name.text, BerSection{s_.chart(), h});
    defined_any_ = true;
  }

  std::optional<int> target_index(const std::string& lhs) const {
    if (lhs.rfind("zeta", 0) == 0 && lhs.size() > 4 &&
        std::all_of(lhs.begin() + 4, lhs.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int k = std::stoi(lhs.substr(4)) - 1;
      if (k >= 0 && k < s_.sig.directions()) return k;
      return std::nullopt;
    }
    return direction_index(s_.sig, lhs);
  }

  void map() {
    const Token name = p_.peek();
    p_.expect_ident();
    fresh_name(name);
    p_.expect_symbol("{");
    const Chart c = s_.chart();
    std::vector<Jet> images;
    for (int k = 0; k < s_.sig.directions(); ++k)
      images.push_back(Jet::generator(s_.sig, holomorphic_generator(s_.sig, k)));
    ExprContext ex = cx();
    ex.forms = false;
    while (!p_.is_symbol("}")) {
      const Token lhs = p_.peek();
      p_.expect_ident("a coordinate");
      auto k = target_index(lhs.text);
      if (!k) p_.fail(Kind::unknown_name, lhs, "unknown coordinate '" + lhs.text + "'");
      p_.expect_symbol("=");
      images[static_cast<std::size_t>(*k)] = std::get<Jet>(p_.expr(ex));
      p_.expect_symbol(";");
    }
    p_.expect_symbol("}");
    s_.maps.emplace(name.text, make_morphism(c, c, std::move(images)));
    defined_any_ = true;
  }

  std::string block_name(const char* fallback) {
    if (p_.peek().type == Token::Type::ident) {
      const Token name = p_.take();
      fresh_name(name);
      return name.text;
    }
    return fallback;
  }

  void connection() {
    const Token head = p_.peek();
    const std::string name = block_name("Gamma");
    if (s_.connections.count(name)) p_.fail(Kind::semantic, head, "connection '" + name + "' is already defined");
    p_.expect_symbol("{");
    Christoffel g(s_.chart());
    ExprContext ex = cx();
    ex.forms = false;
    while (!p_.is_symbol("}")) {
      const Token lhs = p_.peek();
      if (p_.expect_ident("Gamma") != "Gamma") p_.fail(Kind::syntax, lhs, "expected Gamma[q][k][l]");
      int idx[3];
      for (int& i : idx) {
        p_.expect_symbol("[");
        const Token d = p_.peek();
        p_.expect_ident("a direction");
        auto k = direction_index(s_.sig, d.text);
        if (!k) p_.fail(Kind::unknown_name, d, "unknown direction '" + d.text + "'");
        i = *k;
        p_.expect_symbol("]");
      }
      p_.expect_symbol("=");
      const Token at = p_.peek();
      Jet v = std::get<Jet>(p_.expr(ex));
      p_.expect_symbol(";");
      if (!v.is_zero() && v.parity() != g.expected_parity(idx[0], idx[1], idx[2]))
        p_.fail(Kind::parity, at, "Christoffel symbol of wrong parity");
      g(idx[0], idx[1], idx[2]) = v;
    }
    p_.expect_symbol("}");
    s_.connections.emplace(name, std::move(g));
    defined_any_ = true;
  }

  void path() {
    const Token head = p_.peek();
    const std::string name = block_name("gamma");
    if (s_.paths.count(name)) p_.fail(Kind::semantic, head, "path '" + name + "' is already defined");
    p_.expect_symbol("{");
    // auxiliary odd parameters eta1..etaL: L is the largest index used in the block
    int aux = 0;
    for (std::size_t a = 0;; ++a) {
      const Token& t = p_.peek(a);
      if (t.type == Token::Type::end || (t.type == Token::Type::symbol && t.text == "}")) break;
      if (t.type == Token::Type::ident && t.text.rfind("eta", 0) == 0 && t.text.size() > 3 &&
          std::all_of(t.text.begin() + 3, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        aux = std::max(aux, std::stoi(t.text.substr(3)));
    }
    const RingSignature ring = path_ring(aux, s_.order);
    ExprContext ex{ring, path_names(ring), false, nullptr};
    std::vector<Jet> images(static_cast<std::size_t>(s_.sig.directions()), Jet(ring));
    while (!p_.is_symbol("}")) {
      const Token lhs = p_.peek();
      p_.expect_ident("a coordinate");
      auto k = direction_index(s_.sig, lhs.text);
      if (!k) p_.fail(Kind::unknown_name, lhs, "unknown coordinate '" + lhs.text + "'");
      p_.expect_symbol("=");
      images[static_cast<std::size_t>(*k)] = std::get<Jet>(p_.expr(ex));
      p_.expect_symbol(";");
    }
    p_.expect_symbol("}");
    s_.paths.emplace(name, make_path(s_.chart(), ring, std::move(images)));
    defined_any_ = true;
  }

  void setting(const std::string& kw, const Token& head) {
    p_.expect_symbol("=");
    const long v = p_.expect_number();
    p_.expect_symbol(";");
    if (kw == "seed") s_.seed = static_cast<std::uint64_t>(v);
    else if (kw == "trials") s_.trials = static_cast<int>(v);
    else {
      if (!s_.paths.empty()) p_.fail(Kind::semantic, head, "order must precede path blocks");
      if (v < 1) p_.fail(Kind::semantic, head, "order must be positive");
      s_.order = static_cast<int>(v);
    }
  }

  void suite() {
    const Token name = p_.peek();
    p_.expect_ident("a suite name");
    p_.expect_symbol(";");
    if (name.text == "all") {
      for (const auto& n : default_suites()) s_.suites.push_back(n);
      return;
    }
    if (!is_suite(name.text)) p_.fail(Kind::unknown_name, name, "unknown suite '" + name.text + "'");
    s_.suites.push_back(name.text);
  }

  Parser p_;
  Scenario s_;
  std::set<std::string> used_;
  bool defined_any_ = false;
};

}  // namespace

Scenario parse_scenario(std::string_view text) { return ScenarioParser(text).run(); }

Value evaluate(const Scenario& s, std::string_view expr) { return parse_whole(standard_context(s.sig, &s), expr); }

Jet parse_jet(const RingSignature& sig, std::string_view text) {
  return parse_jet(sig, GeneratorNames::standard(sig), text);
}

Jet parse_jet(const RingSignature& sig, const GeneratorNames& names, std::string_view text) {
  ExprContext cx{sig, names, false, nullptr};
  return std::get<Jet>(parse_whole(cx, text));
}

MultiVectorForm parse_mvform(const Chart& chart, std::string_view text) {
  MultiVectorForm f = as_form(parse_whole(standard_context(chart.sig, nullptr), text), chart.sig);
  if (!(f.chart() == chart)) {
    MultiVectorForm g(chart);
    for (const auto& [key, c] : f.terms()) g.add_term(key, c);
    return g;
  }
  return f;
}

BerSection parse_ber(const Chart& chart, std::string_view text) {
  std::string_view body = text;
  if (auto pos = body.rfind("[dxi]"); pos != std::string_view::npos) body = body.substr(0, pos);
  return BerSection{chart, parse_jet(chart.sig, body)};
}

Morphism parse_map(const Chart& chart, std::string_view text) {
  std::string src = "ring " + std::to_string(chart.sig.n) + "|" + std::to_string(chart.sig.m) + " cap " +
                    std::to_string(chart.sig.cap) + "; " + std::string(text);
  Scenario s = parse_scenario(src);
  if (s.maps.size() != 1) throw ParseError(Kind::semantic, 1, 1, "expected exactly one map");
  Morphism m = s.maps.begin()->second;
  m.source = chart;
  m.target = chart;
  return m;
}

std::string render(const Value& v) {
  if (const auto* j = std::get_if<Jet>(&v)) return render(*j);
  return render(std::get<MultiVectorForm>(v));
}

}  // namespace sbv

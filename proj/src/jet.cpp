#include "superbv/jet.hpp"

#include <algorithm>
#include <bit>

#include "superbv/errors.hpp"

namespace sbv {

void RingSignature::validate() const {
  if (n < 0 || m < 0 || cap < 0) throw std::invalid_argument("ring signature: negative entry");
  if (n > kMaxEvenPairs || m > kMaxOddPairs)
    throw std::invalid_argument("ring signature: at most 4|4 supported");
}

Generator Generator::conjugate() const noexcept {
  switch (kind) {
    case GenKind::z: return {GenKind::zbar, index};
    case GenKind::zbar: return {GenKind::z, index};
    case GenKind::theta: return {GenKind::thetabar, index};
    case GenKind::thetabar: return {GenKind::theta, index};
  }
  return *this;
}

Generator holomorphic_generator(const RingSignature& sig, int k) {
  if (k < 0 || k >= sig.directions()) throw UnknownGenerator("coordinate direction out of range");
  return k < sig.n ? Generator{GenKind::z, k} : Generator{GenKind::theta, k - sig.n};
}

Generator antiholomorphic_generator(const RingSignature& sig, int k) {
  return holomorphic_generator(sig, k).conjugate();
}

Parity Monomial::parity() const noexcept { return parity_of(std::popcount(odd)); }

namespace {

bool odd_lex_less(std::uint32_t a, std::uint32_t b) noexcept {
  while (a && b) {
    int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

void check_same(const RingSignature& a, const RingSignature& b) {
  if (!(a == b)) throw SignatureMismatch("jets from different rings");
}

struct GenIndex {
  bool odd;
  int pos;  // exponent index or odd bit
};

GenIndex locate(const RingSignature& sig, Generator g) {
  const int limit = (g.kind == GenKind::z || g.kind == GenKind::zbar) ? sig.n : sig.m;
  if (g.index < 0 || g.index >= limit) throw UnknownGenerator("generator not in ring");
  switch (g.kind) {
    case GenKind::z: return {false, g.index};
    case GenKind::zbar: return {false, sig.n + g.index};
    case GenKind::theta: return {true, g.index};
    case GenKind::thetabar: return {true, sig.m + g.index};
  }
  return {false, 0};
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const noexcept {
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.exps != b.exps) return a.exps > b.exps;
  return odd_lex_less(a.odd, b.odd);
}

Jet::Jet(const RingSignature& sig) : sig_(sig), prec_(sig.cap) { sig.validate(); }

Jet::Jet(const RingSignature& sig, const GaussianRational& c) : Jet(sig) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Jet Jet::generator(const RingSignature& sig, Generator g) {
  Jet r(sig);
  auto loc = locate(sig, g);
  Monomial mono;
  if (loc.odd) {
    mono.odd = static_cast<std::uint16_t>(1u << loc.pos);
  } else {
    mono.exps[loc.pos] = 1;
    mono.degree = 1;
  }
  r.add_term(mono, 1);
  return r;
}

void Jet::add_term(const Monomial& mono, const GaussianRational& c) {
  if (mono.degree > prec_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Jet Jet::truncated(int p) const {
  Jet r(*this);
  if (p >= prec_) return r;
  r.prec_ = std::max(p, -1);
  std::erase_if(r.terms_, [&](const auto& kv) { return kv.first.degree > r.prec_; });
  return r;
}

bool Jet::is_holomorphic() const noexcept {
  const std::uint32_t barred_odd = ((1u << sig_.m) - 1u) << sig_.m;
  for (const auto& [mono, c] : terms_) {
    if (mono.odd & barred_odd) return false;
    for (int k = 0; k < sig_.n; ++k)
      if (mono.exps[sig_.n + k]) return false;
  }
  return true;
}

std::optional<Parity> Jet::parity() const noexcept {
  std::optional<Parity> p;
  for (const auto& [mono, c] : terms_) {
    if (!p) p = mono.parity();
    else if (*p != mono.parity()) return std::nullopt;
  }
  return p.value_or(Parity::even);
}

Jet Jet::part(Parity p) const {
  Jet r(*this);
  std::erase_if(r.terms_, [&](const auto& kv) { return kv.first.parity() != p; });
  return r;
}

GaussianRational Jet::body() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? GaussianRational() : it->second;
}

Jet Jet::operator-() const {
  Jet r(*this);
  for (auto& [mono, c] : r.terms_) c = -c;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  check_same(sig_, o.sig_);
  if (o.prec_ < prec_) *this = truncated(o.prec_);
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_same(sig_, o.sig_);
  if (o.prec_ < prec_) *this = truncated(o.prec_);
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

Jet& Jet::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, v] : terms_) v *= c;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) { return mul(a, b); }

bool operator==(const Jet& a, const Jet& b) { return (a - b).is_zero(); }

Jet mul(const Jet& f, const Jet& g) {
  check_same(f.sig_, g.sig_);
  Jet r(f.sig_);
  r.prec_ = std::min(f.prec_, g.prec_);
  const int ne = 2 * f.sig_.n;
  for (const auto& [ma, ca] : f.terms_) {
    for (const auto& [mb, cb] : g.terms_) {
      if (ma.odd & mb.odd) continue;
      const int deg = ma.degree + mb.degree;
      if (deg > r.prec_) continue;
      Monomial mono;
      for (int k = 0; k < ne; ++k) mono.exps[k] = static_cast<std::uint8_t>(ma.exps[k] + mb.exps[k]);
      mono.odd = ma.odd | mb.odd;
      mono.degree = static_cast<std::uint8_t>(deg);
      GaussianRational c = ca * cb;
      if (odd_merge_sign(ma.odd, mb.odd).negative()) c = -c;
      r.add_term(mono, c);
    }
  }
  return r;
}

Jet partial(const Jet& f, Generator g) {
  auto loc = locate(f.signature(), g);
  Jet r(f.signature());
  if (loc.odd) {
    r = r.truncated(f.precision());
    const std::uint32_t b = 1u << loc.pos;
    for (const auto& [mono, c] : f.terms()) {
      if (!(mono.odd & b)) continue;
      Monomial m2 = mono;
      m2.odd = static_cast<std::uint16_t>(mono.odd & ~b);
      r.add_term(m2, odd_extract_sign(mono.odd, loc.pos).negative() ? -c : c);
    }
  } else {
    r = r.truncated(f.precision() - 1);
    for (const auto& [mono, c] : f.terms()) {
      const int e = mono.exps[loc.pos];
      if (e == 0) continue;
      Monomial m2 = mono;
      m2.exps[loc.pos] = static_cast<std::uint8_t>(e - 1);
      m2.degree = static_cast<std::uint8_t>(mono.degree - 1);
      r.add_term(m2, c * GaussianRational(e));
    }
  }
  return r;
}

namespace {

int series_bound(const RingSignature& sig) { return sig.cap + 2 * sig.m + 2; }

}  // namespace

Jet invert(const Jet& f) {
  auto p = f.parity();
  if (!p || *p != Parity::even) throw ParityError("invert: element is not even");
  GaussianRational c = f.body();
  if (c.is_zero()) throw NotAUnit("invert: body constant vanishes");
  const GaussianRational ci = c.inverse();
  Jet u = f * ci - Jet(f.signature(), 1);
  Jet neg_u = -u;
  Jet term = Jet(f.signature(), ci).truncated(f.precision());
  Jet result = term;
  for (int k = 0; k < series_bound(f.signature()); ++k) {
    term = term * neg_u;
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

Jet conjugate(const Jet& f) {
  const auto& sig = f.signature();
  const std::uint32_t low = (1u << sig.m) - 1u;
  Jet r = Jet(sig).truncated(f.precision());
  for (const auto& [mono, c] : f.terms()) {
    Monomial m2 = mono;
    for (int k = 0; k < sig.n; ++k) {
      m2.exps[k] = mono.exps[sig.n + k];
      m2.exps[sig.n + k] = mono.exps[k];
    }
    const std::uint32_t a = (mono.odd & low) << sig.m;
    const std::uint32_t b = (mono.odd >> sig.m) & low;
    m2.odd = static_cast<std::uint16_t>(a | b);
    GaussianRational v = c.conj();
    if (odd_merge_sign(a, b).negative()) v = -v;
    r.add_term(m2, v);
  }
  return r;
}

Jet integrate(const Jet& f, Generator g) {
  auto loc = locate(f.signature(), g);
  if (loc.odd) throw ParityError("integrate: generator must be even");
  Jet r = Jet(f.signature()).truncated(std::min(f.precision() + 1, f.signature().cap));
  for (const auto& [mono, c] : f.terms()) {
    Monomial m2 = mono;
    const int e = mono.exps[loc.pos] + 1;
    m2.exps[loc.pos] = static_cast<std::uint8_t>(e);
    m2.degree = static_cast<std::uint8_t>(mono.degree + 1);
    r.add_term(m2, c * GaussianRational::ratio(1, e));
  }
  return r;
}

Jet exp_nilpotent(const Jet& u) {
  if (!u.body().is_zero()) throw PreconditionError("exp: argument must vanish at the origin");
  Jet term = Jet(u.signature(), 1).truncated(u.precision());
  Jet result = term;
  for (int k = 1; k <= series_bound(u.signature()); ++k) {
    term = term * u * GaussianRational::ratio(1, k);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

int slot_count(const RingSignature& sig) { return 2 * sig.n + 2 * sig.m; }

int generator_slot(const RingSignature& sig, Generator g) {
  auto loc = locate(sig, g);
  return loc.odd ? 2 * sig.n + loc.pos : loc.pos;
}

Jet substitute(const Jet& f, std::span<const Jet> images, const RingSignature& target) {
  const auto& sig = f.signature();
  const int ne = 2 * sig.n;
  if (static_cast<int>(images.size()) != slot_count(sig))
    throw std::invalid_argument("substitute: wrong number of images");
  for (const auto& im : images) check_same(im.signature(), target);

  std::vector<bool> used(images.size(), false);
  for (const auto& [mono, c] : f.terms()) {
    for (int k = 0; k < ne; ++k)
      if (mono.exps[k]) used[k] = true;
    for (int b = 0; b < 2 * sig.m; ++b)
      if (mono.odd & (1u << b)) used[ne + b] = true;
  }

  // nilpotent degree-zero parts of even images can lower the even degree of the unknown tail
  std::uint32_t nil_bits = 0;
  int prec = std::min(f.precision(), target.cap);
  for (int s = 0; s < ne; ++s) {
    if (!images[s].body().is_zero())
      throw PreconditionError("substitute: even images must vanish at the origin");
    for (const auto& [mono, c] : images[s].terms())
      if (mono.degree == 0) nil_bits |= mono.odd;
  }
  prec -= std::popcount(nil_bits) / 2;
  for (std::size_t s = 0; s < images.size(); ++s)
    if (used[s]) prec = std::min(prec, images[s].precision());

  Jet result = Jet(target).truncated(prec);
  if (f.is_zero()) return result;
  std::vector<std::vector<Jet>> powers(ne);
  auto power = [&](int s, int e) -> const Jet& {
    auto& cache = powers[s];
    if (cache.empty()) cache.push_back(Jet(target, 1).truncated(prec));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[s]);
    return cache[e];
  };
  for (const auto& [mono, c] : f.terms()) {
    Jet acc = Jet(target, c).truncated(prec);
    for (int k = 0; k < ne && !acc.is_zero(); ++k)
      if (mono.exps[k]) acc = acc * power(k, mono.exps[k]);
    for (int b = 0; b < 2 * sig.m && !acc.is_zero(); ++b)
      if (mono.odd & (1u << b)) acc = acc * images[ne + b];
    result += acc;
  }
  return result;
}

GeneratorNames GeneratorNames::standard(const RingSignature& sig) {
  GeneratorNames g;
  for (int k = 1; k <= sig.n; ++k) g.even.push_back("z" + std::to_string(k));
  for (int k = 1; k <= sig.n; ++k) g.even.push_back("zb" + std::to_string(k));
  for (int k = 1; k <= sig.m; ++k) g.odd.push_back("th" + std::to_string(k));
  for (int k = 1; k <= sig.m; ++k) g.odd.push_back("thb" + std::to_string(k));
  return g;
}

namespace {

std::string monomial_text(const Monomial& mono, const GeneratorNames& names) {
  std::string s;
  auto append = [&](const std::string& part) {
    if (!s.empty()) s += "*";
    s += part;
  };
  for (std::size_t k = 0; k < names.even.size(); ++k) {
    if (!mono.exps[k]) continue;
    append(mono.exps[k] == 1 ? names.even[k] : names.even[k] + "^" + std::to_string(mono.exps[k]));
  }
  for (std::size_t b = 0; b < names.odd.size(); ++b)
    if (mono.odd & (1u << b)) append(names.odd[b]);
  return s;
}

bool negative_scalar(const GaussianRational& c) {
  if (c.is_real()) return sgn(c.re()) < 0;
  return sgn(c.re()) == 0 && sgn(c.im()) < 0;
}

}  // namespace

std::string render(const Jet& f) { return render(f, GeneratorNames::standard(f.signature())); }

std::string render(const Jet& f, const GeneratorNames& names) {
  std::string out;
  for (const auto& [mono, c] : f.terms()) {
    const bool neg = negative_scalar(c);
    const GaussianRational a = neg ? -c : c;
    const std::string m = monomial_text(mono, names);
    std::string piece;
    if (m.empty()) piece = render(a);
    else if (a.is_one()) piece = m;
    else piece = render(a) + "*" + m;
    if (out.empty()) out = neg ? "- " + piece : piece;
    else out += (neg ? " - " : " + ") + piece;
  }
  if (f.precision() < f.signature().cap) {
    const std::string o = "O(" + std::to_string(f.precision() + 1) + ")";
    out = out.empty() ? o : out + " + " + o;
  }
  return out.empty() ? "0" : out;
}

}  // namespace sbv

#include "superbv/mvform.hpp"

#include <algorithm>
#include <numeric>
#include <span>

#include "superbv/errors.hpp"

namespace sbv {

namespace {

void require_chart(const Chart& a, const Chart& b, const char* what) {
  if (!(a == b)) throw SignatureMismatch(what);
}

std::span<const std::uint8_t> used(const std::array<std::uint8_t, kMaxDirections>& a, const RingSignature& sig) {
  return {a.data(), static_cast<std::size_t>(sig.directions())};
}

Parity counts_parity(const std::array<std::uint8_t, kMaxDirections>& a, const RingSignature& sig) {
  int odd = 0;
  for (int k = sig.n; k < sig.directions(); ++k) odd += a[static_cast<std::size_t>(k)];
  return parity_of(odd);
}

std::vector<int> expand(const std::array<std::uint8_t, kMaxDirections>& a, const RingSignature& sig) {
  std::vector<int> out;
  for (int k = 0; k < sig.directions(); ++k)
    for (int c = 0; c < a[static_cast<std::size_t>(k)]; ++c) out.push_back(k);
  return out;
}

// Basis product (dxibar^I1 d_J1)(dxibar^I2 d_J2) = sign * dxibar^{I1+I2} d_{J1+J2}.
std::optional<std::pair<MVKey, Sign>> merge_keys(const RingSignature& sig, const MVKey& a, const MVKey& b) {
  const auto classes = direction_classes(sig);
  std::span<const BiDegree> cls(classes.data(), static_cast<std::size_t>(sig.directions()));
  Sign s = commute_sign(multiset_degree(used(a.vec, sig), cls), multiset_degree(used(b.bar, sig), cls));
  auto si = multiset_merge_sign(used(a.bar, sig), used(b.bar, sig), cls);
  if (!si) return std::nullopt;
  auto sj = multiset_merge_sign(used(a.vec, sig), used(b.vec, sig), cls);
  if (!sj) return std::nullopt;
  MVKey k;
  for (int d = 0; d < sig.directions(); ++d) {
    const auto i = static_cast<std::size_t>(d);
    const int bar = a.bar[i] + b.bar[i], vec = a.vec[i] + b.vec[i];
    if (bar > 255 || vec > 255) throw PreconditionError("multivector form: multiplicity overflow");
    k.bar[i] = static_cast<std::uint8_t>(bar);
    k.vec[i] = static_cast<std::uint8_t>(vec);
  }
  return std::make_pair(k, s * *si * *sj);
}

Jet with_sign(const Jet& f, Sign s) { return s.negative() ? -f : f; }

// A vanishing parity part is skipped unless it is the only carrier of a reduced precision.
bool skip_part(const Jet& whole, Parity p, const Jet& part) {
  if (!part.is_zero()) return false;
  return !whole.is_zero() || p == Parity::odd;
}

MultiVectorForm basis(const Chart& chart, const MVKey& key) {
  MultiVectorForm r(chart);
  r.add_term(key, Jet(chart.sig, 1));
  return r;
}

MultiVectorForm forms_only(const Chart& chart, const MVKey& key) {
  MVKey k;
  k.bar = key.bar;
  return basis(chart, k);
}

// Homogeneous vector fields with their parities.
struct Vec {
  VectorField field;
  Parity parity;
};

std::vector<Vec> as_vectors(const Chart& chart, const Jet& f, Parity pf, const MVKey& key) {
  const auto& sig = chart.sig;
  std::vector<Vec> out;
  for (int k : expand(key.vec, sig)) {
    VectorField v = VectorField::coordinate(sig, k);
    Parity pv = sig.direction_parity(k);
    if (out.empty()) {
      // f d_k = d_k (-1)^{|f||k|} f
      v.coeffs[static_cast<std::size_t>(k)] = with_sign(f, Sign::power(bit(pf) * bit(pv)));
      pv += pf;
    }
    out.push_back({std::move(v), pv});
  }
  return out;
}

MultiVectorForm wedge_vectors(const Chart& chart, const std::vector<Vec>& vs, std::size_t skip_a,
                              std::size_t skip_b = static_cast<std::size_t>(-1)) {
  MultiVectorForm r = MultiVectorForm::function(chart, Jet(chart.sig, 1));
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (i != skip_a && i != skip_b) r = wedge(r, MultiVectorForm::from_vector_field(chart, vs[i].field));
  return r;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// [[f, v_1 ^ ... ^ v_p]]
MultiVectorForm bracket_function_vectors(const Chart& chart, const Jet& f, Parity pf, const std::vector<Vec>& vs) {
  MultiVectorForm r(chart);
  int before = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const int pv = bit(vs[i].parity);
    Sign s = -Sign::power(static_cast<long>(i) + pv * (before + bit(pf)));
    Jet vf = apply(vs[i].field, f);
    MultiVectorForm rest = wedge(vf, wedge_vectors(chart, vs, i));
    r += s.negative() ? -rest : rest;
    before += pv;
  }
  return r;
}

// [[f d_J, g d_L]] for pure multivector fields with left coefficients f, g.
MultiVectorForm bracket_pure(const Chart& chart, const Jet& f, Parity pf, const MVKey& kj, const Jet& g, Parity pg,
                             const MVKey& kl) {
  const auto w = as_vectors(chart, f, pf, kj);
  const auto v = as_vectors(chart, g, pg, kl);
  if (w.empty() && v.empty()) return MultiVectorForm(chart);
  if (w.empty()) return bracket_function_vectors(chart, f, pf, v);
  if (v.empty()) {
    int sum = 0;
    for (const auto& x : w) sum += bit(x.parity);
    Sign s = -Sign::power(static_cast<long>(w.size()) + 1 + bit(pg) * sum);
    MultiVectorForm r = bracket_function_vectors(chart, g, pg, w);
    return s.negative() ? -r : r;
  }
  int wsum = 0;
  for (const auto& x : w) wsum += bit(x.parity);
  MultiVectorForm r(chart);
  int wbefore = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const int pw = bit(w[j].parity);
    int vbefore = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const int pv = bit(v[i].parity);
      const long m = static_cast<long>(i + j) + pw * wbefore + pv * (vbefore + wsum + pw);
      MultiVectorForm head = MultiVectorForm::from_vector_field(chart, bracket(w[j].field, v[i].field));
      MultiVectorForm t = wedge(wedge(head, wedge_vectors(chart, w, j)), wedge_vectors(chart, v, i));
      r += Sign::power(m).negative() ? -t : t;
      vbefore += pv;
    }
    wbefore += pw;
  }
  return r;
}

}  // namespace

int MVKey::q() const noexcept { return std::accumulate(bar.begin(), bar.end(), 0); }
int MVKey::p() const noexcept { return std::accumulate(vec.begin(), vec.end(), 0); }

bool MVKeyOrder::operator()(const MVKey& a, const MVKey& b) const noexcept {
  const int qa = a.q(), qb = b.q(), pa = a.p(), pb = b.p();
  if (qa + pa != qb + pb) return qa + pa < qb + pb;
  if (qa != qb) return qa < qb;
  if (a.bar != b.bar) return a.bar > b.bar;
  return a.vec > b.vec;
}

std::array<BiDegree, kMaxDirections> direction_classes(const RingSignature& sig) {
  std::array<BiDegree, kMaxDirections> c{};
  for (int k = 0; k < sig.directions(); ++k) c[static_cast<std::size_t>(k)] = {1, sig.direction_parity(k)};
  return c;
}

BiDegree key_degree(const RingSignature& sig, const MVKey& key) {
  return {key.q() + key.p(), counts_parity(key.bar, sig) + counts_parity(key.vec, sig)};
}

MultiVectorForm::MultiVectorForm(Chart chart) : chart_(std::move(chart)), floor_(chart_.sig.cap) {
  chart_.sig.validate();
}

MultiVectorForm MultiVectorForm::function(const Chart& chart, const Jet& f) {
  MultiVectorForm r(chart);
  r.add_term(MVKey{}, f);
  return r;
}

MultiVectorForm MultiVectorForm::vector(const Chart& chart, int k) {
  MVKey key;
  key.vec.at(static_cast<std::size_t>(k)) = 1;
  return basis(chart, key);
}

MultiVectorForm MultiVectorForm::barred_form(const Chart& chart, int k) {
  MVKey key;
  key.bar.at(static_cast<std::size_t>(k)) = 1;
  return basis(chart, key);
}

MultiVectorForm MultiVectorForm::from_vector_field(const Chart& chart, const VectorField& x) {
  MultiVectorForm r(chart);
  for (int k = 0; k < chart.sig.directions(); ++k) {
    MVKey key;
    key.vec[static_cast<std::size_t>(k)] = 1;
    r.add_term(key, x.coeffs[static_cast<std::size_t>(k)]);
  }
  return r;
}

void MultiVectorForm::add_term(const MVKey& key, const Jet& coefficient) {
  if (!(coefficient.signature() == chart_.sig)) throw SignatureMismatch("multivector form: coefficient ring mismatch");
  floor_ = std::min(floor_, coefficient.precision());
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (!coefficient.is_zero() || coefficient.precision() < chart_.sig.cap) terms_.emplace(key, coefficient);
    return;
  }
  it->second += coefficient;
  // a cancelled coefficient keeps its precision so later contributions cannot overstate it
  if (it->second.is_zero() && it->second.precision() >= chart_.sig.cap) terms_.erase(it);
}

Jet MultiVectorForm::coefficient(const MVKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Jet(chart_.sig).truncated(floor_) : it->second;
}

bool MultiVectorForm::is_zero() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::optional<BiDegree> MultiVectorForm::bidegree() const {
  std::optional<BiDegree> d;
  for (const auto& [key, c] : terms_) {
    if (c.is_zero()) continue;
    auto pc = c.parity();
    if (!pc) return std::nullopt;
    BiDegree t = key_degree(chart_.sig, key) + BiDegree{0, *pc};
    if (d && !(*d == t)) return std::nullopt;
    d = t;
  }
  return d ? d : BiDegree{};
}

std::optional<std::pair<int, int>> MultiVectorForm::pq() const {
  std::optional<std::pair<int, int>> r;
  for (const auto& [key, c] : terms_) {
    if (c.is_zero()) continue;
    std::pair<int, int> t{key.p(), key.q()};
    if (r && *r != t) return std::nullopt;
    r = t;
  }
  return r;
}

MultiVectorForm MultiVectorForm::component(int p, int q) const {
  MultiVectorForm r(chart_);
  r.floor_ = floor_;
  for (const auto& [key, c] : terms_)
    if (key.p() == p && key.q() == q) r.terms_.emplace(key, c);
  return r;
}

MultiVectorForm MultiVectorForm::truncated(int prec) const {
  MultiVectorForm r(chart_);
  r.floor_ = std::min(floor_, prec);
  for (const auto& [key, c] : terms_) r.add_term(key, c.truncated(prec));
  return r;
}

MultiVectorForm MultiVectorForm::operator-() const {
  MultiVectorForm r = *this;
  for (auto& [key, c] : r.terms_) c = -c;
  return r;
}

MultiVectorForm& MultiVectorForm::operator+=(const MultiVectorForm& o) {
  require_chart(chart_, o.chart_, "multivector form: chart mismatch");
  floor_ = std::min(floor_, o.floor_);
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

MultiVectorForm& MultiVectorForm::operator-=(const MultiVectorForm& o) { return *this += -o; }

MultiVectorForm& MultiVectorForm::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, f] : terms_) f *= c;
  return *this;
}

bool operator==(const MultiVectorForm& a, const MultiVectorForm& b) {
  if (!(a.chart_ == b.chart_)) return false;
  for (const auto& [key, c] : a.terms_)
    if (!(c == b.coefficient(key))) return false;
  for (const auto& [key, c] : b.terms_)
    if (!(a.coefficient(key) == c)) return false;
  return true;
}

MultiVectorForm wedge(const MultiVectorForm& a, const MultiVectorForm& b) {
  require_chart(a.chart(), b.chart(), "wedge: chart mismatch");
  const auto& sig = a.signature();
  MultiVectorForm r = MultiVectorForm(a.chart()).truncated(std::min(a.precision_floor(), b.precision_floor()));
  for (const auto& [ka, fa] : a.terms()) {
    for (Parity pa : {Parity::even, Parity::odd}) {
      Jet f = fa.part(pa);
      if (skip_part(fa, pa, f)) continue;
      for (const auto& [kb, fb] : b.terms()) {
        auto merged = merge_keys(sig, ka, kb);
        if (!merged) continue;
        // move f right past dxibar^I2 d_J2
        Sign s = merged->second * Sign::power(bit(pa) * bit(key_degree(sig, kb).parity));
        r.add_term(merged->first, with_sign(f * fb, s));
      }
    }
  }
  return r;
}

MultiVectorForm wedge(const Jet& f, const MultiVectorForm& a) { return wedge(MultiVectorForm::function(a.chart(), f), a); }

MultiVectorForm dbar(const MultiVectorForm& a) {
  const auto& sig = a.signature();
  MultiVectorForm r = MultiVectorForm(a.chart()).truncated(a.precision_floor());
  for (const auto& [key, f] : a.terms()) {
    const Parity pij = key_degree(sig, key).parity;
    for (int k = 0; k < sig.directions(); ++k) {
      Jet d = partial(f, antiholomorphic_generator(sig, k));
      MVKey single;
      single.bar[static_cast<std::size_t>(k)] = 1;
      auto merged = merge_keys(sig, single, key);
      if (!merged) continue;
      Sign s = merged->second * Sign::power(bit(sig.direction_parity(k)) * bit(pij));
      r.add_term(merged->first, with_sign(d, s));
    }
  }
  return r;
}

VectorField bracket(const VectorField& w, const VectorField& v) {
  const auto& sig = w.sig;
  if (!(sig == v.sig)) throw SignatureMismatch("bracket: different charts");
  auto parity_of_field = [&](const VectorField& x) -> std::optional<Parity> {
    std::optional<Parity> p;
    for (int k = 0; k < sig.directions(); ++k) {
      const Jet& c = x.coeffs[static_cast<std::size_t>(k)];
      if (c.is_zero()) continue;
      auto pc = c.parity();
      if (!pc) return std::nullopt;
      Parity t = *pc + sig.direction_parity(k);
      if (p && *p != t) return std::nullopt;
      p = t;
    }
    return p ? p : Parity::even;
  };
  auto pw = parity_of_field(w), pv = parity_of_field(v);
  if (!pw || !pv) throw ParityError("bracket: vector fields must be homogeneous");
  const bool anti = (bit(*pw) * bit(*pv)) % 2 != 0;
  VectorField out{sig, {}};
  for (int b = 0; b < sig.directions(); ++b) {
    Jet xb = Jet::generator(sig, holomorphic_generator(sig, b));
    Jet left = apply(w, apply(v, xb));
    Jet other = apply(v, apply(w, xb));
    left = anti ? left + other : left - other;
    // d_b L = L' d_b with right coefficient (-1)^{|b||L|} L
    const int pb = bit(sig.direction_parity(b));
    out.coeffs.push_back(with_sign(left, Sign::power(pb * (bit(*pw) + bit(*pv) + pb))));
  }
  return out;
}

MultiVectorForm schouten(const MultiVectorForm& a, const MultiVectorForm& b) {
  require_chart(a.chart(), b.chart(), "schouten: chart mismatch");
  const auto& sig = a.signature();
  const Chart& chart = a.chart();
  MultiVectorForm r = MultiVectorForm(chart).truncated(std::min(a.precision_floor(), b.precision_floor()));
  for (const auto& [ka, fa] : a.terms()) {
    const BiDegree da = key_degree(sig, ka);
    const Parity pi = counts_parity(ka.bar, sig), pj = counts_parity(ka.vec, sig);
    MVKey ja;
    ja.vec = ka.vec;
    for (Parity pf : {Parity::even, Parity::odd}) {
      Jet f = fa.part(pf);
      if (skip_part(fa, pf, f)) continue;
      for (const auto& [kb, gb] : b.terms()) {
        const BiDegree db = key_degree(sig, kb);
        const Parity pk = counts_parity(kb.bar, sig);
        MVKey lb;
        lb.vec = kb.vec;
        const int p = ka.p(), qp = kb.q();
        for (Parity pg : {Parity::even, Parity::odd}) {
          Jet g = gb.part(pg);
          if (skip_part(gb, pg, g)) continue;
          // stored dxibar^I d_J f = (-1)^{|f|(|I|+|J|)} f dxibar^I d_J
          Sign s = Sign::power(bit(pf) * bit(da.parity)) * Sign::power(bit(pg) * bit(db.parity));
          s *= Sign::power(static_cast<long>(qp) * (p + 1) + bit(pf) * bit(pi) +
                           bit(pk) * (bit(pg) + bit(pj) + bit(pf)));
          MultiVectorForm inner = bracket_pure(chart, f, pf, ja, g, pg, lb);
          MultiVectorForm t = wedge(wedge(forms_only(chart, ka), forms_only(chart, kb)), inner);
          r += s.negative() ? -t : t;
        }
      }
    }
  }
  return r;
}

MultiVectorForm pull_mvform(const Morphism& phi, const MultiVectorForm& a) {
  if (!is_holomorphic(phi)) throw PreconditionError("pull_mvform: morphism must be holomorphic");
  require_chart(phi.target, a.chart(), "pull_mvform: section not on the target chart");
  const auto& ts = phi.target.sig;
  const Chart& src = phi.source;
  std::vector<MultiVectorForm> bars, vecs;
  for (int k = 0; k < ts.directions(); ++k) {
    bars.push_back(dbar(MultiVectorForm::function(src, conjugate(phi.images[static_cast<std::size_t>(k)]))));
    vecs.push_back(MultiVectorForm::from_vector_field(src, pull_vector(phi, VectorField::coordinate(ts, k))));
  }
  MultiVectorForm r = MultiVectorForm(src).truncated(a.precision_floor());
  for (const auto& [key, f] : a.terms()) {
    MultiVectorForm t = MultiVectorForm::function(src, Jet(src.sig, 1));
    for (int k : expand(key.bar, ts)) t = wedge(t, bars[static_cast<std::size_t>(k)]);
    for (int k : expand(key.vec, ts)) t = wedge(t, vecs[static_cast<std::size_t>(k)]);
    r += wedge(t, MultiVectorForm::function(src, pullback(phi, f)));
  }
  return r;
}

BiDegree degree_of(const MultiVectorForm& a) {
  auto d = a.bidegree();
  if (!d) throw ParityError("multivector form is not homogeneous");
  return *d;
}

std::string direction_name(const RingSignature& sig, int k) {
  return k < sig.n ? "z" + std::to_string(k + 1) : "th" + std::to_string(k - sig.n + 1);
}

std::string render(const MultiVectorForm& a) {
  if (a.is_zero()) return "0";
  const auto& sig = a.signature();
  std::string out;
  for (const auto& [key, c] : a.terms()) {
    if (c.is_zero()) continue;
    std::vector<std::string> parts;
    auto factor = [&](const std::string& base, int count) {
      parts.push_back(count == 1 ? base : base + "^" + std::to_string(count));
    };
    for (int k = 0; k < sig.directions(); ++k)
      if (int c2 = key.bar[static_cast<std::size_t>(k)])
        factor("d" + (k < sig.n ? "zb" + std::to_string(k + 1) : "thb" + std::to_string(k - sig.n + 1)), c2);
    for (int k = 0; k < sig.directions(); ++k)
      if (int c2 = key.vec[static_cast<std::size_t>(k)]) factor("dv(" + direction_name(sig, k) + ")", c2);
    const bool unit = c.identical(Jet(sig, 1));
    if (!unit || parts.empty()) parts.push_back("(" + render(c) + ")");
    std::string term;
    for (std::size_t i = 0; i < parts.size(); ++i) term += (i ? "*" : "") + parts[i];
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

}  // namespace sbv

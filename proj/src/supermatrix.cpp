#include "superbv/supermatrix.hpp"

#include <algorithm>
#include <numeric>

#include "superbv/errors.hpp"

namespace sbv {

namespace {

struct Plain {
  int rows = 0;
  int cols = 0;
  std::vector<Jet> a;

  Plain(const RingSignature& sig, int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), Jet(sig)) {}
  Jet& at(int r, int c) { return a[static_cast<std::size_t>(r * cols + c)]; }
  const Jet& at(int r, int c) const { return a[static_cast<std::size_t>(r * cols + c)]; }
};

Plain block(const SuperMatrix& m, int r0, int c0, int nr, int nc) {
  Plain b(m.signature(), nr, nc);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) b.at(r, c) = m(r0 + r, c0 + c);
  return b;
}

Plain mul(const Plain& x, const Plain& y, const RingSignature& sig) {
  Plain r(sig, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < y.cols; ++k) {
      Jet acc(sig);
      for (int j = 0; j < x.cols; ++j) acc += x.at(i, j) * y.at(j, k);
      r.at(i, k) = acc;
    }
  return r;
}

Plain sub(Plain x, const Plain& y) {
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
  return x;
}

Plain negate(Plain x) {
  for (auto& e : x.a) e = -e;
  return x;
}

// inverse of a square matrix with commuting entries, via the adjugate
Plain plain_inverse(const Plain& m, const RingSignature& sig) {
  const int k = m.rows;
  Plain r(sig, k, k);
  if (k == 0) return r;
  const Jet det_inv = invert(even_determinant(m.a, k, sig));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      std::vector<Jet> minor;
      for (int rr = 0; rr < k; ++rr)
        for (int cc = 0; cc < k; ++cc)
          if (rr != j && cc != i) minor.push_back(m.at(rr, cc));
      Jet cof = even_determinant(minor, k - 1, sig);
      if ((i + j) % 2) cof = -cof;
      r.at(i, j) = cof * det_inv;
    }
  return r;
}

void require_even(const SuperMatrix& m, const char* what) {
  if (!m.is_even()) throw ParityError(std::string(what) + ": matrix is not even");
}

}  // namespace

SuperMatrix::SuperMatrix(const RingSignature& sig, int p, int q)
    : sig_(sig), p_(p), q_(q), a_(static_cast<std::size_t>((p + q) * (p + q)), Jet(sig)) {
  if (p < 0 || q < 0) throw std::invalid_argument("supermatrix: negative block size");
}

SuperMatrix SuperMatrix::identity(const RingSignature& sig, int p, int q) {
  SuperMatrix m(sig, p, q);
  for (int i = 0; i < p + q; ++i) m(i, i) = Jet(sig, 1);
  return m;
}

std::optional<Parity> SuperMatrix::parity() const {
  std::optional<Parity> result;
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c) {
      const Jet& e = (*this)(r, c);
      if (e.is_zero()) continue;
      auto pe = e.parity();
      if (!pe) return std::nullopt;
      Parity p = *pe + index_parity(r) + index_parity(c);
      if (!result) result = p;
      else if (*result != p) return std::nullopt;
    }
  return result.value_or(Parity::even);
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.p_ != b.p_ || a.q_ != b.q_) throw std::invalid_argument("supermatrix shape mismatch");
  SuperMatrix r(a.sig_, a.p_, a.q_);
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Jet acc(a.sig_);
      for (int j = 0; j < n; ++j) acc += a(i, j) * b(j, k);
      r(i, k) = acc;
    }
  return r;
}

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.p_ != b.p_ || a.q_ != b.q_) throw std::invalid_argument("supermatrix shape mismatch");
  SuperMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.p_ != b.p_ || a.q_ != b.q_) throw std::invalid_argument("supermatrix shape mismatch");
  SuperMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.p_ != b.p_ || a.q_ != b.q_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (!(a.a_[i] == b.a_[i])) return false;
  return true;
}

Jet even_determinant(const std::vector<Jet>& entries, int k, const RingSignature& sig) {
  if (k == 0) return Jet(sig, 1);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  Jet det(sig);
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    Jet term = entries[static_cast<std::size_t>(perm[0])];
    for (int i = 1; i < k && !term.is_zero(); ++i)
      term = term * entries[static_cast<std::size_t>(i * k + perm[static_cast<std::size_t>(i)])];
    if (inversions % 2) det -= term;
    else det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Jet sdet(const SuperMatrix& m) {
  require_even(m, "sdet");
  const auto& sig = m.signature();
  const int p = m.even_size(), q = m.odd_size();
  Plain a = block(m, 0, 0, p, p);
  if (q == 0) return even_determinant(a.a, p, sig);
  Plain b = block(m, 0, p, p, q), c = block(m, p, 0, q, p), d = block(m, p, p, q, q);
  Plain dinv = plain_inverse(d, sig);
  Plain s = sub(a, mul(mul(b, dinv, sig), c, sig));
  return even_determinant(s.a, p, sig) * invert(even_determinant(d.a, q, sig));
}

Jet str(const SuperMatrix& m) {
  auto par = m.parity();
  if (!par) throw ParityError("str: inhomogeneous matrix");
  Jet t(m.signature());
  for (int i = 0; i < m.size(); ++i) {
    const bool minus = m.index_parity(i) == Parity::odd && *par == Parity::even;
    if (minus) t -= m(i, i);
    else t += m(i, i);
  }
  return t;
}

SuperMatrix supertranspose(const SuperMatrix& m) {
  SuperMatrix r(m.signature(), m.even_size(), m.odd_size());
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b) {
      const int pa = bit(m.index_parity(a)), pb = bit(m.index_parity(b));
      r(a, b) = Sign::power(pb + pa * pb).negative() ? -m(b, a) : m(b, a);
    }
  return r;
}

SuperMatrix inverse(const SuperMatrix& m) {
  require_even(m, "inverse");
  const auto& sig = m.signature();
  const int p = m.even_size(), q = m.odd_size();
  Plain a = block(m, 0, 0, p, p), b = block(m, 0, p, p, q), c = block(m, p, 0, q, p), d = block(m, p, p, q, q);
  Plain dinv = plain_inverse(d, sig);
  Plain sinv = plain_inverse(sub(a, mul(mul(b, dinv, sig), c, sig)), sig);
  Plain rb = negate(mul(mul(sinv, b, sig), dinv, sig));
  Plain rc = negate(mul(mul(dinv, c, sig), sinv, sig));
  Plain rd = dinv;
  Plain corr = mul(mul(mul(mul(dinv, c, sig), sinv, sig), b, sig), dinv, sig);
  for (std::size_t i = 0; i < rd.a.size(); ++i) rd.a[i] += corr.a[i];
  SuperMatrix r(sig, p, q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) r(i, j) = sinv.at(i, j);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) r(i, p + j) = rb.at(i, j);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < p; ++j) r(p + i, j) = rc.at(i, j);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) r(p + i, p + j) = rd.at(i, j);
  return r;
}

std::string render(const SuperMatrix& m) {
  std::string s = "(" + std::to_string(m.even_size()) + "|" + std::to_string(m.odd_size()) + ") [";
  for (int r = 0; r < m.size(); ++r) {
    if (r) s += ", ";
    s += "[";
    for (int c = 0; c < m.size(); ++c) {
      if (c) s += (c == m.even_size()) ? " | " : ", ";
      s += render(m(r, c));
    }
    s += "]";
  }
  return s + "]";
}

nlohmann::json to_json(const SuperMatrix& m) {
  auto blk = [&](int r0, int c0, int nr, int nc) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < nr; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < nc; ++c) row.push_back(render(m(r0 + r, c0 + c)));
      rows.push_back(row);
    }
    return rows;
  };
  const int p = m.even_size(), q = m.odd_size();
  return {{"shape", {p, q}}, {"A", blk(0, 0, p, p)}, {"B", blk(0, p, p, q)},
          {"C", blk(p, 0, q, p)}, {"D", blk(p, p, q, q)}};
}

}  // namespace sbv

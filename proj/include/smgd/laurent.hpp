#ifndef SMGD_LAURENT_HPP
#define SMGD_LAURENT_HPP

// Exact integer Laurent polynomials in one variable.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smgd {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

}  // namespace detail

class Laurent {
 public:
  Laurent() = default;
  Laurent(std::int64_t c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[0] = c;
  }

  static Laurent monomial(std::int64_t c, int e) {
    Laurent p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  static Laurent from_terms(const std::vector<std::pair<int, std::int64_t>>& ts) {
    Laurent p;
    for (const auto& [e, c] : ts) p.add_term(e, c);
    return p;
  }

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  std::int64_t coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(int e, std::int64_t c) {
    if (c == 0) return;
    auto& slot = terms_[e];
    slot = detail::checked_add(slot, c);
    if (slot == 0) terms_.erase(e);
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, detail::checked_mul(c, -1));
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) { return Laurent() - a; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, detail::checked_mul(c1, c2));
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent pow(int n) const {
    if (n < 0) {
      if (terms_.size() != 1 || (terms_.begin()->second != 1 && terms_.begin()->second != -1))
        throw std::domain_error("negative power of a non-unit");
      const auto [e, c] = *terms_.begin();
      return monomial(c, -e).pow(-n);
    }
    Laurent r(1), b = *this;
    while (n) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }

  /// Multiply by t^k.
  Laurent shifted(int k) const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
    return r;
  }

  /// Substitute t -> t^-1.
  Laurent mirrored() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
  }

  /// Divide out +-t^k: lowest degree 0, positive leading coefficient.
  Laurent normalized() const {
    if (terms_.empty()) return *this;
    Laurent r = shifted(-min_degree());
    if (r.terms_.rbegin()->second < 0) r = -r;
    return r;
  }

  /// Exact quotient; throws if `d` does not divide this.
  Laurent divided_exactly(const Laurent& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    Laurent rem = *this, q;
    const int dl = d.max_degree();
    const std::int64_t dc = d.terms_.rbegin()->second;
    const int span = d.max_degree() - d.min_degree();
    while (!rem.is_zero()) {
      if (rem.max_degree() - rem.min_degree() < span) throw std::domain_error("inexact polynomial division");
      const int e = rem.max_degree();
      const std::int64_t c = rem.terms_.rbegin()->second;
      if (c % dc != 0) throw std::domain_error("inexact polynomial division");
      const Laurent m = monomial(c / dc, e - dl);
      q += m;
      rem -= m * d;
    }
    return q;
  }

  std::string to_string(const std::string& var = "t") const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      std::int64_t a = c;
      if (!s.empty()) {
        s += a < 0 ? "-" : "+";
        if (a < 0) a = -a;
      } else if (a < 0) {
        s += "-";
        a = -a;
      }
      if (e == 0) {
        s += std::to_string(a);
        continue;
      }
      if (a != 1) s += std::to_string(a);
      s += var;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  friend bool operator==(const Laurent&, const Laurent&) = default;

 private:
  std::map<int, std::int64_t> terms_;
};

/// Equality up to multiplication by +-t^k.
inline bool doteq(const Laurent& a, const Laurent& b) { return a.normalized() == b.normalized(); }

/// Determinant by fraction-free elimination over Z[t, t^-1].
inline Laurent determinant(std::vector<std::vector<Laurent>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Laurent(1);
  // make every entry a polynomial so exact division stays in Z[t]
  int low = 0;
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_zero()) low = std::min(low, x.min_degree());
  for (auto& row : m)
    for (auto& x : row) x = x.shifted(-low);
  Laurent prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Laurent();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divided_exactly(prev);
    prev = m[k][k];
  }
  Laurent det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det.shifted(low * n);
}

}  // namespace smgd

#endif  // SMGD_LAURENT_HPP

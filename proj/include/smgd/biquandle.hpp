#ifndef SMGD_BIQUANDLE_HPP
#define SMGD_BIQUANDLE_HPP

// Finite biquandles given by operation tables over {1..n}: axiom checks,
// Alexander biquandles, homomorphisms and JSON I/O.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smgd/diagram.hpp"

namespace smgd {

class BiquandleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Table = std::vector<std::vector<int>>;

/// Elements are 1..order. utr[x-1][y-1] = x utr y, otr[x-1][y-1] = x otr y.
struct FiniteBiquandle {
  int order = 0;
  Table utr, otr;

  int underline(int x, int y) const { return utr[x - 1][y - 1]; }
  int overline(int x, int y) const { return otr[x - 1][y - 1]; }
  friend bool operator==(const FiniteBiquandle&, const FiniteBiquandle&) = default;
};

struct AxiomViolation {
  std::string axiom;         // "i", "ii-alpha", "ii-beta", "ii-S", "iii-1", "iii-2", "iii-3"
  std::vector<int> witness;  // elements exhibiting the failure

  std::string to_string() const {
    std::string s = "axiom " + axiom + " fails at (";
    for (std::size_t i = 0; i < witness.size(); ++i) s += (i ? "," : "") + std::to_string(witness[i]);
    return s + ")";
  }
};

struct Verdict {
  std::optional<FiniteBiquandle> biquandle;
  std::optional<AxiomViolation> violation;
  bool valid() const { return biquandle.has_value(); }
};

namespace detail {

inline void check_table(const Table& t, int n, const char* name) {
  if (static_cast<int>(t.size()) != n) throw BiquandleError(std::string(name) + " table has the wrong number of rows");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n) throw BiquandleError(std::string(name) + " table is not square");
    for (int x : row)
      if (x < 1 || x > n)
        throw BiquandleError(std::string(name) + " entry " + std::to_string(x) + " outside 1.." + std::to_string(n));
  }
}

}  // namespace detail

/// Exhaustive check of axioms (i), (ii), (iii) in that order.
inline Verdict check_axioms(const Table& utr, const Table& otr) {
  const int n = static_cast<int>(utr.size());
  detail::check_table(utr, n, "utr");
  detail::check_table(otr, n, "otr");
  FiniteBiquandle b{n, utr, otr};
  auto u = [&](int x, int y) { return b.underline(x, y); };
  auto o = [&](int x, int y) { return b.overline(x, y); };
  auto fail = [](std::string axiom, std::vector<int> w) {
    Verdict v;
    v.violation = AxiomViolation{std::move(axiom), std::move(w)};
    return v;
  };
  for (int x = 1; x <= n; ++x)
    if (u(x, x) != o(x, x)) return fail("i", {x});
  for (int y = 1; y <= n; ++y) {
    std::vector<int> seen_a(n + 1, 0), seen_b(n + 1, 0);
    for (int x = 1; x <= n; ++x) {
      if (int& s = seen_a[o(x, y)]; s) return fail("ii-alpha", {y, s, x});
      else s = x;
      if (int& s = seen_b[u(x, y)]; s) return fail("ii-beta", {y, s, x});
      else s = x;
    }
  }
  std::vector<int> seen_s((n + 1) * (n + 1), 0);
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      int& s = seen_s[o(y, x) * (n + 1) + u(x, y)];
      if (s) return fail("ii-S", {(s - 1) / n + 1, (s - 1) % n + 1, x, y});
      s = (x - 1) * n + y;
    }
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z) {
        if (u(u(x, y), u(z, y)) != u(u(x, z), o(y, z))) return fail("iii-1", {x, y, z});
        if (u(o(x, y), o(z, y)) != o(u(x, z), u(y, z))) return fail("iii-2", {x, y, z});
        if (o(o(x, y), o(z, y)) != o(o(x, z), u(y, z))) return fail("iii-3", {x, y, z});
      }
  Verdict v;
  v.biquandle = std::move(b);
  return v;
}

/// Validating constructor.
inline FiniteBiquandle make_biquandle(const Table& utr, const Table& otr) {
  auto v = check_axioms(utr, otr);
  if (!v.valid()) throw BiquandleError("not a biquandle: " + v.violation->to_string());
  return *v.biquandle;
}

/// x utr y = x, x otr y = x.
inline FiniteBiquandle trivial_biquandle(int n) {
  if (n < 1) throw BiquandleError("order must be positive");
  Table t(n, std::vector<int>(n));
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) t[x - 1][y - 1] = x;
  return {n, t, t};
}

/// Z_n with x utr y = tx + (s-t)y and x otr y = sx, elements r mod n written r+1.
inline FiniteBiquandle alexander_biquandle(int n, int t, int s) {
  if (n < 1) throw BiquandleError("modulus must be positive");
  auto mod = [n](long long v) { return static_cast<int>(((v % n) + n) % n); };
  if (std::gcd(mod(t), n) != 1 && n > 1) throw BiquandleError("t = " + std::to_string(t) + " is not a unit mod " + std::to_string(n));
  if (std::gcd(mod(s), n) != 1 && n > 1) throw BiquandleError("s = " + std::to_string(s) + " is not a unit mod " + std::to_string(n));
  Table u(n, std::vector<int>(n)), o(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      u[x][y] = mod(static_cast<long long>(t) * x + static_cast<long long>(s - t) * y) + 1;
      o[x][y] = mod(static_cast<long long>(s) * x) + 1;
    }
  return {n, u, o};
}

struct Homomorphism {
  std::vector<int> image;  // image[x-1] = f(x)
  bool isomorphism = false;
};

struct HomOptions {
  double max_maps = 1e9;  // |Y|^|X| above this is refused
};

/// Every map f: X -> Y preserving both operations.
inline std::vector<Homomorphism> homomorphisms(const FiniteBiquandle& x, const FiniteBiquandle& y,
                                               const HomOptions& opt = {}) {
  const int n = x.order, m = y.order;
  if (std::pow(static_cast<double>(m), n) > opt.max_maps)
    throw CapExceeded("homomorphism search " + std::to_string(m) + "^" + std::to_string(n) + " exceeds the cap");
  std::vector<Homomorphism> out;
  std::vector<int> f(n + 1, 0);
  // all constraints among 1..k are checked once k is assigned
  auto consistent = [&](int k) {
    for (int a = 1; a <= k; ++a)
      for (int b = 1; b <= k; ++b)
        if (a == k || b == k || x.underline(a, b) == k || x.overline(a, b) == k) {
          const int pu = x.underline(a, b), po = x.overline(a, b);
          if (pu <= k && f[pu] != y.underline(f[a], f[b])) return false;
          if (po <= k && f[po] != y.overline(f[a], f[b])) return false;
        }
    return true;
  };
  std::function<void(int)> rec = [&](int k) {
    if (k > n) {
      Homomorphism h;
      h.image.assign(f.begin() + 1, f.end());
      std::vector<int> sorted = h.image;
      std::sort(sorted.begin(), sorted.end());
      h.isomorphism = n == m && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      out.push_back(std::move(h));
      return;
    }
    for (int c = 1; c <= m; ++c) {
      f[k] = c;
      if (consistent(k)) rec(k + 1);
    }
    f[k] = 0;
  };
  rec(1);
  return out;
}

inline std::vector<Homomorphism> isomorphisms(const FiniteBiquandle& x, const FiniteBiquandle& y,
                                              const HomOptions& opt = {}) {
  std::vector<Homomorphism> out;
  if (x.order != y.order) return out;
  for (auto& h : homomorphisms(x, y, opt))
    if (h.isomorphism) out.push_back(std::move(h));
  return out;
}

inline nlohmann::json to_json(const FiniteBiquandle& b) {
  return {{"order", b.order}, {"utr", b.utr}, {"otr", b.otr}};
}

/// Reads {"order": n, "utr": [[...]], "otr": [[...]]}; tables are shape-checked only.
inline std::pair<Table, Table> tables_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("order").get<int>();
    Table u = j.at("utr").get<Table>(), o = j.at("otr").get<Table>();
    if (n < 1) throw BiquandleError("order must be positive");
    detail::check_table(u, n, "utr");
    detail::check_table(o, n, "otr");
    return {u, o};
  } catch (const nlohmann::json::exception& e) {
    throw BiquandleError(std::string("malformed biquandle JSON: ") + e.what());
  }
}

inline FiniteBiquandle biquandle_from_json(const nlohmann::json& j) {
  const auto [u, o] = tables_from_json(j);
  return make_biquandle(u, o);
}

}  // namespace smgd

#endif  // SMGD_BIQUANDLE_HPP

#ifndef SMGD_FPGROUP_HPP
#define SMGD_FPGROUP_HPP

// Finitely presented groups and quandles: words, Smith normal form,
// abelianization, lower central factors up to class 3, core and associated
// groups, and the R_k family.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <future>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "smgd/diagram.hpp"
#include "smgd/laurent.hpp"

namespace smgd {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Letter {
  int gen = 0;
  int exp = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in generators 0..n-1.
class Word {
 public:
  Word() = default;
  explicit Word(const std::vector<Letter>& ls) {
    for (const auto& l : ls) push(l);
  }

  /// g^e as |e| letters.
  static Word generator(int g, int e = 1) {
    Word w;
    for (int i = 0; i < std::abs(e); ++i) w.push({g, e > 0 ? 1 : -1});
    return w;
  }

  void push(Letter l) {
    if (l.exp != 1 && l.exp != -1) throw AlgebraError("letter exponent must be +1 or -1");
    if (!ls_.empty() && ls_.back().gen == l.gen && ls_.back().exp == -l.exp)
      ls_.pop_back();
    else
      ls_.push_back(l);
  }

  Word inverse() const {
    Word w;
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) w.push({it->gen, -it->exp});
    return w;
  }

  Word operator*(const Word& o) const {
    Word w = *this;
    for (const auto& l : o.ls_) w.push(l);
    return w;
  }

  Word power(int k) const {
    Word base = k < 0 ? inverse() : *this, w;
    for (int i = 0; i < std::abs(k); ++i) w = w * base;
    return w;
  }

  const std::vector<Letter>& letters() const { return ls_; }
  bool empty() const { return ls_.empty(); }
  std::size_t size() const { return ls_.size(); }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> ls_;
};

/// a^-1 b^-1 a b
inline Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

/// Runs of equal letters are written as powers: "w^3 c t^-1"; the empty word is "1".
inline std::string to_string(const Word& w, const std::vector<std::string>& names) {
  const auto& ls = w.letters();
  if (ls.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const int e = static_cast<int>(j - i) * ls[i].exp;
    if (!s.empty()) s += ' ';
    s += names.at(ls[i].gen);
    if (e != 1) s += "^" + std::to_string(e);
    i = j;
  }
  return s;
}

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : " ") + generators[i];
    s += " |";
    for (std::size_t i = 0; i < relators.size(); ++i) s += (i ? ", " : " ") + smgd::to_string(relators[i], generators);
    return s + " >";
  }
};

namespace detail {

inline int generator_index(const std::vector<std::string>& names, const std::string& s) {
  const auto it = std::find(names.begin(), names.end(), s);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

inline std::vector<std::string> split_names(const std::string& line) {
  std::string t = line;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string s; in >> s;) out.push_back(s);
  return out;
}

inline std::string strip_comment(std::string line) {
  if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
  return line;
}

}  // namespace detail

/// Tokens separated by spaces: a name, name^k, or "1". A token that is not a
/// name but spells single-letter names ("wctw") is read letter by letter.
inline Word parse_word(const std::string& text, const std::vector<std::string>& names, int line = 1) {
  Word w;
  std::istringstream in(text);
  std::size_t col = 0;
  for (std::string tok; in >> tok;) {
    col = text.find(tok, col);
    auto fail = [&](const std::string& msg) { return ParseError(line, static_cast<int>(col) + 1, msg); };
    if (tok == "1") continue;
    std::string name = tok;
    int e = 1;
    if (auto c = tok.find('^'); c != std::string::npos) {
      name = tok.substr(0, c);
      try {
        std::size_t used = 0;
        e = std::stoi(tok.substr(c + 1), &used);
        if (used != tok.size() - c - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw fail("bad exponent in '" + tok + "'");
      }
    }
    if (int g = detail::generator_index(names, name); g >= 0) {
      w = w * Word::generator(g, e);
    } else {
      Word run;
      for (char ch : name) {
        const int h = detail::generator_index(names, std::string(1, ch));
        if (h < 0) throw fail("unknown generator '" + name + "'");
        run = run * Word::generator(h);
      }
      w = w * run.power(e);
    }
    col += tok.size();
  }
  return w;
}

/// First non-blank line: generator names. Each further line is a relator
/// or a relation "lhs = rhs" (read as lhs rhs^-1). '#' starts a comment.
inline GroupPresentation parse_group_presentation(const std::string& text) {
  GroupPresentation g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_gens) {
      g.generators = detail::split_names(line);
      for (std::size_t i = 0; i < g.generators.size(); ++i)
        if (std::count(g.generators.begin(), g.generators.end(), g.generators[i]) > 1)
          throw ParseError(line_no, 1, "generator '" + g.generators[i] + "' repeated");
      have_gens = true;
      continue;
    }
    if (auto eq = line.find('='); eq != std::string::npos)
      g.relators.push_back(parse_word(line.substr(0, eq), g.generators, line_no) *
                           parse_word(line.substr(eq + 1), g.generators, line_no).inverse());
    else
      g.relators.push_back(parse_word(line, g.generators, line_no));
  }
  if (!have_gens) throw ParseError(line_no, 1, "missing generator line");
  return g;
}

// ---------------------------------------------------------------- quandles

/// Binary term over generators: a leaf, or left op right with op '*' or
/// '/' (the dual operation).
struct Term {
  int gen = -1;
  char op = 0;
  std::shared_ptr<const Term> left, right;

  bool leaf() const { return gen >= 0; }
  static Term var(int g) { return Term{g, 0, nullptr, nullptr}; }
  static Term apply(const Term& a, char op, const Term& b) {
    return Term{-1, op, std::make_shared<Term>(a), std::make_shared<Term>(b)};
  }
  std::set<int> generators_used() const {
    if (leaf()) return {gen};
    auto s = left->generators_used();
    for (int g : right->generators_used()) s.insert(g);
    return s;
  }
};

inline std::string to_string(const Term& t, const std::vector<std::string>& names, bool outer = true) {
  if (t.leaf()) return names.at(t.gen);
  std::string s = to_string(*t.left, names, false) + t.op + to_string(*t.right, names, false);
  return outer ? s : "(" + s + ")";
}

struct QuandlePresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<Term, Term>> relations;

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : " ") + generators[i];
    s += " |";
    for (std::size_t i = 0; i < relations.size(); ++i)
      s += (i ? ", " : " ") + smgd::to_string(relations[i].first, generators) + " = " +
           smgd::to_string(relations[i].second, generators);
    return s + " >";
  }
};

namespace detail {

class TermParser {
 public:
  TermParser(const std::string& s, const std::vector<std::string>& names, int line, int offset)
      : s_(s), names_(names), line_(line), offset_(offset) {}

  Term parse_all() {
    Term t = term();
    skip();
    if (i_ != s_.size()) throw fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return t;
  }

 private:
  ParseError fail(const std::string& msg) const { return ParseError(line_, offset_ + static_cast<int>(i_) + 1, msg); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  Term term() {
    Term t = primary();
    for (;;) {
      skip();
      if (i_ >= s_.size() || (s_[i_] != '*' && s_[i_] != '/')) return t;
      const char op = s_[i_++];
      t = Term::apply(t, op, primary());
    }
  }
  Term primary() {
    skip();
    if (i_ >= s_.size()) throw fail("term expected");
    if (s_[i_] == '(') {
      ++i_;
      Term t = term();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') throw fail("')' expected");
      ++i_;
      return t;
    }
    const std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (b == i_) throw fail("generator expected");
    const std::string name = s_.substr(b, i_ - b);
    const int g = generator_index(names_, name);
    if (g < 0) {
      i_ = b;
      throw fail("unknown generator '" + name + "'");
    }
    return Term::var(g);
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  int line_, offset_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Term parse_term(const std::string& text, const std::vector<std::string>& names, int line = 1,
                       int column_offset = 0) {
  return detail::TermParser(text, names, line, column_offset).parse_all();
}

/// Generator line, then one "lhs = rhs" relation per line.
inline QuandlePresentation parse_quandle_presentation(const std::string& text) {
  QuandlePresentation q;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_gens) {
      q.generators = detail::split_names(line);
      have_gens = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, 1, "relation needs '='");
    Term a = parse_term(line.substr(0, eq), q.generators, line_no);
    Term b = parse_term(line.substr(eq + 1), q.generators, line_no, static_cast<int>(eq) + 1);
    q.relations.emplace_back(std::move(a), std::move(b));
  }
  if (!have_gens) throw ParseError(line_no, 1, "missing generator line");
  return q;
}

/// Generators c, d, t. Relation 1: (d*t)*d = (c*t)*c. Relation 2:
/// (d*t)*c = T_k with T_0 = t*d and T_{j+1} = (T_j / c) * d.
inline QuandlePresentation rk_quandle(int k) {
  if (k < 1) throw AlgebraError("k must be at least 1");
  const Term c = Term::var(0), d = Term::var(1), t = Term::var(2);
  auto op = [](const Term& a, char o, const Term& b) { return Term::apply(a, o, b); };
  QuandlePresentation q;
  q.generators = {"c", "d", "t"};
  q.relations.emplace_back(op(op(d, '*', t), '*', d), op(op(c, '*', t), '*', c));
  Term rhs = op(t, '*', d);
  for (int j = 0; j < k; ++j) rhs = op(op(rhs, '/', c), '*', d);
  q.relations.emplace_back(op(op(d, '*', t), '*', c), rhs);
  return q;
}

enum class GroupInterpretation { Core, Associated };

/// Core: a*b = a/b = b a^-1 b. Associated: a*b = b^-1 a b, a/b = b a b^-1.
inline Word interpret(const Term& t, GroupInterpretation how) {
  if (t.leaf()) return Word::generator(t.gen);
  const Word a = interpret(*t.left, how), b = interpret(*t.right, how);
  if (how == GroupInterpretation::Core) return b * a.inverse() * b;
  return t.op == '*' ? b.inverse() * a * b : b * a * b.inverse();
}

inline GroupPresentation group_of(const QuandlePresentation& q, GroupInterpretation how) {
  GroupPresentation g;
  g.generators = q.generators;
  for (const auto& [l, r] : q.relations) g.relators.push_back(interpret(l, how) * interpret(r, how).inverse());
  return g;
}

inline GroupPresentation core_group(const QuandlePresentation& q) { return group_of(q, GroupInterpretation::Core); }
inline GroupPresentation associated_group(const QuandlePresentation& q) {
  return group_of(q, GroupInterpretation::Associated);
}

/// < c, t, w | wctwctw = ctct, ctwct = w^(k+1) c t w^(k+1) >
inline GroupPresentation simplified_core_rk(int k) {
  if (k < 1) throw AlgebraError("k must be at least 1");
  const std::vector<std::string> names{"c", "t", "w"};
  const std::string wk = "w^" + std::to_string(k + 1);
  GroupPresentation g;
  g.generators = names;
  g.relators.push_back(parse_word("w c t w c t w", names) * parse_word("c t c t", names).inverse());
  g.relators.push_back(parse_word("c t w c t", names) * parse_word(wk + " c t " + wk, names).inverse());
  return g;
}

/// < t, x | txt = xtx >
inline GroupPresentation trefoil_group() {
  const std::vector<std::string> names{"t", "x"};
  return {names, {parse_word("t x t", names) * parse_word("x t x", names).inverse()}};
}

// ------------------------------------------------------- Smith normal form

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
  const std::size_t rows = a.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix c(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < cols; ++j)
          c[i][j] = detail::checked_add(c[i][j], detail::checked_mul(a[i][k], b[k][j]));
  return c;
}

/// U * A * V = D with U, V unimodular, D diagonal, d_i | d_{i+1}.
struct SmithForm {
  IntMatrix d, u, v;
  std::vector<std::int64_t> diagonal;  // min(rows, cols) entries, nonnegative
};

/// Pivot: smallest nonzero absolute value, ties in row-major order.
inline SmithForm smith_normal_form(const IntMatrix& input, std::size_t cols) {
  const std::size_t m = input.size(), n = cols;
  for (const auto& row : input)
    if (row.size() != n) throw AlgebraError("matrix rows have unequal length");
  SmithForm f{input, identity_matrix(m), identity_matrix(n), {}};
  auto& a = f.d;
  using detail::checked_add;
  using detail::checked_mul;
  auto row_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // row dst -= q row src
    for (std::size_t j = 0; j < n; ++j) a[dst][j] = checked_add(a[dst][j], -checked_mul(q, a[src][j]));
    for (std::size_t j = 0; j < m; ++j) f.u[dst][j] = checked_add(f.u[dst][j], -checked_mul(q, f.u[src][j]));
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // col dst -= q col src
    for (std::size_t i = 0; i < m; ++i) a[i][dst] = checked_add(a[i][dst], -checked_mul(q, a[i][src]));
    for (std::size_t i = 0; i < n; ++i) f.v[i][dst] = checked_add(f.v[i][dst], -checked_mul(q, f.v[i][src]));
  };
  const std::size_t r = std::min(m, n);
  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == m || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      if (pi != t) {
        std::swap(a[pi], a[t]);
        std::swap(f.u[pi], f.u[t]);
      }
      if (pj != t) {
        for (auto& row : a) std::swap(row[pj], row[t]);
        for (auto& row : f.v) std::swap(row[pj], row[t]);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (const std::int64_t q = a[i][t] / a[t][t]) row_axpy(i, t, q);
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (const std::int64_t q = a[t][j] / a[t][t]) col_axpy(j, t, q);
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_axpy(t, i, -1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0) row_axpy(t, t, 2);
    f.diagonal.push_back(a[t][t]);
  }
  return f;
}

inline SmithForm smith_normal_form(const IntMatrix& input) {
  return smith_normal_form(input, input.empty() ? 0 : input[0].size());
}

// ----------------------------------------------------------- abelianization

struct AbelianInvariants {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // each > 1, d_i | d_{i+1}

  std::string to_string() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (auto t : torsion) parts.push_back("Z" + std::to_string(t));
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
    return s;
  }

  std::string torsion_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < torsion.size(); ++i) s += (i ? "," : "") + std::to_string(torsion[i]);
    return s + "]";
  }

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Z^n / rowspace(A) from the Smith form of an m x n relation matrix.
inline AbelianInvariants invariants_of(const SmithForm& f, std::size_t n) {
  AbelianInvariants inv;
  std::size_t nonzero = 0;
  for (auto d : f.diagonal)
    if (d != 0) {
      ++nonzero;
      if (d > 1) inv.torsion.push_back(d);
    }
  inv.free_rank = static_cast<int>(n - nonzero);
  return inv;
}

inline std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t n) {
  std::vector<std::int64_t> v(n, 0);
  for (const auto& l : w.letters()) v.at(l.gen) += l.exp;
  return v;
}

/// G/[G,G] with the coordinates needed to evaluate element orders.
struct Abelianization {
  AbelianInvariants invariants;
  IntMatrix v;                          // x (row of exponent sums) maps to x v
  std::vector<std::int64_t> modulus;    // per coordinate: 0 free, 1 trivial, d > 1 cyclic

  /// Order of the image of w; nullopt when infinite.
  std::optional<std::int64_t> order(const Word& w) const {
    const std::size_t n = modulus.size();
    const auto x = exponent_sums(w, n);
    std::int64_t ord = 1;
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t y = 0;
      for (std::size_t i = 0; i < n; ++i) y = detail::checked_add(y, detail::checked_mul(x[i], v[i][j]));
      const std::int64_t d = modulus[j];
      if (d == 0 && y != 0) return std::nullopt;
      if (d > 1) ord = std::lcm(ord, d / std::gcd(d, ((y % d) + d) % d));
    }
    return ord;
  }
};

inline Abelianization abelianize(const GroupPresentation& g) {
  const std::size_t n = g.generators.size();
  IntMatrix a;
  for (const auto& r : g.relators) a.push_back(exponent_sums(r, n));
  const SmithForm f = smith_normal_form(a, n);
  Abelianization ab;
  ab.invariants = invariants_of(f, n);
  ab.v = f.v;
  ab.modulus.assign(n, 0);
  for (std::size_t i = 0; i < f.diagonal.size(); ++i) ab.modulus[i] = f.diagonal[i];
  return ab;
}

inline AbelianInvariants abelianization(const GroupPresentation& g) { return abelianize(g).invariants; }

// ------------------------------------------------------ nilpotent quotient

namespace detail {

/// Truncated power series in noncommuting X_1..X_n, degrees 0..c, with
/// x_i -> 1 + X_i. Injective on F / gamma_{c+1}(F).
class Magnus {
 public:
  Magnus(int n, int c) : n_(n), c_(c), deg_(c + 1) {
    std::size_t size = 1;
    for (int d = 0; d <= c; ++d) {
      deg_[d].assign(size, 0);
      size *= static_cast<std::size_t>(n);
    }
    deg_[0][0] = 1;
  }

  static Magnus letter(int n, int c, int g, int e) {
    Magnus m(n, c);
    // (1 + X)^-1 = 1 - X + X^2 - ...
    std::size_t idx = 0;
    for (int d = 1; d <= c; ++d) {
      idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(g);
      if (e > 0)
        m.deg_[d][idx] = d == 1 ? 1 : 0;
      else
        m.deg_[d][idx] = (d % 2) ? -1 : 1;
    }
    return m;
  }

  static Magnus of(const Word& w, int n, int c) {
    Magnus m(n, c);
    for (const auto& l : w.letters()) m = m * letter(n, c, l.gen, l.exp);
    return m;
  }

  Magnus operator*(const Magnus& o) const {
    Magnus r(n_, c_);
    r.deg_[0][0] = 0;
    for (int a = 0; a <= c_; ++a)
      for (int b = 0; a + b <= c_; ++b) {
        const std::size_t sb = deg_at(b);
        for (std::size_t i = 0; i < deg_[a].size(); ++i) {
          if (!deg_[a][i]) continue;
          for (std::size_t j = 0; j < o.deg_[b].size(); ++j) {
            if (!o.deg_[b][j]) continue;
            auto& dst = r.deg_[a + b][i * sb + j];
            dst = checked_add(dst, checked_mul(deg_[a][i], o.deg_[b][j]));
          }
        }
      }
    return r;
  }

  /// For 1 + a: 1 - a + a^2 - ... up to degree c.
  Magnus inverse() const {
    Magnus a = *this;
    a.deg_[0][0] = 0;
    Magnus result(n_, c_), term(n_, c_);
    for (int k = 1; k <= c_; ++k) {
      term = term * a;
      term.deg_[0][0] = 0;
      for (int d = 1; d <= c_; ++d)
        for (std::size_t i = 0; i < term.deg_[d].size(); ++i)
          result.deg_[d][i] = checked_add(result.deg_[d][i], (k % 2 ? -1 : 1) * term.deg_[d][i]);
    }
    return result;
  }

  Magnus power(std::int64_t k) const {
    Magnus base = k < 0 ? inverse() : *this, r(n_, c_);
    for (std::uint64_t e = k < 0 ? -static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k); e; e >>= 1) {
      if (e & 1) r = r * base;
      if (e > 1) base = base * base;
    }
    return r;
  }

  static Magnus commutator(const Magnus& a, const Magnus& b) { return a.inverse() * b.inverse() * a * b; }

  /// Smallest positive degree with a nonzero coefficient; c+1 for the identity.
  int lead_degree() const {
    for (int d = 1; d <= c_; ++d)
      for (auto x : deg_[d])
        if (x) return d;
    return c_ + 1;
  }

  const std::vector<std::int64_t>& component(int d) const { return deg_[d]; }

 private:
  std::size_t deg_at(int d) const { return deg_[d].size(); }
  int n_, c_;
  std::vector<std::vector<std::int64_t>> deg_;
};

inline int pivot_of(const std::vector<std::int64_t>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) return static_cast<int>(i);
  return -1;
}

/// Integer row echelon basis of the lattice spanned by `rows`.
inline IntMatrix lattice_basis(IntMatrix rows) {
  IntMatrix basis;
  for (auto v : rows) {
    for (;;) {
      const int p = pivot_of(v);
      if (p < 0) break;
      auto it = std::find_if(basis.begin(), basis.end(), [&](const auto& b) { return pivot_of(b) == p; });
      if (it == basis.end()) {
        basis.push_back(v);
        break;
      }
      auto& b = *it;
      while (v[p] != 0) {
        const std::int64_t q = b[p] / v[p];
        for (std::size_t i = 0; i < v.size(); ++i) b[i] = checked_add(b[i], -checked_mul(q, v[i]));
        std::swap(b, v);
      }
    }
  }
  std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) { return pivot_of(x) < pivot_of(y); });
  return basis;
}

/// Coordinates of v in an echelon basis; throws when v is outside the lattice.
inline std::vector<std::int64_t> coordinates(std::vector<std::int64_t> v, const IntMatrix& basis) {
  std::vector<std::int64_t> c(basis.size(), 0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const int p = pivot_of(basis[j]);
    if (v[p] % basis[j][p] != 0) throw AlgebraError("internal: vector outside the commutator lattice");
    c[j] = v[p] / basis[j][p];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(v[i], -checked_mul(c[j], basis[j][i]));
  }
  if (pivot_of(v) >= 0) throw AlgebraError("internal: vector outside the commutator lattice");
  return c;
}

/// Induced generating sequence of the normal closure of the relators in
/// F / gamma_{c+1}(F), graded by leading degree.
class NormalClosure {
 public:
  NormalClosure(int n, int c) : n_(n), c_(c), rows_(c + 1) {
    for (int g = 0; g < n; ++g) gens_.push_back(Magnus::letter(n, c, g, 1));
  }

  void add(const Magnus& m) {
    queue_.push_back(m);
    while (!queue_.empty()) {
      Magnus h = queue_.back();
      queue_.pop_back();
      sift(std::move(h));
    }
  }

  /// Leading vectors of degree d.
  IntMatrix leading(int d) const {
    IntMatrix out;
    for (const auto& r : rows_[d]) out.push_back(r.second.component(d));
    return out;
  }

 private:
  void sift(Magnus h) {
    for (;;) {
      const int s = h.lead_degree();
      if (s > c_) return;
      const auto& v = h.component(s);
      const int p = pivot_of(v);
      auto& rows = rows_[s];
      auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.first == p; });
      if (it == rows.end()) {
        rows.emplace_back(p, h);
        close(h, s);
        return;
      }
      Magnus a = it->second, b = h;
      std::int64_t av = a.component(s)[p], bv = v[p];
      while (bv != 0) {
        const std::int64_t q = av / bv;
        a = a * b.power(-q);
        av -= q * bv;
        std::swap(a, b);
        std::swap(av, bv);
      }
      it->second = a;
      close(a, s);
      h = b;
    }
  }

  void close(const Magnus& h, int s) {
    for (const auto& g : gens_)
      if (s + 1 <= c_) queue_.push_back(Magnus::commutator(h, g));
    for (int d = 1; d + s <= c_; ++d)
      for (const auto& r : rows_[d]) queue_.push_back(Magnus::commutator(h, r.second));
  }

  int n_, c_;
  std::vector<Magnus> gens_;
  std::vector<std::vector<std::pair<int, Magnus>>> rows_;
  std::vector<Magnus> queue_;
};

}  // namespace detail

/// Lower central factors gamma_s/gamma_{s+1}, s = 1..class, of G/gamma_{class+1}.
struct NilpotentQuotient {
  int cls = 0;
  std::vector<AbelianInvariants> factors;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i)
      s += "gamma_" + std::to_string(i + 1) + "/gamma_" + std::to_string(i + 2) + " = " + factors[i].to_string() + "\n";
    return s;
  }
};

inline constexpr int kMaxNilpotentClass = 3;

inline NilpotentQuotient nilpotent_quotient(const GroupPresentation& g, int cls) {
  if (cls < 1 || cls > kMaxNilpotentClass)
    throw AlgebraError("nilpotency class " + std::to_string(cls) + " outside 1.." + std::to_string(kMaxNilpotentClass));
  const int n = static_cast<int>(g.generators.size());
  NilpotentQuotient out;
  out.cls = cls;
  if (n == 0) {
    out.factors.assign(cls, AbelianInvariants{});
    return out;
  }
  detail::NormalClosure closure(n, cls);
  for (const auto& r : g.relators) closure.add(detail::Magnus::of(r, n, cls));
  // left-normed commutators of generators span gamma_s modulo gamma_{s+1}
  std::vector<std::vector<detail::Magnus>> basic(cls + 1);
  for (int i = 0; i < n; ++i) basic[1].push_back(detail::Magnus::letter(n, cls, i, 1));
  for (int s = 2; s <= cls; ++s)
    for (const auto& a : basic[s - 1])
      for (const auto& x : basic[1]) basic[s].push_back(detail::Magnus::commutator(a, x));
  for (int s = 1; s <= cls; ++s) {
    IntMatrix span;
    for (const auto& b : basic[s])
      if (b.lead_degree() == s) span.push_back(b.component(s));
    const IntMatrix lattice = detail::lattice_basis(span);
    IntMatrix rel;
    for (const auto& v : closure.leading(s)) rel.push_back(detail::coordinates(v, lattice));
    const SmithForm f = smith_normal_form(rel, lattice.size());
    out.factors.push_back(invariants_of(f, lattice.size()));
  }
  return out;
}

// ------------------------------------------------------------ R_k family

struct DistinguishReport {
  bool distinguished = false;
  std::string invariant;  // which invariant differs, with both values

  std::string to_string() const { return distinguished ? "DistinguishedBy(" + invariant + ")" : "NotDistinguished"; }
};

/// Compares the abelianization and the class-3 lower central factors of
/// A_n and A_m (the simplified core presentations).
inline DistinguishReport distinguish_rk(int n, int m) {
  if (n < 1 || m < 1) throw AlgebraError("n and m must be at least 1");
  auto job = [](int k) { return nilpotent_quotient(simplified_core_rk(k), kMaxNilpotentClass); };
  auto fa = std::async(std::launch::async, job, n);
  const auto b = job(m);
  const auto a = fa.get();
  DistinguishReport r;
  for (std::size_t s = 0; s < a.factors.size(); ++s) {
    const std::string name = "gamma_" + std::to_string(s + 1) + "/gamma_" + std::to_string(s + 2);
    if (a.factors[s].free_rank != b.factors[s].free_rank) {
      r.distinguished = true;
      r.invariant = name + " free rank: " + std::to_string(a.factors[s].free_rank) + " vs " +
                    std::to_string(b.factors[s].free_rank);
      return r;
    }
    if (a.factors[s].torsion != b.factors[s].torsion) {
      r.distinguished = true;
      r.invariant = name + " torsion: " + a.factors[s].torsion_string() + " vs " + b.factors[s].torsion_string();
      return r;
    }
  }
  return r;
}

}  // namespace smgd

#endif  // SMGD_FPGROUP_HPP

#ifndef SMGD_COLORING_HPP
#define SMGD_COLORING_HPP

// Biquandle colorings of semi-arcs: local rules, counting, enumeration and
// fundamental presentations.

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "smgd/biquandle.hpp"
#include "smgd/diagram.hpp"

namespace smgd {

enum class Op { Same, Underline, Overline };

/// target = a                (Same)
/// target = a utr b / a otr b (Underline / Overline)
/// Indices are ports in local_constraints and generators in presentations.
struct Relation {
  int target = 0;
  Op op = Op::Same;
  int a = 0, b = 0;
  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Rules around one vertex, over its ports. x and y label the under and
/// over semi-arcs bounding the corner to the right of both strands.
///   positive crossing: x = under-in, y = over-out; under-out = x utr y, over-in = y otr x
///   negative crossing: x = under-out, y = over-in; under-in = x utr y, over-out = y otr x
///   marker: all four colors equal
///   singular: as the crossing of its orientation shape, and also with the operations exchanged
inline std::vector<Relation> local_constraints(const Vertex& v) {
  switch (v.kind) {
    case VertexKind::CrossingPositive:
      return {{2, Op::Underline, 0, 1}, {3, Op::Overline, 1, 0}};
    case VertexKind::CrossingNegative:
      return {{0, Op::Underline, 2, 1}, {3, Op::Overline, 1, 2}};
    case VertexKind::Marker:
      return {{1, Op::Same, 0, 0}, {2, Op::Same, 0, 0}, {3, Op::Same, 0, 0}};
    case VertexKind::Singular:
      if (v.first_out)
        return {{2, Op::Underline, 0, 1}, {2, Op::Overline, 0, 1}, {3, Op::Overline, 1, 0}, {3, Op::Underline, 1, 0}};
      return {{0, Op::Underline, 2, 1}, {0, Op::Overline, 2, 1}, {3, Op::Overline, 1, 2}, {3, Op::Underline, 1, 2}};
  }
  return {};
}

inline int evaluate(const FiniteBiquandle& x, Op op, int a, int b) {
  switch (op) {
    case Op::Same: return a;
    case Op::Underline: return x.underline(a, b);
    case Op::Overline: return x.overline(a, b);
  }
  return 0;
}

/// Whether the port colors satisfy the rules at `v`.
inline bool local_rules_hold(const Vertex& v, const std::array<int, 4>& colors, const FiniteBiquandle& x) {
  for (const auto& r : local_constraints(v))
    if (colors[r.target] != evaluate(x, r.op, colors[r.a], colors[r.b])) return false;
  return true;
}

enum class PresentationMode { Biquandle, Quandle };

/// One generator per semi-arc (edge id e is generator e-1).
struct BiquandlePresentation {
  PresentationMode mode = PresentationMode::Biquandle;
  std::vector<std::string> generators;
  std::vector<Relation> relations;

  std::string to_string() const {
    auto g = [&](int i) { return generators[i]; };
    std::string s = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : " ") + generators[i];
    s += " |";
    for (std::size_t i = 0; i < relations.size(); ++i) {
      const auto& r = relations[i];
      s += i ? ", " : " ";
      s += g(r.target) + " = ";
      if (r.op == Op::Same) s += g(r.a);
      else s += g(r.a) + (r.op == Op::Underline ? (mode == PresentationMode::Quandle ? " * " : " utr ") : " otr ") + g(r.b);
    }
    return s + " >";
  }

  /// Merge generators identified by Same relations; drop resulting trivial relations.
  BiquandlePresentation eliminated() const {
    const int n = static_cast<int>(generators.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& r : relations)
      if (r.op == Op::Same) {
        const int a = find(r.a), t = find(r.target);
        if (a != t) parent[std::max(a, t)] = std::min(a, t);
      }
    std::vector<int> index(n, -1);
    BiquandlePresentation out;
    out.mode = mode;
    for (int i = 0; i < n; ++i)
      if (find(i) == i) {
        index[i] = static_cast<int>(out.generators.size());
        out.generators.push_back(generators[i]);
      }
    for (const auto& r : relations) {
      if (r.op == Op::Same) continue;
      Relation q{index[find(r.target)], r.op, index[find(r.a)], index[find(r.b)]};
      if (std::find(out.relations.begin(), out.relations.end(), q) == out.relations.end()) out.relations.push_back(q);
    }
    return out;
  }
};

/// Symbolic local rules. Quandle mode makes the overline operation trivial
/// (x otr y = x) and is only defined without singular vertices.
inline BiquandlePresentation fundamental_presentation(const Diagram& d,
                                                      PresentationMode mode = PresentationMode::Biquandle) {
  if (mode == PresentationMode::Quandle && d.count(VertexKind::Singular) > 0)
    throw DiagramError("quandle presentations are defined for diagrams without singular vertices");
  BiquandlePresentation p;
  p.mode = mode;
  for (EdgeId e = 1; e <= d.edge_count(); ++e) p.generators.push_back("x" + std::to_string(e));
  for (const auto& v : d.vertices)
    for (auto r : local_constraints(v)) {
      r.target = v.ports[r.target] - 1;
      r.a = v.ports[r.a] - 1;
      r.b = v.ports[r.b] - 1;
      if (mode == PresentationMode::Quandle && r.op == Op::Overline) {
        r.op = Op::Same;
        r.b = r.a;
      }
      if (r.op == Op::Same && r.a == r.target) continue;
      p.relations.push_back(r);
    }
  return p;
}

/// Solutions of a presentation in X, by propagation and branching.
class PresentationSolver {
 public:
  PresentationSolver(const BiquandlePresentation& p, const FiniteBiquandle& x)
      : p_(p), x_(x), value_(p.generators.size(), 0), by_gen_(p.generators.size()) {
    const int n = x.order;
    // inverses of the maps a -> a utr b and a -> a otr b
    inv_u_.assign(n + 1, std::vector<int>(n + 1, 0));
    inv_o_.assign(n + 1, std::vector<int>(n + 1, 0));
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        inv_u_[b][x.underline(a, b)] = a;
        inv_o_[b][x.overline(a, b)] = a;
      }
    for (int i = 0; i < static_cast<int>(p.relations.size()); ++i) {
      const auto& r = p.relations[i];
      for (int g : {r.target, r.a, r.b}) by_gen_[g].push_back(i);
    }
  }

  /// Calls `visit` on each solution (values 1..n per generator); stops early
  /// when it returns false. Returns the number visited.
  std::uint64_t solve(const std::function<bool(const std::vector<int>&)>& visit) {
    count_ = 0;
    stop_ = false;
    std::fill(value_.begin(), value_.end(), 0);
    std::vector<int> trail;
    for (int i = 0; i < static_cast<int>(p_.relations.size()); ++i) queue_.push_back(i);
    if (propagate(trail)) branch(visit);
    return count_;
  }

 private:
  bool assign(int g, int v, std::vector<int>& trail) {
    if (value_[g]) return value_[g] == v;
    value_[g] = v;
    trail.push_back(g);
    for (int r : by_gen_[g]) queue_.push_back(r);
    return true;
  }

  bool propagate(std::vector<int>& trail) {
    while (!queue_.empty()) {
      const Relation& r = p_.relations[queue_.back()];
      queue_.pop_back();
      const int t = value_[r.target], a = value_[r.a], b = value_[r.b];
      if (r.op == Op::Same) {
        if (a && !assign(r.target, a, trail)) return fail();
        if (t && !assign(r.a, t, trail)) return fail();
        continue;
      }
      if (a && b) {
        if (!assign(r.target, evaluate(x_, r.op, a, b), trail)) return fail();
      } else if (t && b) {
        if (!assign(r.a, (r.op == Op::Underline ? inv_u_ : inv_o_)[b][t], trail)) return fail();
      }
    }
    return true;
  }

  bool fail() {
    queue_.clear();
    return false;
  }

  void undo(std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      value_[trail.back()] = 0;
      trail.pop_back();
    }
  }

  void branch(const std::function<bool(const std::vector<int>&)>& visit) {
    if (stop_) return;
    int g = -1;
    std::size_t best = 0;
    for (int i = 0; i < static_cast<int>(value_.size()); ++i)
      if (!value_[i] && (g < 0 || by_gen_[i].size() > best)) {
        g = i;
        best = by_gen_[i].size();
      }
    if (g < 0) {
      ++count_;
      if (!visit(value_)) stop_ = true;
      return;
    }
    for (int c = 1; c <= x_.order && !stop_; ++c) {
      std::vector<int> trail;
      if (assign(g, c, trail) && propagate(trail)) branch(visit);
      undo(trail, 0);
    }
  }

  const BiquandlePresentation& p_;
  const FiniteBiquandle& x_;
  std::vector<int> value_;
  std::vector<std::vector<int>> by_gen_;
  std::vector<std::vector<int>> inv_u_, inv_o_;
  std::vector<int> queue_;
  std::uint64_t count_ = 0;
  bool stop_ = false;
};

/// color[e] for edge id e; index 0 unused.
struct Coloring {
  std::vector<int> color;
  friend bool operator==(const Coloring&, const Coloring&) = default;
  friend auto operator<=>(const Coloring&, const Coloring&) = default;
};

inline bool is_coloring(const Diagram& d, const Coloring& c, const FiniteBiquandle& x) {
  if (static_cast<int>(c.color.size()) != d.edge_count() + 1) return false;
  for (EdgeId e = 1; e <= d.edge_count(); ++e)
    if (c.color[e] < 1 || c.color[e] > x.order) return false;
  for (const auto& v : d.vertices)
    if (!local_rules_hold(v, {c.color[v.ports[0]], c.color[v.ports[1]], c.color[v.ports[2]], c.color[v.ports[3]]}, x))
      return false;
  return true;
}

inline std::uint64_t count_colorings(const Diagram& d, const FiniteBiquandle& x) {
  const auto p = fundamental_presentation(d);
  PresentationSolver s(p, x);
  return s.solve([](const std::vector<int>&) { return true; });
}

struct ColoringOptions {
  std::uint64_t max_colorings = 1000000;
};

/// All colorings, sorted lexicographically.
inline std::vector<Coloring> enumerate_colorings(const Diagram& d, const FiniteBiquandle& x,
                                                 const ColoringOptions& opt = {}) {
  const auto p = fundamental_presentation(d);
  PresentationSolver s(p, x);
  std::vector<Coloring> out;
  bool over = false;
  s.solve([&](const std::vector<int>& v) {
    if (out.size() >= opt.max_colorings) {
      over = true;
      return false;
    }
    Coloring c;
    c.color.push_back(0);
    c.color.insert(c.color.end(), v.begin(), v.end());
    out.push_back(std::move(c));
    return true;
  });
  if (over) throw CapExceeded("more than " + std::to_string(opt.max_colorings) + " colorings");
  std::sort(out.begin(), out.end());
  return out;
}

/// Elements a with a utr a = a: the colors of constant colorings.
inline std::vector<int> idempotents(const FiniteBiquandle& x) {
  std::vector<int> out;
  for (int a = 1; a <= x.order; ++a)
    if (x.underline(a, a) == a) out.push_back(a);
  return out;
}

}  // namespace smgd

#endif  // SMGD_COLORING_HPP

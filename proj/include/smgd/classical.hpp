#ifndef SMGD_CLASSICAL_HPP
#define SMGD_CLASSICAL_HPP

// Classical link diagrams: components, Reidemeister simplification,
// Alexander polynomial, Kauffman bracket and unlink certification.

#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "smgd/diagram.hpp"
#include "smgd/laurent.hpp"
#include "smgd/moves.hpp"

namespace smgd {

inline void require_classical(const Diagram& d, const char* what) {
  if (!d.is_classical()) throw DiagramError(std::string(what) + " needs a classical diagram (crossings only)");
}

/// Number of link components: strands traced straight through crossings,
/// plus crossing-free circles.
inline int component_count(const Diagram& d) {
  require_classical(d, "component_count");
  const auto ends = d.edge_ends();
  std::vector<bool> seen(d.edge_count() + 1, false);
  int n = static_cast<int>(d.circles.size());
  for (EdgeId c : d.circles) seen[c] = true;
  for (EdgeId e = 1; e <= d.edge_count(); ++e) {
    if (seen[e]) continue;
    ++n;
    EdgeId cur = e;
    while (!seen[cur]) {
      seen[cur] = true;
      const End head = ends[cur][1];
      cur = d.vertices[head.vertex].ports[(head.port + 2) % 4];
    }
  }
  return n;
}

inline int writhe(const Diagram& d) {
  return static_cast<int>(d.count(VertexKind::CrossingPositive)) -
         static_cast<int>(d.count(VertexKind::CrossingNegative));
}

struct SimplifyOptions {
  int budget = 10000;       // elementary move applications
  int plateau_depth = 2;    // R3 moves explored when no move decreases
};

namespace detail {

inline std::vector<MoveKind> decreasing_moves() {
  return {{"G1", false}, {"G1'", false}, {"G2", false}};
}

inline std::optional<Diagram> try_decrease(const Diagram& d) {
  for (const auto& k : decreasing_moves()) {
    const auto sites = find_sites(d, k);
    if (!sites.empty()) return apply(d, sites.front());
  }
  return std::nullopt;
}

}  // namespace detail

/// Greedy Reidemeister descent. When stuck, a breadth-first search through
/// R3 moves up to the plateau depth looks for a state admitting a decrease.
inline Diagram simplify(const Diagram& d, const SimplifyOptions& opt = {}) {
  require_classical(d, "simplify");
  Diagram cur = d;
  int budget = opt.budget;
  while (budget > 0) {
    if (auto next = detail::try_decrease(cur)) {
      cur = *next;
      --budget;
      continue;
    }
    // plateau search
    std::set<std::string> seen{canonical_form(cur)};
    std::deque<std::pair<Diagram, int>> queue{{cur, 0}};
    bool found = false;
    while (!queue.empty() && !found && budget > 0) {
      auto [state, depth] = queue.front();
      queue.pop_front();
      if (depth >= opt.plateau_depth) continue;
      for (bool fwd : {true, false}) {
        for (const auto& site : find_sites(state, {"G3", fwd})) {
          if (budget <= 0) break;
          Diagram nx = apply(state, site);
          --budget;
          if (!seen.insert(canonical_form(nx)).second) continue;
          if (auto dec = detail::try_decrease(nx)) {
            cur = *dec;
            --budget;
            found = true;
            break;
          }
          queue.push_back({nx, depth + 1});
        }
        if (found) break;
      }
    }
    if (!found) break;
  }
  return cur;
}

inline Diagram simplify(const Diagram& d, int budget) {
  SimplifyOptions o;
  o.budget = budget;
  return simplify(d, o);
}

/// One-variable Alexander polynomial from the Wirtinger presentation,
/// normalized. Split diagrams give 0.
inline Laurent alexander_polynomial(const Diagram& d) {
  require_classical(d, "alexander_polynomial");
  if (d.vertices.empty() && d.circles.empty()) throw DiagramError("alexander_polynomial of the empty diagram");
  const int E = d.edge_count();
  // arcs: edges joined where they pass over a crossing (ports 1 and 3)
  std::vector<int> parent(E + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& v : d.vertices) parent[find(v.ports[1])] = find(v.ports[3]);
  std::map<int, int> arc_index;
  for (EdgeId e = 1; e <= E; ++e) arc_index.emplace(find(e), static_cast<int>(arc_index.size()));
  const int arcs = static_cast<int>(arc_index.size());
  const int rows = static_cast<int>(d.vertices.size());
  if (arcs == 1 && rows == 0) return Laurent(1);
  std::vector<std::vector<Laurent>> m(rows, std::vector<Laurent>(arcs));
  const Laurent t = Laurent::monomial(1, 1);
  for (int r = 0; r < rows; ++r) {
    const auto& v = d.vertices[r];
    const int k = arc_index[find(v.ports[1])];
    const int i = arc_index[find(v.ports[0])];
    const int j = arc_index[find(v.ports[2])];
    if (v.kind == VertexKind::CrossingPositive) {
      m[r][k] += Laurent(1) - t;
      m[r][i] += t;
      m[r][j] -= Laurent(1);
    } else {
      m[r][k] += t - Laurent(1);
      m[r][i] += Laurent(1);
      m[r][j] -= t;
    }
  }
  // (arcs-1) minors: drop one column, and one row when the matrix is square
  if (arcs - 1 > rows) return Laurent();
  std::vector<std::vector<Laurent>> minor;
  for (int r = 0; r < rows - (rows == arcs ? 1 : 0); ++r) {
    std::vector<Laurent> row(m[r].begin() + 1, m[r].end());
    minor.push_back(std::move(row));
  }
  return determinant(std::move(minor)).normalized();
}

struct BracketOptions {
  int max_crossings = 20;
};

namespace detail {

/// Number of loops in the state where crossing i takes the A-smoothing iff bit i is set.
inline int state_loops(const Diagram& d, std::uint64_t state, const std::vector<std::array<End, 2>>& ends) {
  const int n = static_cast<int>(d.vertices.size());
  std::vector<int> parent(4 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int v = 0; v < n; ++v) {
    if ((state >> v) & 1u) {
      unite(4 * v + 0, 4 * v + 1);
      unite(4 * v + 2, 4 * v + 3);
    } else {
      unite(4 * v + 1, 4 * v + 2);
      unite(4 * v + 3, 4 * v + 0);
    }
  }
  for (EdgeId e = 1; e <= d.edge_count(); ++e) {
    if (ends[e][0].vertex < 0) continue;
    unite(4 * ends[e][0].vertex + ends[e][0].port, 4 * ends[e][1].vertex + ends[e][1].port);
  }
  int loops = static_cast<int>(d.circles.size());
  for (int x = 0; x < 4 * n; ++x)
    if (find(x) == x) ++loops;
  return loops;
}

}  // namespace detail

/// Kauffman bracket with <O> = 1 and loop value -A^2 - A^-2. The A-smoothing
/// at a crossing joins ports (0,1) and (2,3).
inline Laurent kauffman_bracket(const Diagram& d, const BracketOptions& opt = {}) {
  require_classical(d, "kauffman_bracket");
  const int n = static_cast<int>(d.vertices.size());
  if (n > opt.max_crossings || n > 62)
    throw CapExceeded("kauffman_bracket: " + std::to_string(n) + " crossings exceed the cap of " +
                      std::to_string(opt.max_crossings));
  if (n == 0 && d.circles.empty()) throw DiagramError("kauffman_bracket of the empty diagram");
  const auto ends = d.edge_ends();
  const Laurent loop = Laurent::monomial(-1, 2) + Laurent::monomial(-1, -2);
  // tally (A-exponent, loops) first, then expand
  std::map<std::pair<int, int>, std::int64_t> tally;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const int a = __builtin_popcountll(s);
    ++tally[{a - (n - a), detail::state_loops(d, s, ends)}];
  }
  Laurent out;
  for (const auto& [key, count] : tally) out += Laurent::monomial(count, key.first) * loop.pow(key.second - 1);
  return out;
}

/// The diagram with crossing v replaced by its A-smoothing (ports (0,1) and
/// (2,3) joined) or B-smoothing, reoriented along the new strands.
inline Diagram smooth_crossing(const Diagram& d, int v, bool a_smoothing) {
  require_classical(d, "smooth_crossing");
  if (v < 0 || v >= static_cast<int>(d.vertices.size())) throw DiagramError("no crossing " + std::to_string(v));
  const int E = d.edge_count();
  std::vector<int> parent(E + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto& p = d.vertices[v].ports;
  const int shift = a_smoothing ? 0 : 1;
  parent[find(p[shift])] = find(p[(shift + 1) % 4]);
  parent[find(p[(shift + 2) % 4])] = find(p[(shift + 3) % 4]);
  // unoriented crossings: under strand on ports 0, 2 and over strand on 1, 3
  std::vector<std::array<EdgeId, 4>> xs;
  for (int w = 0; w < static_cast<int>(d.vertices.size()); ++w) {
    if (w == v) continue;
    std::array<EdgeId, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = find(d.vertices[w].ports[i]);
    xs.push_back(q);
  }
  std::map<EdgeId, std::vector<End>> occ;
  for (int w = 0; w < static_cast<int>(xs.size()); ++w)
    for (int i = 0; i < 4; ++i) occ[xs[w][i]].push_back({w, i});
  std::vector<std::array<bool, 4>> incoming(xs.size(), {false, false, false, false});
  std::vector<std::array<bool, 4>> done(xs.size(), {false, false, false, false});
  for (int w = 0; w < static_cast<int>(xs.size()); ++w)
    for (int i = 0; i < 4; ++i) {
      End cur{w, i};
      while (!done[cur.vertex][cur.port]) {
        const End out{cur.vertex, (cur.port + 2) % 4};
        done[cur.vertex][cur.port] = done[out.vertex][out.port] = true;
        incoming[cur.vertex][cur.port] = true;
        const auto& o = occ[xs[out.vertex][out.port]];
        cur = o[0] == out ? o[1] : o[0];
      }
    }
  Diagram out;
  out.name = d.name;
  for (int w = 0; w < static_cast<int>(xs.size()); ++w) {
    const int r = incoming[w][0] ? 0 : 2;
    Vertex x;
    for (int i = 0; i < 4; ++i) x.ports[i] = xs[w][(i + r) % 4];
    x.kind = incoming[w][(3 + r) % 4] ? VertexKind::CrossingPositive : VertexKind::CrossingNegative;
    out.vertices.push_back(x);
  }
  std::set<EdgeId> roots;
  for (EdgeId e = 1; e <= E; ++e) roots.insert(find(e));
  for (EdgeId r : roots)
    if (!occ.count(r)) out.circles.push_back(r);
  return parse_smgd(serialize_smgd(out));
}

/// (-A^3)^(-writhe) <D>: invariant under all Reidemeister moves.
inline Laurent jones_normalized_bracket(const Diagram& d, const BracketOptions& opt = {}) {
  const int w = writhe(d);
  return Laurent::monomial(w % 2 == 0 ? 1 : -1, -3 * w) * kauffman_bracket(d, opt);
}

struct UnlinkCertificate {
  enum class Kind { Unlink, NotUnlink, Unknown };
  Kind kind = Kind::Unknown;
  int components = 0;  // for Unlink
  std::string reason;  // for NotUnlink / Unknown
  Diagram simplified;

  std::string to_string() const {
    switch (kind) {
      case Kind::Unlink: return "Unlink(" + std::to_string(components) + ")";
      case Kind::NotUnlink: return "NotUnlink(" + reason + ")";
      case Kind::Unknown: return "Unknown(" + reason + ")";
    }
    return "?";
  }
};

inline UnlinkCertificate certify_unlink(const Diagram& d, const SimplifyOptions& opt = {}) {
  require_classical(d, "certify_unlink");
  UnlinkCertificate c;
  c.simplified = simplify(d, opt);
  const Diagram& s = c.simplified;
  if (s.vertices.empty()) {
    c.kind = UnlinkCertificate::Kind::Unlink;
    c.components = static_cast<int>(s.circles.size());
    return c;
  }
  const int n = component_count(s);
  const Laurent alex = alexander_polynomial(s);
  if (n == 1 && alex != Laurent(1)) {
    c.kind = UnlinkCertificate::Kind::NotUnlink;
    c.reason = "Alexander polynomial " + alex.to_string() + " != 1";
    return c;
  }
  if (n > 1 && !alex.is_zero()) {
    c.kind = UnlinkCertificate::Kind::NotUnlink;
    c.reason = "Alexander polynomial " + alex.to_string() + " != 0";
    return c;
  }
  if (static_cast<int>(s.vertices.size()) <= BracketOptions{}.max_crossings) {
    const Laurent loop = Laurent::monomial(-1, 2) + Laurent::monomial(-1, -2);
    const Laurent f = jones_normalized_bracket(s);
    if (f != loop.pow(n - 1)) {
      c.kind = UnlinkCertificate::Kind::NotUnlink;
      c.reason = "bracket " + f.to_string("A") + " differs from the unlink value";
      return c;
    }
  }
  c.kind = UnlinkCertificate::Kind::Unknown;
  c.reason = "simplification stopped at " + std::to_string(s.vertices.size()) + " crossings";
  return c;
}

inline UnlinkCertificate certify_unlink(const Diagram& d, int budget) {
  SimplifyOptions o;
  o.budget = budget;
  return certify_unlink(d, o);
}

}  // namespace smgd

#endif  // SMGD_CLASSICAL_HPP

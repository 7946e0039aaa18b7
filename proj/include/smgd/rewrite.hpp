#ifndef SMGD_REWRITE_HPP
#define SMGD_REWRITE_HPP

// Local rewriting of diagrams: a pattern side is a small fragment inside a
// disk whose boundary points b0..b(n-1) are listed counterclockwise. A side
// is either a connected set of vertices, or a set of arcs (b0->b1, b2->b3)
// lying in one face of the host diagram.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smgd/diagram.hpp"

namespace smgd {

enum class TemplateKind { Crossing, Marker, Singular };

/// Unoriented template vertex. Crossing: under pair (0,2), over pair (1,3).
/// Marker: lower smoothing joins (0,1),(2,3). Singular: strands (0,2),(1,3).
struct TemplateVertex {
  TemplateKind kind;
  std::array<std::string, 4> labels;
};

struct TemplateSide {
  std::vector<TemplateVertex> vertices;
  std::vector<std::pair<std::string, std::string>> arcs;
};

/// Oriented, concrete pattern side. refs[q] >= 0 is an internal edge index,
/// refs[q] < 0 encodes boundary point -(ref+1).
struct PatternSide {
  std::vector<Vertex> vertices;
  std::vector<std::array<int, 4>> refs;
  /// Arcs as (entry boundary point, exit boundary point).
  std::vector<std::pair<int, int>> arcs;
  int internal_edges = 0;

  bool arcs_only() const { return vertices.empty(); }
};

struct Pattern {
  std::string tag;        // e.g. "G4'"
  std::string name;       // tag plus variant index
  int boundary = 0;
  std::vector<bool> into; // per boundary point: edge enters the disk
  PatternSide lhs, rhs;
};

class RewriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_boundary_label(const std::string& s) { return !s.empty() && s[0] == 'b'; }

inline int boundary_index(const std::string& s) { return std::stoi(s.substr(1)); }

struct SideOrientation {
  // per template vertex, per template port: true when outgoing
  std::vector<std::array<bool, 4>> out;
};

/// All orientations of a template side compatible with the boundary directions.
inline std::vector<SideOrientation> orient_side(const TemplateSide& side, const std::vector<bool>& into) {
  std::map<std::string, std::vector<std::pair<int, int>>> internal;
  for (int v = 0; v < static_cast<int>(side.vertices.size()); ++v)
    for (int p = 0; p < 4; ++p) {
      const auto& l = side.vertices[v].labels[p];
      if (!is_boundary_label(l)) internal[l].push_back({v, p});
    }
  for (const auto& [a, b] : side.arcs)
    if (into[boundary_index(a)] == into[boundary_index(b)]) return {};
  std::vector<std::string> names;
  for (const auto& [l, occ] : internal) {
    if (occ.size() != 2) throw RewriteError("template label " + l + " must occur twice");
    names.push_back(l);
  }
  std::vector<SideOrientation> out;
  const int n = static_cast<int>(names.size());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    SideOrientation o;
    o.out.assign(side.vertices.size(), {false, false, false, false});
    for (int v = 0; v < static_cast<int>(side.vertices.size()); ++v)
      for (int p = 0; p < 4; ++p) {
        const auto& l = side.vertices[v].labels[p];
        if (is_boundary_label(l)) o.out[v][p] = !into[boundary_index(l)];
      }
    for (int i = 0; i < n; ++i) {
      const auto& occ = internal[names[i]];
      const bool first_out = (mask >> i) & 1u;
      o.out[occ[0].first][occ[0].second] = first_out;
      o.out[occ[1].first][occ[1].second] = !first_out;
    }
    bool ok = true;
    for (int v = 0; v < static_cast<int>(side.vertices.size()) && ok; ++v) {
      const auto& x = o.out[v];
      if (side.vertices[v].kind == TemplateKind::Marker)
        ok = x[0] != x[1] && x[1] != x[2] && x[2] != x[3];
      else
        ok = x[0] != x[2] && x[1] != x[3];
    }
    if (ok) out.push_back(std::move(o));
  }
  return out;
}

inline PatternSide concretize(const TemplateSide& side, const SideOrientation& o, const std::vector<bool>& into) {
  PatternSide ps;
  std::map<std::string, int> internal;
  for (std::size_t v = 0; v < side.vertices.size(); ++v) {
    const auto& t = side.vertices[v];
    const auto& out = o.out[v];
    Vertex x;
    int r = 0;
    switch (t.kind) {
      case TemplateKind::Crossing: {
        r = out[0] ? 2 : 0;
        x.kind = out[(r + 3) % 4] ? VertexKind::CrossingNegative : VertexKind::CrossingPositive;
        break;
      }
      case TemplateKind::Singular: {
        r = out[0] ? 2 : 0;
        x.kind = VertexKind::Singular;
        x.first_out = out[(r + 1) % 4];
        break;
      }
      case TemplateKind::Marker: {
        r = 0;
        x.kind = VertexKind::Marker;
        x.first_out = out[0];
        break;
      }
    }
    std::array<int, 4> refs{};
    for (int q = 0; q < 4; ++q) {
      const int tp = (q + r) % 4;
      if (x.port_out(q) != out[tp]) throw RewriteError("internal: template orientation mismatch");
      const auto& l = t.labels[tp];
      if (is_boundary_label(l)) {
        refs[q] = -(boundary_index(l) + 1);
      } else {
        auto [it, fresh] = internal.emplace(l, static_cast<int>(internal.size()));
        refs[q] = it->second;
      }
    }
    ps.vertices.push_back(x);
    ps.refs.push_back(refs);
  }
  ps.internal_edges = static_cast<int>(internal.size());
  for (const auto& [a, b] : side.arcs) {
    const int ia = boundary_index(a), ib = boundary_index(b);
    ps.arcs.push_back(into[ia] ? std::make_pair(ia, ib) : std::make_pair(ib, ia));
  }
  return ps;
}

inline int count_boundary(const TemplateSide& s) {
  int n = 0;
  for (const auto& v : s.vertices)
    for (const auto& l : v.labels)
      if (is_boundary_label(l)) n = std::max(n, boundary_index(l) + 1);
  for (const auto& [a, b] : s.arcs) n = std::max({n, boundary_index(a) + 1, boundary_index(b) + 1});
  return n;
}

}  // namespace detail

/// Every orientation variant shared by both sides of a template pair.
inline std::vector<Pattern> expand_template(const std::string& tag, const TemplateSide& lhs,
                                            const TemplateSide& rhs) {
  const int n = detail::count_boundary(lhs);
  if (detail::count_boundary(rhs) != n) throw RewriteError(tag + ": sides disagree on boundary size");
  std::vector<Pattern> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> into(n);
    for (int i = 0; i < n; ++i) into[i] = (mask >> i) & 1u;
    const auto lo = detail::orient_side(lhs, into);
    const auto ro = detail::orient_side(rhs, into);
    for (const auto& a : lo)
      for (const auto& b : ro) {
        Pattern p;
        p.tag = tag;
        p.boundary = n;
        p.into = into;
        p.lhs = detail::concretize(lhs, a, into);
        p.rhs = detail::concretize(rhs, b, into);
        out.push_back(std::move(p));
      }
  }
  return out;
}

/// A place where a pattern side occurs. For vertex sides `anchor` holds
/// (host vertex, rotation) per pattern vertex; for arc sides it holds
/// (edge id, along) per arc, `along` = the arc runs with the edge.
struct Match {
  std::vector<std::pair<int, int>> anchor;
  friend bool operator==(const Match&, const Match&) = default;
  friend auto operator<=>(const Match&, const Match&) = default;
};

namespace detail {

inline std::vector<int> allowed_rotations(VertexKind k) {
  if (k == VertexKind::Marker) return {0, 2};
  return {0};
}

inline bool vertex_fits(const Vertex& pat, const Vertex& host, int r) {
  if (pat.kind != host.kind) return false;
  for (int q = 0; q < 4; ++q)
    if (pat.port_out(q) != host.port_out((q + r) % 4)) return false;
  return true;
}

/// Face id per (edge, along) slot: along=true means the face left of the edge.
inline std::map<std::pair<int, int>, int> slot_faces(const Diagram& d) {
  std::map<std::pair<int, int>, int> out;
  const auto fs = faces(d);
  for (int f = 0; f < static_cast<int>(fs.size()); ++f)
    for (const End& dart : fs[f]) {
      const EdgeId e = d.edge_at(dart);
      // dart from the head runs against the edge: its right is the edge's left
      const bool along = !d.port_out(dart);
      out[{e, along ? 1 : 0}] = f;
    }
  int next = static_cast<int>(fs.size());
  for (EdgeId c : d.circles) {
    out[{c, 1}] = next++;
    out[{c, 0}] = next++;
  }
  return out;
}

/// Extend a partial vertex map by following internal edges. Returns false on conflict.
inline bool grow_match(const Diagram& d, const PatternSide& side, const std::vector<std::array<End, 2>>& ends,
                       std::vector<std::pair<int, int>>& anchor) {
  const int n = static_cast<int>(side.vertices.size());
  // internal edge -> the two pattern ports
  std::vector<std::vector<std::pair<int, int>>> iedge(side.internal_edges);
  for (int v = 0; v < n; ++v)
    for (int q = 0; q < 4; ++q)
      if (side.refs[v][q] >= 0) iedge[side.refs[v][q]].push_back({v, q});
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& ports : iedge) {
      const auto [v1, q1] = ports[0];
      const auto [v2, q2] = ports[1];
      const bool m1 = anchor[v1].first >= 0, m2 = anchor[v2].first >= 0;
      if (!m1 && !m2) continue;
      const int a = m1 ? v1 : v2, qa = m1 ? q1 : q2;
      const int b = m1 ? v2 : v1, qb = m1 ? q2 : q1;
      const End here{anchor[a].first, (qa + anchor[a].second) % 4};
      const End there = d.opposite(here, ends);
      if (anchor[b].first >= 0) {
        if (there.vertex != anchor[b].first || there.port != (qb + anchor[b].second) % 4) return false;
        continue;
      }
      for (const auto& [hv, hr] : anchor)
        if (hv == there.vertex) return false;
      const int r = ((there.port - qb) % 4 + 4) % 4;
      const auto rots = allowed_rotations(side.vertices[b].kind);
      if (std::find(rots.begin(), rots.end(), r) == rots.end()) return false;
      if (!vertex_fits(side.vertices[b], d.vertices[there.vertex], r)) return false;
      anchor[b] = {there.vertex, r};
      progress = true;
    }
  }
  for (const auto& [hv, hr] : anchor)
    if (hv < 0) return false;  // pattern not connected
  // boundary ports must not lead into an internal pattern port
  std::map<End, int> image;  // host port -> pattern ref
  for (int v = 0; v < n; ++v)
    for (int q = 0; q < 4; ++q) image[End{anchor[v].first, (q + anchor[v].second) % 4}] = side.refs[v][q];
  for (const auto& [port, ref] : image) {
    if (ref >= 0) continue;
    const End there = d.opposite(port, ends);
    auto it = image.find(there);
    if (it != image.end() && it->second >= 0) return false;
  }
  return true;
}

}  // namespace detail

/// All occurrences of a pattern side in `d`.
inline std::vector<Match> find_matches(const Diagram& d, const PatternSide& side, int boundary,
                                       const std::vector<bool>& into) {
  std::vector<Match> out;
  if (side.arcs_only()) {
    const auto faces_of = detail::slot_faces(d);
    const auto ends = d.edge_ends();
    std::set<EdgeId> circle_set(d.circles.begin(), d.circles.end());
    std::vector<std::pair<int, int>> slots;
    for (EdgeId e = 1; e <= d.edge_count(); ++e)
      for (int along : {1, 0}) slots.push_back({e, along});
    // an arc "entry->exit" equal to (2i, 2i+1) runs along the geometric direction
    auto slot_ok = [&](std::size_t arc, const std::pair<int, int>& slot) {
      const auto [entry, exit] = side.arcs[arc];
      const bool geometric_forward = entry == static_cast<int>(2 * arc);
      (void)exit;
      // the edge runs b(2i)->b(2i+1) iff along; the arc direction must agree
      return geometric_forward == (slot.second == 1);
    };
    if (side.arcs.size() == 1) {
      for (const auto& s : slots)
        if (slot_ok(0, s)) out.push_back(Match{{s}});
    } else if (side.arcs.size() == 2) {
      for (const auto& s0 : slots)
        for (const auto& s1 : slots) {
          if (s0.first == s1.first) continue;
          if (circle_set.count(s0.first) || circle_set.count(s1.first)) continue;
          if (!slot_ok(0, s0) || !slot_ok(1, s1)) continue;
          if (faces_of.at(s0) != faces_of.at(s1)) continue;
          out.push_back(Match{{s0, s1}});
        }
    }
    (void)ends;
    (void)boundary;
    (void)into;
    return out;
  }
  const auto ends = d.edge_ends();
  const int n = static_cast<int>(side.vertices.size());
  for (int hv = 0; hv < static_cast<int>(d.vertices.size()); ++hv)
    for (int r : detail::allowed_rotations(side.vertices[0].kind)) {
      if (!detail::vertex_fits(side.vertices[0], d.vertices[hv], r)) continue;
      std::vector<std::pair<int, int>> anchor(n, {-1, 0});
      anchor[0] = {hv, r};
      if (detail::grow_match(d, side, ends, anchor)) out.push_back(Match{anchor});
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Check that `m` is still a valid occurrence of `side` in `d`.
inline bool match_valid(const Diagram& d, const PatternSide& side, int boundary, const std::vector<bool>& into,
                        const Match& m) {
  (void)boundary;
  (void)into;
  if (side.arcs_only()) {
    if (m.anchor.size() != side.arcs.size()) return false;
    for (std::size_t i = 0; i < m.anchor.size(); ++i) {
      const auto [e, along] = m.anchor[i];
      if (e < 1 || e > d.edge_count() || (along != 0 && along != 1)) return false;
      const bool geometric_forward = side.arcs[i].first == static_cast<int>(2 * i);
      if (geometric_forward != (along == 1)) return false;
    }
    if (m.anchor.size() == 2) {
      if (m.anchor[0].first == m.anchor[1].first) return false;
      for (EdgeId c : d.circles)
        if (c == m.anchor[0].first || c == m.anchor[1].first) return false;
      const auto faces_of = detail::slot_faces(d);
      if (faces_of.at(m.anchor[0]) != faces_of.at(m.anchor[1])) return false;
    }
    return true;
  }
  if (m.anchor.size() != side.vertices.size()) return false;
  const auto [v0, r0] = m.anchor[0];
  if (v0 < 0 || v0 >= static_cast<int>(d.vertices.size())) return false;
  const auto rots = detail::allowed_rotations(side.vertices[0].kind);
  if (std::find(rots.begin(), rots.end(), r0) == rots.end()) return false;
  if (!detail::vertex_fits(side.vertices[0], d.vertices[v0], r0)) return false;
  std::vector<std::pair<int, int>> anchor(side.vertices.size(), {-1, 0});
  anchor[0] = {v0, r0};
  if (!detail::grow_match(d, side, d.edge_ends(), anchor)) return false;
  return anchor == m.anchor;
}

namespace detail {

// Endpoint of a link in the rebuild graph.
struct Node {
  int type;  // 0 kept host port, 1 new vertex port, 2 boundary point
  int a, b;
  friend auto operator<=>(const Node&, const Node&) = default;
};

}  // namespace detail

/// Replace the occurrence `m` of `from` by `to`. The result is validated.
inline Diagram rewrite(const Diagram& d, const PatternSide& from, const PatternSide& to, int boundary,
                       const Match& m) {
  using detail::Node;
  const auto ends = d.edge_ends();
  std::set<int> removed;
  std::set<EdgeId> consumed;  // host edges that disappear or get split
  std::vector<std::optional<Node>> outer(boundary);

  if (from.arcs_only()) {
    std::set<EdgeId> circle_set(d.circles.begin(), d.circles.end());
    for (std::size_t i = 0; i < from.arcs.size(); ++i) {
      const auto [e, along] = m.anchor[i];
      consumed.insert(e);
      const int first = static_cast<int>(2 * i), second = static_cast<int>(2 * i + 1);
      if (circle_set.count(e)) {
        outer[first] = Node{2, second, 0};
        outer[second] = Node{2, first, 0};
        continue;
      }
      const End tail = ends[e][0], head = ends[e][1];
      const End at_first = along ? tail : head;
      const End at_second = along ? head : tail;
      outer[first] = Node{0, at_first.vertex, at_first.port};
      outer[second] = Node{0, at_second.vertex, at_second.port};
    }
  } else {
    std::map<End, int> image;
    for (std::size_t v = 0; v < from.vertices.size(); ++v) {
      removed.insert(m.anchor[v].first);
      for (int q = 0; q < 4; ++q)
        image[End{m.anchor[v].first, (q + m.anchor[v].second) % 4}] = from.refs[v][q];
    }
    for (const auto& [port, ref] : image) {
      consumed.insert(d.edge_at(port));
      if (ref >= 0) continue;
      const int b = -ref - 1;
      const End there = d.opposite(port, ends);
      auto it = image.find(there);
      if (it != image.end())
        outer[b] = Node{2, -it->second - 1, 0};
      else
        outer[b] = Node{0, there.vertex, there.port};
    }
  }
  for (int b = 0; b < boundary; ++b)
    if (!outer[b]) throw RewriteError("boundary point b" + std::to_string(b) + " unmatched");

  std::map<Node, std::vector<Node>> adj;
  auto link = [&](const Node& a, const Node& b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  // kept edges
  std::map<int, int> keep_index;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    if (!removed.count(v)) keep_index[v] = static_cast<int>(keep_index.size());
  for (EdgeId e = 1; e <= d.edge_count(); ++e) {
    if (consumed.count(e)) continue;
    if (ends[e][0].vertex < 0) continue;  // circle
    link(Node{0, ends[e][0].vertex, ends[e][0].port}, Node{0, ends[e][1].vertex, ends[e][1].port});
  }
  for (int b = 0; b < boundary; ++b) {
    const Node o = *outer[b];
    if (o.type == 2 && o.a < b) continue;  // pass-through pair linked once
    link(Node{2, b, 0}, o);
  }
  for (std::size_t v = 0; v < to.vertices.size(); ++v)
    for (int q = 0; q < 4; ++q) {
      const int ref = to.refs[v][q];
      if (ref < 0) link(Node{1, static_cast<int>(v), q}, Node{2, -ref - 1, 0});
    }
  {
    std::vector<std::vector<std::pair<int, int>>> iedge(to.internal_edges);
    for (std::size_t v = 0; v < to.vertices.size(); ++v)
      for (int q = 0; q < 4; ++q)
        if (to.refs[v][q] >= 0) iedge[to.refs[v][q]].push_back({static_cast<int>(v), q});
    for (const auto& pr : iedge) link(Node{1, pr[0].first, pr[0].second}, Node{1, pr[1].first, pr[1].second});
  }
  for (const auto& [a, b] : to.arcs) link(Node{2, a, 0}, Node{2, b, 0});

  Diagram out;
  out.name = d.name;
  for (const auto& [v, idx] : keep_index) out.vertices.push_back(d.vertices[v]);
  const int base = static_cast<int>(out.vertices.size());
  for (const auto& v : to.vertices) out.vertices.push_back(v);
  auto port_ref = [&](const Node& n) -> EdgeId& {
    if (n.type == 0) return out.vertices[keep_index.at(n.a)].ports[n.b];
    return out.vertices[base + n.a].ports[n.b];
  };
  std::set<Node> visited;
  EdgeId next = 1;
  for (const auto& [start, nb] : adj) {
    if (start.type == 2 || visited.count(start)) continue;
    // walk from a port to the other port
    Node prev = start, cur = start;
    visited.insert(start);
    const EdgeId id = next++;
    port_ref(start) = id;
    cur = adj.at(start).at(0);
    while (cur.type == 2) {
      visited.insert(cur);
      const auto& nbs = adj.at(cur);
      if (nbs.size() != 2) throw RewriteError("internal: boundary node degree");
      Node nx = nbs[0] == prev ? nbs[1] : nbs[0];
      prev = cur;
      cur = nx;
    }
    visited.insert(cur);
    port_ref(cur) = id;
  }
  // cycles made of boundary points only
  for (const auto& [start, nb] : adj) {
    if (start.type != 2 || visited.count(start)) continue;
    std::vector<Node> stack{start};
    visited.insert(start);
    while (!stack.empty()) {
      const Node cur = stack.back();
      stack.pop_back();
      for (const Node& nx : adj.at(cur))
        if (!visited.count(nx)) {
          visited.insert(nx);
          stack.push_back(nx);
        }
    }
    out.circles.push_back(next++);
  }
  for (EdgeId c : d.circles)
    if (!consumed.count(c)) out.circles.push_back(next++);
  out = normalize(out);
  validate(out);
  return out;
}

}  // namespace smgd

#endif  // SMGD_REWRITE_HPP

#ifndef SMGD_DIAGRAM_HPP
#define SMGD_DIAGRAM_HPP

// Singular marked graph diagrams as oriented 4-valent combinatorial maps.
//
// Port conventions (ports are always listed counterclockwise):
//
//   X+(a,b,c,d)   under strand a -> c, over strand d -> b      a in, b out, c out, d in
//   X-(a,b,c,d)   under strand a -> c, over strand b -> d      a in, b in,  c out, d out
//   S(a,b,c,d)    strand a -> c, strand d -> b (X+ geometry)   a in, b out, c out, d in
//   M(a,b,c,d)    lower smoothing joins (a,b),(c,d); upper joins (b,c),(d,a)
//                 orientation alternates; "type A" has a in, "type B" has a out.
//   O(e)          crossing-free circle carrying edge e.
//
//         c                b  a
//         |                 \/     lower: a-b, c-d
//    d ---+--- b            M       (marker bar separates {a,b} from {c,d})
//         |                 /\     upper: b-c, d-a
//         a                c  d

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smgd {

using EdgeId = int;

enum class VertexKind { CrossingPositive, CrossingNegative, Marker, Singular };

inline const char* kind_token(VertexKind k) {
  switch (k) {
    case VertexKind::CrossingPositive: return "X+";
    case VertexKind::CrossingNegative: return "X-";
    case VertexKind::Marker: return "M";
    case VertexKind::Singular: return "S";
  }
  return "?";
}

inline bool is_crossing(VertexKind k) {
  return k == VertexKind::CrossingPositive || k == VertexKind::CrossingNegative;
}

struct Vertex {
  VertexKind kind = VertexKind::CrossingPositive;
  std::array<EdgeId, 4> ports{};
  // Markers: true when port 0 is outgoing ("type B"). Singular vertices:
  // true when port 1 is outgoing (a positive double point).
  bool first_out = false;

  bool port_out(int p) const {
    switch (kind) {
      case VertexKind::CrossingPositive: return p == 1 || p == 2;
      case VertexKind::Singular: return p == 2 || (p == 1 && first_out) || (p == 3 && !first_out);
      case VertexKind::CrossingNegative: return p == 2 || p == 3;
      case VertexKind::Marker: return ((p % 2) == 0) == first_out;
    }
    return false;
  }

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A port of a vertex: (vertex index, port index 0..3).
struct End {
  int vertex = -1;
  int port = -1;
  friend bool operator==(const End&, const End&) = default;
  friend auto operator<=>(const End&, const End&) = default;
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation refused because its input exceeds a configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DiagramError {
 public:
  ParseError(int line, int column, const std::string& what)
      : DiagramError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Oriented singular marked graph diagram. Edge ids are 1..edge_count();
/// every id occurs either in exactly two ports or once in `circles`.
struct Diagram {
  std::string name;
  std::vector<Vertex> vertices;
  std::vector<EdgeId> circles;

  int edge_count() const {
    return static_cast<int>(vertices.size()) * 2 + static_cast<int>(circles.size());
  }

  std::size_t count(VertexKind k) const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [k](const Vertex& v) { return v.kind == k; }));
  }

  bool port_out(End e) const { return vertices[e.vertex].port_out(e.port); }
  EdgeId edge_at(End e) const { return vertices[e.vertex].ports[e.port]; }

  /// For each edge id: {tail (outgoing port), head (incoming port)}.
  /// Circle edges map to {{-1,-1},{-1,-1}}. Assumes a valid diagram.
  std::vector<std::array<End, 2>> edge_ends() const {
    std::vector<std::array<End, 2>> ends(edge_count() + 1);
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v)
      for (int p = 0; p < 4; ++p) {
        const EdgeId e = vertices[v].ports[p];
        if (e <= 0 || e >= static_cast<int>(ends.size())) continue;
        ends[e][vertices[v].port_out(p) ? 0 : 1] = End{v, p};
      }
    return ends;
  }

  /// The port at the other end of the edge leaving/entering at `e`.
  End opposite(End e, const std::vector<std::array<End, 2>>& ends) const {
    const auto& pair = ends[edge_at(e)];
    return pair[0] == e ? pair[1] : pair[0];
  }

  bool is_classical() const {
    return std::all_of(vertices.begin(), vertices.end(),
                       [](const Vertex& v) { return is_crossing(v.kind); });
  }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.vertices == b.vertices && a.circles == b.circles;
  }
};

/// Classical link diagrams share the representation; only crossings and circles.
using ClassicalLinkDiagram = Diagram;
using SingularMarkedDiagram = Diagram;

namespace detail {

/// Occurrence table: id -> list of ends. Ids out of range are reported.
inline std::map<EdgeId, std::vector<End>> occurrences(const Diagram& d) {
  std::map<EdgeId, std::vector<End>> occ;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    for (int p = 0; p < 4; ++p) occ[d.vertices[v].ports[p]].push_back(End{v, p});
  return occ;
}

inline std::string where(const Diagram& d, int v) {
  const auto& x = d.vertices[v];
  std::ostringstream os;
  os << "vertex " << (v + 1) << " " << kind_token(x.kind) << "(" << x.ports[0] << "," << x.ports[1]
     << "," << x.ports[2] << "," << x.ports[3] << ")";
  return os.str();
}

}  // namespace detail

/// Connected components over vertices; returns component index per vertex.
inline std::vector<int> vertex_components(const Diagram& d, int* count = nullptr) {
  const int n = static_cast<int>(d.vertices.size());
  std::vector<int> comp(n, -1);
  std::map<EdgeId, std::vector<int>> by_edge;
  for (int v = 0; v < n; ++v)
    for (EdgeId e : d.vertices[v].ports) by_edge[e].push_back(v);
  int c = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (EdgeId e : d.vertices[v].ports)
        for (int w : by_edge[e])
          if (comp[w] < 0) {
            comp[w] = c;
            stack.push_back(w);
          }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

/// A dart leaves `from` along its edge; the face lies on its right.
/// Faces are traced by arriving at port j and leaving by port j+1 (ccw).
inline std::vector<std::vector<End>> faces(const Diagram& d) {
  const auto occ = detail::occurrences(d);
  auto partner = [&](End e) {
    const auto& o = occ.at(d.edge_at(e));
    return o[0] == e ? o[1] : o[0];
  };
  std::set<End> used;
  std::vector<std::vector<End>> out;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    for (int p = 0; p < 4; ++p) {
      End start{v, p};
      if (used.count(start)) continue;
      std::vector<End> cyc;
      End cur = start;
      while (!used.count(cur)) {
        used.insert(cur);
        cyc.push_back(cur);
        End arr = partner(cur);
        cur = End{arr.vertex, (arr.port + 1) % 4};
      }
      out.push_back(std::move(cyc));
    }
  return out;
}

/// Orient markers and singular vertices from the fixed crossing
/// orientations. Free components take type A at their first marker, or a
/// positive double point at their first singular vertex. Singular vertices
/// are rotated by two ports so that port 0 is incoming. Throws on conflict.
inline void orient_vertices(Diagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  const auto occ = detail::occurrences(d);
  std::vector<std::array<int, 4>> out(n, {-1, -1, -1, -1});
  std::vector<End> queue;
  auto set = [&](int v, int p, bool o) {
    if (out[v][p] < 0) {
      out[v][p] = o;
      queue.push_back(End{v, p});
    } else if ((out[v][p] == 1) != o) {
      throw DiagramError("orientation inconsistency at edge " + std::to_string(d.vertices[v].ports[p]) + " (" +
                         detail::where(d, v) + ")");
    }
  };
  auto propagate = [&]() {
    while (!queue.empty()) {
      const End x = queue.back();
      queue.pop_back();
      const bool o = out[x.vertex][x.port] == 1;
      const auto& oc = occ.at(d.vertices[x.vertex].ports[x.port]);
      const End other = oc[0] == x ? oc[1] : oc[0];
      set(other.vertex, other.port, !o);
      switch (d.vertices[x.vertex].kind) {
        case VertexKind::Marker:
          for (int q = 0; q < 4; ++q) set(x.vertex, q, ((q - x.port) % 2 == 0) == o);
          break;
        case VertexKind::Singular: set(x.vertex, (x.port + 2) % 4, !o); break;
        default: break;
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (is_crossing(d.vertices[v].kind))
      for (int p = 0; p < 4; ++p) set(v, p, d.vertices[v].port_out(p));
  propagate();
  for (int v = 0; v < n; ++v) {
    if (d.vertices[v].kind == VertexKind::Marker && out[v][0] < 0) set(v, 0, d.vertices[v].port_out(0));
    if (d.vertices[v].kind == VertexKind::Singular) {
      if (out[v][0] < 0) set(v, 0, false);
      propagate();
      if (out[v][1] < 0) set(v, 1, out[v][0] == 0);
    }
    propagate();
  }
  for (int v = 0; v < n; ++v) {
    Vertex& x = d.vertices[v];
    if (x.kind == VertexKind::Marker) x.first_out = out[v][0] == 1;
    if (x.kind == VertexKind::Singular) {
      if (out[v][0] == 1) {
        x.ports = {x.ports[2], x.ports[3], x.ports[0], x.ports[1]};
        x.first_out = out[v][3] == 1;
      } else {
        x.first_out = out[v][1] == 1;
      }
    }
  }
}

/// Check all structural invariants; throws DiagramError naming the offender.
inline void validate(const Diagram& d) {
  const int E = d.edge_count();
  const auto occ = detail::occurrences(d);
  std::set<EdgeId> circle_ids;
  for (EdgeId c : d.circles) {
    if (c < 1 || c > E) throw DiagramError("edge id " + std::to_string(c) + " out of range");
    if (!circle_ids.insert(c).second || occ.count(c))
      throw DiagramError("circle edge " + std::to_string(c) + " is also used elsewhere");
  }
  for (const auto& [e, ends] : occ) {
    if (e < 1 || e > E) throw DiagramError("edge id " + std::to_string(e) + " out of range 1.." + std::to_string(E));
    if (ends.size() != 2)
      throw DiagramError("dangling edge " + std::to_string(e) + ": occurs " + std::to_string(ends.size()) +
                         " time(s), first at " + detail::where(d, ends[0].vertex));
    const bool o0 = d.port_out(ends[0]);
    const bool o1 = d.port_out(ends[1]);
    if (o0 == o1)
      throw DiagramError("orientation inconsistency on edge " + std::to_string(e) + ": both ends " +
                         (o0 ? "outgoing" : "incoming") + " (" + detail::where(d, ends[0].vertex) + ")");
  }
  if (static_cast<int>(occ.size() + circle_ids.size()) != E)
    throw DiagramError("edge ids are not contiguous 1.." + std::to_string(E));
  int ncomp = 0;
  const auto comp = vertex_components(d, &ncomp);
  std::vector<int> V(ncomp, 0), F(ncomp, 0);
  for (int c : comp) ++V[c];
  for (const auto& f : faces(d)) ++F[comp[f.front().vertex]];
  for (int c = 0; c < ncomp; ++c) {
    const int chi = V[c] - 2 * V[c] + F[c];
    if (chi != 2) {
      int v0 = static_cast<int>(std::find(comp.begin(), comp.end(), c) - comp.begin());
      throw DiagramError("non-spherical rotation system: component containing " + detail::where(d, v0) +
                         " has V-E+F = " + std::to_string(chi));
    }
  }
}

/// Renumber edges 1..E by first appearance (vertex order, then circles).
inline Diagram normalize(const Diagram& d) {
  Diagram out = d;
  std::map<EdgeId, EdgeId> ren;
  EdgeId next = 1;
  for (auto& v : out.vertices)
    for (auto& e : v.ports) {
      auto [it, fresh] = ren.emplace(e, next);
      if (fresh) ++next;
      e = it->second;
    }
  for (auto& c : out.circles) c = next++;
  return out;
}

/// Parse SMGD text. The result is oriented, validated and normalized.
inline Diagram parse_smgd(std::string_view text) {
  Diagram d;
  int line_no = 0;
  bool seen_item = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError(line_no, static_cast<int>(i) + 1, msg);
    };
    skip_ws();
    if (i >= line.size()) continue;
    if (line.substr(i, 7) == "diagram" && (i + 7 == line.size() || line[i + 7] == ' ' || line[i + 7] == '\t')) {
      if (seen_item || !d.name.empty()) throw fail("header must precede all items");
      i += 7;
      skip_ws();
      std::size_t s = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      if (s == i) throw fail("missing diagram name");
      d.name = std::string(line.substr(s, i - s));
      skip_ws();
      if (i < line.size()) throw fail("unexpected text after diagram name");
      continue;
    }
    std::string kind;
    if (line.substr(i, 2) == "X+" || line.substr(i, 2) == "X-") {
      kind = std::string(line.substr(i, 2));
      i += 2;
    } else if (line[i] == 'M' || line[i] == 'S' || line[i] == 'O') {
      kind = std::string(1, line[i]);
      ++i;
    } else {
      throw fail("expected X+, X-, M, S, O or 'diagram'");
    }
    skip_ws();
    if (i >= line.size() || line[i] != '(') throw fail("expected '('");
    ++i;
    std::vector<long> ids;
    while (true) {
      skip_ws();
      std::size_t s = i;
      while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
      if (s == i) throw fail("expected edge id");
      if (i - s > 9) throw fail("edge id too large");
      ids.push_back(std::stol(std::string(line.substr(s, i - s))));
      if (ids.back() <= 0) throw fail("edge ids must be positive");
      skip_ws();
      if (i < line.size() && line[i] == ',') {
        ++i;
        continue;
      }
      if (i < line.size() && line[i] == ')') {
        ++i;
        break;
      }
      throw fail("expected ',' or ')'");
    }
    skip_ws();
    if (i < line.size()) throw fail("unexpected text after item");
    const std::size_t want = kind == "O" ? 1 : 4;
    if (ids.size() != want)
      throw ParseError(line_no, 1,
                       kind + " takes " + std::to_string(want) + " ports, got " + std::to_string(ids.size()));
    seen_item = true;
    if (kind == "O") {
      d.circles.push_back(static_cast<EdgeId>(ids[0]));
      continue;
    }
    Vertex v;
    v.kind = kind == "X+"  ? VertexKind::CrossingPositive
             : kind == "X-" ? VertexKind::CrossingNegative
             : kind == "M"  ? VertexKind::Marker
                            : VertexKind::Singular;
    for (int p = 0; p < 4; ++p) v.ports[p] = static_cast<EdgeId>(ids[p]);
    d.vertices.push_back(v);
  }
  // occurrence-level checks before renumbering so messages use input ids
  {
    const auto occ = detail::occurrences(d);
    std::set<EdgeId> seen_circles;
    for (EdgeId c : d.circles) {
      if (occ.count(c)) throw DiagramError("circle edge " + std::to_string(c) + " is also used by a vertex");
      if (!seen_circles.insert(c).second) throw DiagramError("circle edge " + std::to_string(c) + " repeated");
    }
    for (const auto& [e, ends] : occ)
      if (ends.size() != 2)
        throw DiagramError("dangling edge " + std::to_string(e) + ": occurs " + std::to_string(ends.size()) +
                           " time(s), first at " + detail::where(d, ends[0].vertex));
  }
  Diagram n = normalize(d);
  orient_vertices(n);
  n = normalize(n);
  validate(n);
  return n;
}

inline std::string serialize_smgd(const Diagram& d) {
  std::ostringstream os;
  if (!d.name.empty()) os << "diagram " << d.name << "\n";
  for (const auto& v : d.vertices)
    os << kind_token(v.kind) << "(" << v.ports[0] << "," << v.ports[1] << "," << v.ports[2] << ","
       << v.ports[3] << ")\n";
  for (EdgeId c : d.circles) os << "O(" << c << ")\n";
  return os.str();
}

/// Semi-arcs: every edge, including one per crossing-free circle.
inline std::vector<EdgeId> semi_arcs(const Diagram& d) {
  std::vector<EdgeId> out(d.edge_count());
  for (int i = 0; i < d.edge_count(); ++i) out[i] = i + 1;
  return out;
}

namespace detail {

inline std::string canonical_component(const Diagram& d, const std::vector<int>& members,
                                       const std::vector<std::array<End, 2>>& ends) {
  std::string best;
  auto allowed = [&](int v) -> std::vector<int> {
    if (d.vertices[v].kind == VertexKind::Marker) return {0, 2};
    return {0};
  };
  for (int start : members)
    for (int r0 : allowed(start)) {
      std::map<int, int> order;  // vertex -> position
      std::map<int, int> rot;
      std::vector<int> seq{start};
      order[start] = 0;
      rot[start] = r0;
      std::map<EdgeId, int> label;
      std::string s;
      for (std::size_t k = 0; k < seq.size(); ++k) {
        const int v = seq[k];
        const Vertex& x = d.vertices[v];
        s += kind_token(x.kind);
        if (x.kind == VertexKind::Marker) s += x.first_out != (rot[v] % 2 == 1) ? "b" : "a";
        if (x.kind == VertexKind::Singular) s += x.first_out ? "+" : "-";
        s += "(";
        for (int q = 0; q < 4; ++q) {
          const int p = (q + rot[v]) % 4;
          const End here{v, p};
          const EdgeId e = x.ports[p];
          const End there = ends[e][0] == here ? ends[e][1] : ends[e][0];
          if (!order.count(there.vertex)) {
            order[there.vertex] = static_cast<int>(seq.size());
            seq.push_back(there.vertex);
            const auto al = allowed(there.vertex);
            int r = 0;
            if (al.size() > 1) r = ((there.port % 4) < 2) ? 0 : 2;
            rot[there.vertex] = r;
          }
          auto [it, fresh] = label.emplace(e, static_cast<int>(label.size()) + 1);
          s += std::to_string(it->second);
          s += q < 3 ? "," : ")";
        }
      }
      if (best.empty() || s < best) best = s;
    }
  return best;
}

}  // namespace detail

/// Labeling-independent form: equal iff the diagrams are isomorphic as
/// oriented decorated combinatorial maps (components compared as a multiset).
inline std::string canonical_form(const Diagram& d) {
  int ncomp = 0;
  const auto comp = vertex_components(d, &ncomp);
  const auto ends = d.edge_ends();
  std::vector<std::vector<int>> members(ncomp);
  for (int v = 0; v < static_cast<int>(comp.size()); ++v) members[comp[v]].push_back(v);
  std::vector<std::string> parts;
  for (const auto& m : members) parts.push_back(detail::canonical_component(d, m, ends));
  for (std::size_t i = 0; i < d.circles.size(); ++i) parts.push_back("O");
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

/// Disjoint union, edges of `b` shifted after those of `a`.
inline Diagram disjoint_union(const Diagram& a, const Diagram& b) {
  Diagram out = a;
  const int shift = a.edge_count();
  for (auto v : b.vertices) {
    for (auto& e : v.ports) e += shift;
    out.vertices.push_back(v);
  }
  for (EdgeId c : b.circles) out.circles.push_back(c + shift);
  return normalize(out);
}

}  // namespace smgd

#endif  // SMGD_DIAGRAM_HPP

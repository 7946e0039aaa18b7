#ifndef SMGD_RESOLUTION_HPP
#define SMGD_RESOLUTION_HPP

// Resolutions L- / L+ of singular marked graph diagrams, admissibility and
// the orientation-determined smoothing L*.

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "smgd/classical.hpp"
#include "smgd/diagram.hpp"

namespace smgd {

enum class Side { Lower, Upper };

inline const char* side_name(Side s) { return s == Side::Lower ? "lower" : "upper"; }

/// Smooth every marker (lower iff `lower(v)`), replace singular vertices by
/// the crossing of the given side, keep crossings.
inline Diagram smooth(const Diagram& d, const std::function<bool(int)>& lower, Side singular_side) {
  const int E = d.edge_count();
  std::vector<int> parent(E + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  Diagram out;
  out.name = d.name;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    const Vertex& x = d.vertices[v];
    switch (x.kind) {
      case VertexKind::Marker:
        if (lower(v)) {
          unite(x.ports[0], x.ports[1]);
          unite(x.ports[2], x.ports[3]);
        } else {
          unite(x.ports[1], x.ports[2]);
          unite(x.ports[3], x.ports[0]);
        }
        break;
      case VertexKind::Singular: {
        // strand (0,2) passes under in the upper push-off, over in the lower one
        Vertex y = x;
        const bool positive = (singular_side == Side::Upper) == x.first_out;
        y.kind = positive ? VertexKind::CrossingPositive : VertexKind::CrossingNegative;
        if (singular_side == Side::Lower) {
          if (x.first_out)
            y.ports = {x.ports[3], x.ports[0], x.ports[1], x.ports[2]};
          else
            y.ports = {x.ports[1], x.ports[2], x.ports[3], x.ports[0]};
        }
        out.vertices.push_back(y);
        break;
      }
      default: out.vertices.push_back(x);
    }
  }
  std::set<int> on_vertex;
  for (auto& v : out.vertices)
    for (auto& e : v.ports) {
      e = find(e);
      on_vertex.insert(e);
    }
  std::set<int> roots;
  for (EdgeId e = 1; e <= E; ++e) roots.insert(find(e));
  for (int r : roots)
    if (!on_vertex.count(r)) out.circles.push_back(r);
  out = normalize(out);
  validate(out);
  return out;
}

/// L- (Side::Lower) or L+ (Side::Upper). The result keeps the orientation.
inline Diagram resolve(const Diagram& d, Side side) {
  return smooth(d, [side](int) { return side == Side::Lower; }, side);
}

/// Marker smoothing determined by orientation: type A markers (first port
/// incoming) take the lower smoothing, type B the upper one.
inline Diagram l_star(const Diagram& d) {
  if (d.count(VertexKind::Singular) > 0) throw DiagramError("l_star is defined for diagrams without singular vertices");
  return smooth(d, [&d](int v) { return !d.vertices[v].first_out; }, Side::Upper);
}

struct AdmissibilityCertificate {
  enum class Kind { Admissible, NotAdmissible, Unknown };
  Kind kind = Kind::Unknown;
  UnlinkCertificate lower, upper;

  std::string to_string() const {
    switch (kind) {
      case Kind::Admissible: return "Admissible";
      case Kind::NotAdmissible: return "NotAdmissible";
      case Kind::Unknown: return "Unknown";
    }
    return "?";
  }
};

inline AdmissibilityCertificate is_admissible(const Diagram& d, const SimplifyOptions& opt = {}) {
  AdmissibilityCertificate c;
  c.lower = certify_unlink(resolve(d, Side::Lower), opt);
  c.upper = certify_unlink(resolve(d, Side::Upper), opt);
  using K = UnlinkCertificate::Kind;
  if (c.lower.kind == K::NotUnlink || c.upper.kind == K::NotUnlink)
    c.kind = AdmissibilityCertificate::Kind::NotAdmissible;
  else if (c.lower.kind == K::Unlink && c.upper.kind == K::Unlink)
    c.kind = AdmissibilityCertificate::Kind::Admissible;
  return c;
}

}  // namespace smgd

#endif  // SMGD_RESOLUTION_HPP

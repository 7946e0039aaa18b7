#ifndef SMGD_MOVES_HPP
#define SMGD_MOVES_HPP

// Move catalog loaded from the pattern table, site enumeration, application
// and seeded random walks.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "smgd/diagram.hpp"
#include "smgd/laurent.hpp"
#include "smgd/move_table_data.hpp"
#include "smgd/rewrite.hpp"

namespace smgd {

struct MoveKind {
  std::string tag;
  bool forward = true;
  friend bool operator==(const MoveKind&, const MoveKind&) = default;
  friend auto operator<=>(const MoveKind&, const MoveKind&) = default;
};

inline std::string to_string(const MoveKind& k) { return k.tag + (k.forward ? " forward" : " backward"); }

struct MoveSite {
  MoveKind kind;
  int pattern = -1;  // index into the catalog
  Match match;
  std::vector<EdgeId> boundary;
  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

class StaleSite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Smoothing { Lower, Upper, Star };

/// Connectivity of a pattern side after smoothing its markers: partner of
/// each boundary point, and the number of closed loops.
struct TanglePairing {
  std::vector<int> partner;
  int loops = 0;
  friend bool operator==(const TanglePairing&, const TanglePairing&) = default;
};

inline TanglePairing side_pairing(const PatternSide& side, int boundary, Smoothing how) {
  const int nodes = boundary + 4 * static_cast<int>(side.vertices.size());
  std::vector<std::vector<int>> adj(nodes);
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  auto port = [&](int v, int q) { return boundary + 4 * v + q; };
  std::vector<std::vector<int>> iedge(side.internal_edges);
  for (int v = 0; v < static_cast<int>(side.vertices.size()); ++v) {
    const Vertex& x = side.vertices[v];
    for (int q = 0; q < 4; ++q) {
      const int r = side.refs[v][q];
      if (r < 0)
        link(port(v, q), -r - 1);
      else
        iedge[r].push_back(port(v, q));
    }
    bool lower = true;
    if (x.kind == VertexKind::Marker) {
      lower = how == Smoothing::Lower || (how == Smoothing::Star && !x.first_out);
      if (lower) {
        link(port(v, 0), port(v, 1));
        link(port(v, 2), port(v, 3));
      } else {
        link(port(v, 1), port(v, 2));
        link(port(v, 3), port(v, 0));
      }
    } else {
      link(port(v, 0), port(v, 2));
      link(port(v, 1), port(v, 3));
    }
  }
  for (const auto& e : iedge) link(e[0], e[1]);
  for (const auto& [a, b] : side.arcs) link(a, b);
  TanglePairing out;
  out.partner.assign(boundary, -1);
  std::vector<bool> seen(nodes, false);
  for (int b = 0; b < boundary; ++b) {
    if (seen[b]) continue;
    int prev = -1, cur = b;
    while (true) {
      seen[cur] = true;
      int next = -1;
      for (int n : adj[cur])
        if (n != prev && !seen[n]) {
          next = n;
          break;
        }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    out.partner[b] = cur;
    out.partner[cur] = b;
  }
  for (int n = 0; n < nodes; ++n) {
    if (seen[n]) continue;
    ++out.loops;
    std::vector<int> stack{n};
    seen[n] = true;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int m : adj[c])
        if (!seen[m]) {
          seen[m] = true;
          stack.push_back(m);
        }
    }
  }
  return out;
}

namespace detail {

/// All non-crossing perfect matchings of the points 0..n-1 on a circle.
inline std::vector<std::vector<int>> noncrossing_matchings(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, -1);
  std::function<void()> fill = [&]() {
    int i = 0;
    while (i < n && cur[i] >= 0) ++i;
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int j = i + 1; j < n; j += 2) {
      if (cur[j] >= 0) continue;
      bool ok = true;
      for (int k = i + 1; k < j; ++k)
        if (cur[k] >= 0 && (cur[k] < i || cur[k] > j)) ok = false;
      if (!ok) continue;
      cur[i] = j;
      cur[j] = i;
      fill();
      cur[i] = cur[j] = -1;
    }
  };
  if (n % 2 == 0) fill();
  return out;
}

}  // namespace detail

/// Kauffman bracket of a pattern side closed outside the disk by `closure`,
/// markers smoothed and singular vertices resolved on the given side.
inline Laurent tangle_bracket(const PatternSide& side, int boundary, Smoothing how,
                              const std::vector<int>& closure) {
  if (how == Smoothing::Star) throw std::invalid_argument("tangle_bracket needs the lower or upper side");
  const bool lower = how == Smoothing::Lower;
  const int nv = static_cast<int>(side.vertices.size());
  std::vector<int> cross;
  for (int v = 0; v < nv; ++v)
    if (side.vertices[v].kind != VertexKind::Marker) cross.push_back(v);
  const int nc = static_cast<int>(cross.size());
  const int nodes = boundary + 4 * nv;
  auto port = [&](int v, int q) { return boundary + 4 * v + q; };
  const Laurent loop = Laurent::monomial(-1, 2) + Laurent::monomial(-1, -2);
  Laurent out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nc); ++s) {
    std::vector<int> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    std::vector<std::vector<int>> iedge(side.internal_edges);
    int a_count = 0;
    for (int v = 0; v < nv; ++v) {
      const Vertex& x = side.vertices[v];
      for (int q = 0; q < 4; ++q) {
        const int r = side.refs[v][q];
        if (r < 0)
          unite(port(v, q), -r - 1);
        else
          iedge[r].push_back(port(v, q));
      }
      // pairs (0,1),(2,3) when `first` holds, else (1,2),(3,0)
      bool first;
      if (x.kind == VertexKind::Marker) {
        first = lower;
      } else {
        const int i = static_cast<int>(std::find(cross.begin(), cross.end(), v) - cross.begin());
        const bool a = (s >> i) & 1u;
        a_count += a;
        // a lower-resolved singular vertex is the crossing listed from port 3
        first = (x.kind == VertexKind::Singular && lower) ? !a : a;
      }
      if (first) {
        unite(port(v, 0), port(v, 1));
        unite(port(v, 2), port(v, 3));
      } else {
        unite(port(v, 1), port(v, 2));
        unite(port(v, 3), port(v, 0));
      }
    }
    for (const auto& e : iedge) unite(e[0], e[1]);
    for (const auto& [a, b] : side.arcs) unite(a, b);
    for (int b = 0; b < boundary; ++b) unite(b, closure[b]);
    int loops = 0;
    for (int x = 0; x < nodes; ++x)
      if (find(x) == x) ++loops;
    out += Laurent::monomial(1, a_count - (nc - a_count)) * loop.pow(loops - 1);
  }
  return out;
}

/// a = +-A^(3k) b for some k.
inline bool equal_up_to_framing(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return a == b;
  const int k = a.min_degree() - b.min_degree();
  if (k % 3 != 0) return false;
  const Laurent c = b.shifted(k);
  return a == c || a == -c;
}

/// Both sides give equal closed brackets, up to framing, for every planar
/// closure in both resolutions.
inline bool resolutions_agree(const Pattern& p) {
  for (Smoothing how : {Smoothing::Lower, Smoothing::Upper})
    for (const auto& m : detail::noncrossing_matchings(p.boundary))
      if (!equal_up_to_framing(tangle_bracket(p.lhs, p.boundary, how, m), tangle_bracket(p.rhs, p.boundary, how, m)))
        return false;
  return true;
}

/// The diagram obtained by closing one side of a pattern outside its disk,
/// joining boundary points as in `closure`. Empty when the closure pairs two
/// points of the same direction.
inline std::optional<Diagram> close_side(const Pattern& p, const PatternSide& side, const std::vector<int>& closure) {
  for (int b = 0; b < p.boundary; ++b)
    if (p.into[b] == p.into[closure[b]]) return std::nullopt;
  const int nv = static_cast<int>(side.vertices.size());
  const int nodes = p.boundary + 4 * nv;
  auto port = [&](int v, int q) { return p.boundary + 4 * v + q; };
  std::vector<std::vector<int>> adj(nodes);
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  std::vector<std::vector<int>> iedge(side.internal_edges);
  for (int v = 0; v < nv; ++v)
    for (int q = 0; q < 4; ++q) {
      const int r = side.refs[v][q];
      if (r < 0)
        link(port(v, q), -r - 1);
      else
        iedge[r].push_back(port(v, q));
    }
  for (const auto& e : iedge) link(e[0], e[1]);
  for (const auto& [a, b] : side.arcs) link(a, b);
  for (int b = 0; b < p.boundary; ++b)
    if (b < closure[b]) link(b, closure[b]);
  Diagram d;
  d.vertices = side.vertices;
  std::vector<int> id(nodes, 0);
  int next = 0;
  for (int s = 0; s < nodes; ++s) {
    if (id[s]) continue;
    // walk the path or cycle through s
    std::vector<int> comp{s};
    id[s] = ++next;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int n : adj[comp[i]])
        if (!id[n]) {
          id[n] = next;
          comp.push_back(n);
        }
    bool has_port = false;
    for (int n : comp) has_port = has_port || n >= p.boundary;
    if (!has_port) d.circles.push_back(next);
  }
  for (int v = 0; v < nv; ++v)
    for (int q = 0; q < 4; ++q) d.vertices[v].ports[q] = id[port(v, q)];
  d = normalize(d);
  validate(d);
  return d;
}

namespace detail {

inline TemplateSide parse_template_side(const std::string& text, int line) {
  TemplateSide side;
  std::istringstream is(text);
  std::string item;
  while (is >> item) {
    auto open = item.find('('), close = item.rfind(')');
    if (open == std::string::npos || close != item.size() - 1)
      throw ParseError(line, 1, "bad pattern item '" + item + "'");
    const std::string head = item.substr(0, open);
    std::vector<std::string> labels;
    std::string cur;
    for (std::size_t i = open + 1; i < close; ++i) {
      if (item[i] == ',') {
        labels.push_back(cur);
        cur.clear();
      } else {
        cur += item[i];
      }
    }
    labels.push_back(cur);
    if (head == "A") {
      if (labels.size() != 2) throw ParseError(line, 1, "A takes 2 labels");
      side.arcs.push_back({labels[0], labels[1]});
      continue;
    }
    if (labels.size() != 4) throw ParseError(line, 1, head + " takes 4 labels");
    TemplateVertex v;
    if (head == "X")
      v.kind = TemplateKind::Crossing;
    else if (head == "M")
      v.kind = TemplateKind::Marker;
    else if (head == "S")
      v.kind = TemplateKind::Singular;
    else
      throw ParseError(line, 1, "unknown pattern item '" + head + "'");
    for (int i = 0; i < 4; ++i) v.labels[i] = labels[i];
    side.vertices.push_back(v);
  }
  return side;
}

inline bool all_crossings_have_sign(const PatternSide& s, VertexKind k) {
  for (const auto& v : s.vertices)
    if (is_crossing(v.kind) && v.kind != k) return false;
  return true;
}

}  // namespace detail

/// Parsed move table: every oriented variant with its tag.
struct MoveCatalog {
  int version = 0;
  std::vector<Pattern> patterns;

  std::vector<std::string> tags() const {
    std::vector<std::string> out;
    for (const auto& p : patterns)
      if (std::find(out.begin(), out.end(), p.tag) == out.end()) out.push_back(p.tag);
    return out;
  }

  std::vector<int> indices(const std::string& tag) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(patterns.size()); ++i)
      if (patterns[i].tag == tag) out.push_back(i);
    return out;
  }

  bool has(const std::string& tag) const { return !indices(tag).empty(); }
};

inline MoveCatalog parse_move_table(const std::string& text) {
  MoveCatalog cat;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  struct Block {
    std::string tag, filter, letters;
    std::string lhs, rhs;
    int line = 0;
  };
  std::vector<Block> blocks;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "version") {
      if (!(ls >> cat.version)) throw ParseError(line_no, 1, "bad version");
    } else if (word == "move") {
      Block b;
      b.line = line_no;
      if (!(ls >> b.tag)) throw ParseError(line_no, 1, "missing move tag");
      std::string opt;
      while (ls >> opt) {
        if (opt.rfind("filter=", 0) == 0)
          b.filter = opt.substr(7);
        else if (opt.rfind("letters=", 0) == 0)
          b.letters = opt.substr(8);
        else
          throw ParseError(line_no, 1, "unknown option '" + opt + "'");
      }
      blocks.push_back(b);
    } else if (word == "lhs" || word == "rhs") {
      if (blocks.empty()) throw ParseError(line_no, 1, word + " outside a move block");
      std::string rest;
      std::getline(ls, rest);
      (word == "lhs" ? blocks.back().lhs : blocks.back().rhs) = rest;
    } else {
      throw ParseError(line_no, 1, "unexpected '" + word + "'");
    }
  }
  if (cat.version != 1) throw DiagramError("unsupported move table version " + std::to_string(cat.version));
  std::map<std::string, int> letter_counter;
  for (const auto& b : blocks) {
    const auto lhs = detail::parse_template_side(b.lhs, b.line);
    const auto rhs = detail::parse_template_side(b.rhs, b.line);
    auto variants = expand_template(b.tag, lhs, rhs);
    std::vector<Pattern> kept;
    for (auto& p : variants) {
      bool keep = true;
      if (b.filter == "sign+")
        keep = detail::all_crossings_have_sign(p.lhs, VertexKind::CrossingPositive) &&
               detail::all_crossings_have_sign(p.rhs, VertexKind::CrossingPositive);
      else if (b.filter == "sign-")
        keep = detail::all_crossings_have_sign(p.lhs, VertexKind::CrossingNegative) &&
               detail::all_crossings_have_sign(p.rhs, VertexKind::CrossingNegative);
      else if (b.filter == "resolutions")
        keep = resolutions_agree(p);
      else if (b.filter == "lstar")
        keep = side_pairing(p.lhs, p.boundary, Smoothing::Star) == side_pairing(p.rhs, p.boundary, Smoothing::Star);
      else if (!b.filter.empty())
        throw ParseError(b.line, 1, "unknown filter '" + b.filter + "'");
      if (keep) kept.push_back(std::move(p));
    }
    if (!b.letters.empty() && kept.size() != b.letters.size())
      throw ParseError(b.line, 1,
                       b.tag + ": " + std::to_string(kept.size()) + " variants for letters '" + b.letters + "'");
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (!b.letters.empty()) kept[i].tag = b.tag + b.letters[i];
      kept[i].name = kept[i].tag + "#" + std::to_string(letter_counter[kept[i].tag]++);
      cat.patterns.push_back(std::move(kept[i]));
    }
  }
  return cat;
}

inline MoveCatalog load_move_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DiagramError("cannot open move table " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_move_table(ss.str());
}

/// The shipped table.
inline const MoveCatalog& default_catalog() {
  static const MoveCatalog cat = parse_move_table(kMoveTableText);
  return cat;
}

/// Classical Reidemeister moves.
inline std::vector<std::string> classical_tags() { return {"G1", "G1'", "G2", "G3"}; }

/// The ten-type generating set for marked graph diagrams (with both kink signs).
inline std::vector<std::string> generating_tags() {
  return {"G1", "G1'", "G2", "G3", "G4", "G4'", "G5", "G6", "G6'", "G7", "G8"};
}

inline std::vector<std::string> all_tags(const MoveCatalog& cat = default_catalog()) { return cat.tags(); }

inline std::vector<MoveSite> find_sites(const Diagram& d, const MoveKind& kind,
                                        const MoveCatalog& cat = default_catalog()) {
  std::vector<MoveSite> out;
  const auto ends = d.edge_ends();
  for (int idx : cat.indices(kind.tag)) {
    const Pattern& p = cat.patterns[idx];
    const PatternSide& side = kind.forward ? p.lhs : p.rhs;
    for (auto& m : find_matches(d, side, p.boundary, p.into)) {
      MoveSite s;
      s.kind = kind;
      s.pattern = idx;
      s.boundary.assign(p.boundary, 0);
      if (side.arcs_only()) {
        for (std::size_t i = 0; i < side.arcs.size(); ++i) {
          s.boundary[2 * i] = m.anchor[i].first;
          s.boundary[2 * i + 1] = m.anchor[i].first;
        }
      } else {
        for (std::size_t v = 0; v < side.vertices.size(); ++v)
          for (int q = 0; q < 4; ++q)
            if (side.refs[v][q] < 0)
              s.boundary[-side.refs[v][q] - 1] = d.vertices[m.anchor[v].first].ports[(q + m.anchor[v].second) % 4];
      }
      s.match = std::move(m);
      out.push_back(std::move(s));
    }
  }
  // sites on the same host elements with the same outcome count once
  std::map<std::vector<int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Pattern& p = cat.patterns[out[i].pattern];
    if ((kind.forward ? p.lhs : p.rhs).arcs_only()) continue;
    std::vector<int> key;
    for (const auto& [a, b] : out[i].match.anchor) key.push_back(a);
    std::sort(key.begin(), key.end());
    groups[key].push_back(i);
  }
  std::vector<bool> drop(out.size(), false);
  for (const auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    std::set<std::string> seen;
    for (std::size_t i : members) {
      const Pattern& p = cat.patterns[out[i].pattern];
      const PatternSide& from = kind.forward ? p.lhs : p.rhs;
      const PatternSide& to = kind.forward ? p.rhs : p.lhs;
      if (!seen.insert(canonical_form(rewrite(d, from, to, p.boundary, out[i].match))).second) drop[i] = true;
    }
  }
  std::vector<MoveSite> kept;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(out[i]));
  return kept;
}

inline Diagram apply(const Diagram& d, const MoveSite& site, const MoveCatalog& cat = default_catalog()) {
  if (site.pattern < 0 || site.pattern >= static_cast<int>(cat.patterns.size()) ||
      cat.patterns[site.pattern].tag != site.kind.tag)
    throw StaleSite("site refers to an unknown pattern");
  const Pattern& p = cat.patterns[site.pattern];
  const PatternSide& from = site.kind.forward ? p.lhs : p.rhs;
  const PatternSide& to = site.kind.forward ? p.rhs : p.lhs;
  if (!match_valid(d, from, p.boundary, p.into, site.match)) throw StaleSite("stale site for " + to_string(site.kind));
  return rewrite(d, from, to, p.boundary, site.match);
}

/// Applies `steps` moves: each step picks a move kind uniformly among those
/// with a site, then a site uniformly. Steps without any site are skipped.
inline Diagram random_walk(const Diagram& d, const std::vector<std::string>& allowed, int steps, std::uint64_t seed,
                           const std::function<void(int, const MoveSite&, const Diagram&)>& on_step = {},
                           const MoveCatalog& cat = default_catalog()) {
  std::mt19937_64 rng(seed);
  Diagram cur = d;
  for (int step = 0; step < steps; ++step) {
    std::vector<std::vector<MoveSite>> options;
    for (const auto& tag : allowed)
      for (bool fwd : {true, false}) {
        auto sites = find_sites(cur, MoveKind{tag, fwd}, cat);
        if (!sites.empty()) options.push_back(std::move(sites));
      }
    if (options.empty()) continue;
    const auto& pick = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    const auto& site = pick[std::uniform_int_distribution<std::size_t>(0, pick.size() - 1)(rng)];
    cur = apply(cur, site, cat);
    if (on_step) on_step(step, site, cur);
  }
  return cur;
}

}  // namespace smgd

#endif  // SMGD_MOVES_HPP

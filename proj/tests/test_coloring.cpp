#include <gtest/gtest.h>

#include <set>

#include "smgd/coloring.hpp"
#include "smgd/moves.hpp"

using namespace smgd;

namespace {

const Table kXtUtr{{3, 1, 3}, {2, 2, 2}, {1, 3, 1}};
const Table kXtOtr{{3, 3, 3}, {2, 2, 2}, {1, 1, 1}};

FiniteBiquandle xt() { return make_biquandle(kXtUtr, kXtOtr); }

/// Biquandles of order <= 4 used for invariance checks.
std::vector<FiniteBiquandle> small_biquandles() {
  std::vector<FiniteBiquandle> out{trivial_biquandle(2), xt(), alexander_biquandle(3, 2, 1),
                                   alexander_biquandle(3, 1, 2), alexander_biquandle(4, 3, 1),
                                   alexander_biquandle(4, 1, 3)};
  // every 2-element biquandle
  for (int mu = 0; mu < 16; ++mu)
    for (int mo = 0; mo < 16; ++mo) {
      Table u(2, std::vector<int>(2)), o(2, std::vector<int>(2));
      for (int k = 0; k < 4; ++k) {
        u[k / 2][k % 2] = ((mu >> k) & 1) + 1;
        o[k / 2][k % 2] = ((mo >> k) & 1) + 1;
      }
      if (auto v = check_axioms(u, o); v.valid() && !(*v.biquandle == trivial_biquandle(2)))
        out.push_back(*v.biquandle);
    }
  return out;
}

/// Every assignment checked vertex by vertex.
std::uint64_t brute_count(const Diagram& d, const FiniteBiquandle& x) {
  const int E = d.edge_count();
  Coloring c;
  c.color.assign(E + 1, 1);
  std::uint64_t n = 0;
  while (true) {
    n += is_coloring(d, c, x);
    int e = 1;
    while (e <= E && c.color[e] == x.order) c.color[e++] = 1;
    if (e > E) break;
    ++c.color[e];
  }
  return n;
}

std::vector<Diagram> samples() {
  std::vector<Diagram> out{parse_smgd("O(1)\n"), parse_smgd("X+(1,1,2,2)\n"), parse_smgd("X+(4,2,3,1)\nX+(2,4,1,3)\n"),
                           parse_smgd("X+(1,5,2,4)\nX+(3,1,4,6)\nX+(5,3,6,2)\n"), parse_smgd("M(1,1,2,2)\n"),
                           parse_smgd("M(1,2,2,1)\n"), parse_smgd("S(1,1,2,2)\n")};
  const auto tags = all_tags();
  // one closed left side per tag, so that every move has a site
  std::set<std::string> seen;
  for (const auto& p : default_catalog().patterns) {
    if (seen.count(p.tag)) continue;
    for (const auto& m : detail::noncrossing_matchings(p.boundary))
      if (auto d = close_side(p, p.lhs, m)) {
        out.push_back(*d);
        seen.insert(p.tag);
        break;
      }
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    out.push_back(random_walk(parse_smgd("M(1,1,2,2)\n"), tags, 5, seed));
    out.push_back(random_walk(parse_smgd("S(1,1,2,2)\n"), tags, 5, seed + 100));
  }
  return out;
}

}  // namespace

TEST(Local, MarkerRule) {
  const Vertex m{VertexKind::Marker, {1, 2, 3, 4}, false};
  for (int a = 1; a <= 3; ++a) EXPECT_TRUE(local_rules_hold(m, {a, a, a, a}, xt()));
  EXPECT_FALSE(local_rules_hold(m, {1, 1, 2, 1}, xt()));
}

TEST(Local, SingularRuleInXt) {
  const Vertex s{VertexKind::Singular, {1, 2, 3, 4}, true};
  // x on port 0, y on port 1; 1 utr 2 = 1 but 1 otr 2 = 3
  EXPECT_TRUE(local_rules_hold(s, {2, 2, 2, 2}, xt()));
  for (int o1 = 1; o1 <= 3; ++o1)
    for (int o2 = 1; o2 <= 3; ++o2) EXPECT_FALSE(local_rules_hold(s, {1, 2, o1, o2}, xt()));
}

TEST(Local, CrossingRules) {
  const auto x = xt();
  const Vertex p{VertexKind::CrossingPositive, {1, 2, 3, 4}, false};
  // under-in 1, over-out 2: under-out 1 utr 2 = 1, over-in 2 otr 1 = 2
  EXPECT_TRUE(local_rules_hold(p, {1, 2, 1, 2}, x));
  EXPECT_FALSE(local_rules_hold(p, {1, 2, 3, 2}, x));
  const Vertex n{VertexKind::CrossingNegative, {1, 2, 3, 4}, false};
  // under-out 3, over-in 1: under-in 3 utr 1 = 1, over-out 1 otr 3 = 3
  EXPECT_TRUE(local_rules_hold(n, {1, 1, 3, 3}, x));
  EXPECT_FALSE(local_rules_hold(n, {1, 1, 3, 1}, x));
}

TEST(Count, Basics) {
  EXPECT_EQ(count_colorings(parse_smgd("O(1)\n"), xt()), 3u);
  EXPECT_EQ(count_colorings(Diagram{}, xt()), 1u);
  EXPECT_EQ(enumerate_colorings(Diagram{}, xt()).size(), 1u);
  for (const auto& d : samples()) EXPECT_EQ(count_colorings(d, trivial_biquandle(1)), 1u);
}

TEST(Count, MatchesBruteForce) {
  for (const auto& d : samples()) {
    if (d.edge_count() > 12) continue;
    for (const auto& x : {xt(), alexander_biquandle(3, 2, 1), trivial_biquandle(2)})
      EXPECT_EQ(count_colorings(d, x), brute_count(d, x)) << serialize_smgd(d);
  }
}

TEST(Count, EnumerationConsistent) {
  for (const auto& d : samples())
    for (const auto& x : {xt(), alexander_biquandle(4, 3, 1)}) {
      const auto cs = enumerate_colorings(d, x);
      EXPECT_EQ(cs.size(), count_colorings(d, x));
      for (const auto& c : cs) EXPECT_TRUE(is_coloring(d, c, x));
    }
}

TEST(Count, CapEnforced) {
  ColoringOptions o;
  o.max_colorings = 2;
  EXPECT_THROW(enumerate_colorings(parse_smgd("O(1)\n"), xt(), o), CapExceeded);
}

TEST(Count, Multiplicative) {
  const auto s = samples();
  for (std::size_t i = 0; i + 1 < s.size(); i += 3)
    for (const auto& x : {xt(), alexander_biquandle(3, 2, 1)})
      EXPECT_EQ(count_colorings(disjoint_union(s[i], s[i + 1]), x), count_colorings(s[i], x) * count_colorings(s[i + 1], x));
}

TEST(Count, MonochromaticCensus) {
  for (const auto& d : samples()) {
    if (d.count(VertexKind::CrossingPositive) + d.count(VertexKind::CrossingNegative) + d.count(VertexKind::Singular) == 0)
      continue;
    for (const auto& x : small_biquandles()) {
      std::size_t mono = 0;
      for (const auto& c : enumerate_colorings(d, x))
        mono += std::all_of(c.color.begin() + 1, c.color.end(), [&](int v) { return v == c.color[1]; });
      EXPECT_EQ(mono, idempotents(x).size());
    }
  }
}

TEST(Invariance, KinksInEveryBiquandle) {
  for (const auto& x : small_biquandles()) {
    EXPECT_EQ(count_colorings(parse_smgd("X+(1,1,2,2)\n"), x), static_cast<std::uint64_t>(x.order));
    EXPECT_EQ(count_colorings(parse_smgd("X-(1,2,2,1)\n"), x), static_cast<std::uint64_t>(x.order));
  }
  // (s-1)(t+1) != 0 mod 5
  EXPECT_EQ(count_colorings(parse_smgd("X+(1,1,2,2)\n"), alexander_biquandle(5, 2, 3)), 5u);
}

TEST(Invariance, BothSidesOfEveryPatternUnderEveryClosure) {
  const auto xs = small_biquandles();
  for (const auto& p : default_catalog().patterns)
    for (const auto& m : detail::noncrossing_matchings(p.boundary)) {
      const auto l = close_side(p, p.lhs, m), r = close_side(p, p.rhs, m);
      if (!l) continue;
      for (const auto& x : xs) EXPECT_EQ(count_colorings(*l, x), count_colorings(*r, x)) << p.name;
    }
}

TEST(Invariance, EveryMoveEverySite) {
  const auto xs = small_biquandles();
  int checked = 0;
  std::set<std::string> covered;
  for (const auto& d : samples()) {
    std::vector<std::uint64_t> before;
    for (const auto& x : xs) before.push_back(count_colorings(d, x));
    for (const auto& tag : all_tags())
      for (bool fwd : {true, false}) {
        const auto sites = find_sites(d, {tag, fwd});
        for (std::size_t k = 0; k < sites.size() && k < 4; ++k) {
          const Diagram e = apply(d, sites[k]);
          for (std::size_t i = 0; i < xs.size(); ++i)
            EXPECT_EQ(count_colorings(e, xs[i]), before[i]) << tag << (fwd ? " fwd " : " bwd ") << serialize_smgd(d);
          ++checked;
          covered.insert(tag);
        }
      }
  }
  EXPECT_GT(checked, 100);
  for (const auto& tag : all_tags()) EXPECT_TRUE(covered.count(tag)) << tag;
}

TEST(Presentation, MarkerOnly) {
  const auto p = fundamental_presentation(parse_smgd("M(1,2,2,1)\n"));
  EXPECT_EQ(p.generators.size(), 2u);
  const auto q = p.eliminated();
  EXPECT_EQ(q.generators.size(), 1u);
  EXPECT_TRUE(q.relations.empty());
}

TEST(Presentation, QuandleModeDropsOverline) {
  const auto p = fundamental_presentation(parse_smgd("X+(1,5,2,4)\nX+(3,1,4,6)\nX+(5,3,6,2)\n"), PresentationMode::Quandle);
  for (const auto& r : p.relations) EXPECT_NE(r.op, Op::Overline);
  const auto q = p.eliminated();
  EXPECT_EQ(q.generators.size(), 3u);
  EXPECT_EQ(q.relations.size(), 3u);
  EXPECT_THROW(fundamental_presentation(parse_smgd("S(1,1,2,2)\n"), PresentationMode::Quandle), DiagramError);
}

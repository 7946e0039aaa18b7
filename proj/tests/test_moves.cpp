#include <gtest/gtest.h>

#include <set>

#include "smgd/moves.hpp"

using namespace smgd;

namespace {

const char* kTrefoil = "X+(1,5,2,4)\nX+(3,1,4,6)\nX+(5,3,6,2)\n";
const char* kHopf = "X+(4,2,3,1)\nX+(2,4,1,3)\n";
const char* kKink = "X+(1,1,2,2)\n";

std::vector<Diagram> samples() {
  std::vector<Diagram> out{parse_smgd("O(1)\n"), parse_smgd(kKink), parse_smgd(kHopf), parse_smgd(kTrefoil),
                           parse_smgd("M(1,1,2,2)\n"), parse_smgd("S(1,1,2,2)\n")};
  // grow a few decorated diagrams
  const std::vector<std::string> grow{"G1", "G1'", "G2", "G6", "G6'"};
  out.push_back(random_walk(parse_smgd("M(1,1,2,2)\n"), grow, 6, 7));
  out.push_back(random_walk(parse_smgd("S(1,1,2,2)\n"), {"G1", "G2", "G6", "G6'"}, 6, 11));
  out.push_back(random_walk(parse_smgd(kTrefoil), {"G6", "G6'", "G2"}, 5, 3));
  return out;
}

bool is_loop_move(const std::string& tag) { return tag == "G6" || tag == "G6'" || tag == "G7"; }

}  // namespace

TEST(Catalog, VersionAndTags) {
  const auto& cat = default_catalog();
  EXPECT_EQ(cat.version, 1);
  for (const char* t : {"G1", "G1'", "G2", "G3", "G4", "G4'", "G5", "G6", "G6'", "G7", "G8", "G9", "G9'", "G10",
                        "G11a", "G11b", "G11c", "G11d", "G12a", "G12b", "G12c", "G12d"})
    EXPECT_TRUE(cat.has(t)) << t;
  EXPECT_EQ(cat.tags().size(), 22u);
}

TEST(Catalog, ShippedFileMatchesEmbeddedTable) {
  const auto file = load_move_table(std::string(SMGD_DATA_DIR) + "/move_patterns.txt");
  EXPECT_EQ(file.patterns.size(), default_catalog().patterns.size());
}

TEST(Catalog, BoundaryPairingsOfBothResolutionsAgree) {
  for (const auto& p : default_catalog().patterns) {
    for (Smoothing s : {Smoothing::Lower, Smoothing::Upper}) {
      const auto l = side_pairing(p.lhs, p.boundary, s);
      const auto r = side_pairing(p.rhs, p.boundary, s);
      EXPECT_EQ(l.partner, r.partner) << p.name;
      if (!is_loop_move(p.tag)) EXPECT_EQ(l.loops, r.loops) << p.name;
      else EXPECT_LE(std::abs(l.loops - r.loops), 1) << p.name;
    }
  }
}

TEST(Catalog, ClosureCountsAreCatalan) {
  EXPECT_EQ(detail::noncrossing_matchings(2).size(), 1u);
  EXPECT_EQ(detail::noncrossing_matchings(4).size(), 2u);
  EXPECT_EQ(detail::noncrossing_matchings(6).size(), 5u);
  EXPECT_EQ(detail::noncrossing_matchings(8).size(), 14u);
}

TEST(Catalog, ClosedBracketsOfBothResolutionsAgree) {
  const Laurent loop = Laurent::monomial(-1, 2) + Laurent::monomial(-1, -2);
  for (const auto& p : default_catalog().patterns) {
    if (!is_loop_move(p.tag)) {
      EXPECT_TRUE(resolutions_agree(p)) << p.name;
      continue;
    }
    for (Smoothing s : {Smoothing::Lower, Smoothing::Upper})
      for (const auto& m : detail::noncrossing_matchings(p.boundary)) {
        const Laurent l = tangle_bracket(p.lhs, p.boundary, s, m);
        const Laurent r = tangle_bracket(p.rhs, p.boundary, s, m);
        EXPECT_TRUE(equal_up_to_framing(l, r) || equal_up_to_framing(l * loop, r) || equal_up_to_framing(l, r * loop))
            << p.name;
      }
  }
}

TEST(Apply, ClosedLeftSideRewritesToClosedRightSide) {
  const auto& cat = default_catalog();
  int closures = 0;
  for (int i = 0; i < static_cast<int>(cat.patterns.size()); ++i) {
    const auto& p = cat.patterns[i];
    for (const auto& m : detail::noncrossing_matchings(p.boundary)) {
      const auto l = close_side(p, p.lhs, m), r = close_side(p, p.rhs, m);
      ASSERT_EQ(l.has_value(), r.has_value());
      if (!l || l->vertices.empty()) continue;
      ++closures;
      bool hit = false;
      for (const auto& site : find_sites(*l, {p.tag, true}))
        hit = hit || canonical_form(apply(*l, site)) == canonical_form(*r);
      EXPECT_TRUE(hit) << p.name << " " << serialize_smgd(*l);
    }
  }
  EXPECT_GT(closures, 100);
}

TEST(Catalog, StarSmoothingChangesOnlyUnderMarkerFlips) {
  for (const auto& p : default_catalog().patterns) {
    const auto l = side_pairing(p.lhs, p.boundary, Smoothing::Star);
    const auto r = side_pairing(p.rhs, p.boundary, Smoothing::Star);
    const bool flips = p.tag == "G5";
    if (flips) EXPECT_NE(l.partner, r.partner) << p.name;
    else EXPECT_EQ(l, r) << p.name;
  }
}

TEST(Catalog, KinkSigns) {
  const auto& cat = default_catalog();
  for (int i : cat.indices("G1")) EXPECT_EQ(cat.patterns[i].rhs.vertices[0].kind, VertexKind::CrossingPositive);
  for (int i : cat.indices("G1'")) EXPECT_EQ(cat.patterns[i].rhs.vertices[0].kind, VertexKind::CrossingNegative);
}

TEST(Sites, NoMarkerNoG4) {
  EXPECT_TRUE(find_sites(parse_smgd(kTrefoil), {"G4", true}).empty());
  EXPECT_TRUE(find_sites(parse_smgd(kTrefoil), {"G4", false}).empty());
}

TEST(Sites, OneKinkOneSite) {
  EXPECT_EQ(find_sites(parse_smgd(kKink), {"G1", false}).size(), 1u);
  EXPECT_TRUE(find_sites(parse_smgd(kKink), {"G1'", false}).empty());
}

TEST(Apply, KinkOnCircle) {
  const Diagram o = parse_smgd("O(1)\n");
  for (const auto& s : find_sites(o, {"G1", true})) {
    const Diagram k = apply(o, s);
    EXPECT_EQ(k.vertices.size(), 1u);
    EXPECT_TRUE(k.circles.empty());
    EXPECT_EQ(k.vertices[0].kind, VertexKind::CrossingPositive);
  }
  EXPECT_FALSE(find_sites(o, {"G1", true}).empty());
}

TEST(Apply, StaleSiteRejected) {
  const Diagram k = parse_smgd(kKink);
  const auto sites = find_sites(k, {"G1", false});
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_THROW(apply(parse_smgd(kHopf), sites[0]), StaleSite);
}

TEST(Apply, EveryMoveIsReversible) {
  const auto& cat = default_catalog();
  int checked = 0;
  for (const auto& d : samples()) {
    const std::string before = canonical_form(d);
    for (const auto& tag : cat.tags())
      for (bool fwd : {true, false})
        for (const auto& site : find_sites(d, {tag, fwd})) {
          const Diagram after = apply(d, site);
          bool restored = false;
          for (const auto& back : find_sites(after, {tag, !fwd})) {
            if (canonical_form(apply(after, back)) == before) {
              restored = true;
              break;
            }
          }
          EXPECT_TRUE(restored) << cat.patterns[site.pattern].name << (fwd ? " fwd" : " bwd") << "\n"
                                << serialize_smgd(d);
          ++checked;
        }
  }
  EXPECT_GT(checked, 100);
}

TEST(Walk, ZeroStepsIsIdentity) {
  const Diagram d = parse_smgd(kTrefoil);
  EXPECT_EQ(random_walk(d, all_tags(), 0, 1), d);
}

TEST(Walk, ReproducibleFromSeed) {
  const Diagram d = parse_smgd("M(1,1,2,2)\n");
  const auto a = random_walk(d, all_tags(), 25, 42);
  const auto b = random_walk(d, all_tags(), 25, 42);
  EXPECT_EQ(a, b);
}

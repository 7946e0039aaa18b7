#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "smgd/classical.hpp"

using namespace smgd;

namespace {

const char* kTrefoil = "X+(1,5,2,4)\nX+(3,1,4,6)\nX+(5,3,6,2)\n";
const char* kFigureEight = "X+(4,2,5,1)\nX+(8,6,1,5)\nX-(6,3,7,4)\nX-(2,7,3,8)\n";
const char* kHopf = "X+(4,2,3,1)\nX+(2,4,1,3)\n";
const char* kKink = "X+(1,1,2,2)\n";

Laurent t(int e = 1) { return Laurent::monomial(1, e); }
Laurent A(int e) { return Laurent::monomial(1, e); }

// Oracle: cofactor expansion.
Laurent cofactor_det(const std::vector<std::vector<Laurent>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Laurent(1);
  if (n == 1) return m[0][0];
  Laurent out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Laurent>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Laurent> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(row);
    }
    const Laurent term = m[0][j] * cofactor_det(sub);
    out += (j % 2 == 0) ? term : -term;
  }
  return out;
}

// Oracle: recursive skein expansion on unoriented crossing labels.
// Crossing (a,b,c,d): A joins a-b and c-d, B joins a-d and b-c.
Laurent skein(std::vector<std::array<int, 4>> xs, std::vector<std::pair<int, int>> joins, int circles) {
  const Laurent loop = A(2) * Laurent(-1) - A(-2);
  if (xs.empty()) {
    // count loops formed by the joins, each label appears in exactly two joins
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : joins) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::set<int> seen;
    int loops = circles;
    for (auto& [k, v] : adj) {
      if (seen.count(k)) continue;
      ++loops;
      std::vector<int> st{k};
      seen.insert(k);
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int y : adj[x])
          if (!seen.count(y)) {
            seen.insert(y);
            st.push_back(y);
          }
      }
    }
    return loop.pow(loops - 1);
  }
  auto x = xs.back();
  xs.pop_back();
  auto ja = joins, jb = joins;
  ja.push_back({x[0], x[1]});
  ja.push_back({x[2], x[3]});
  jb.push_back({x[0], x[3]});
  jb.push_back({x[1], x[2]});
  return A(1) * skein(xs, ja, circles) + A(-1) * skein(xs, jb, circles);
}

Laurent oracle_bracket(const Diagram& d) {
  std::vector<std::array<int, 4>> xs;
  std::vector<std::pair<int, int>> joins;
  // each edge id is a label appearing at two ports: split into two half-labels joined
  int next = 1000;
  std::map<EdgeId, int> first;
  for (const auto& v : d.vertices) {
    std::array<int, 4> x{};
    for (int p = 0; p < 4; ++p) {
      const int h = next++;
      x[p] = h;
      auto it = first.find(v.ports[p]);
      if (it == first.end())
        first[v.ports[p]] = h;
      else
        joins.push_back({it->second, h});
    }
    xs.push_back(x);
  }
  return skein(xs, joins, static_cast<int>(d.circles.size()));
}

std::vector<Diagram> samples() {
  std::vector<Diagram> out{parse_smgd(kKink), parse_smgd(kHopf), parse_smgd(kTrefoil), parse_smgd(kFigureEight)};
  out.push_back(random_walk(parse_smgd(kTrefoil), classical_tags(), 4, 5));
  out.push_back(random_walk(parse_smgd(kFigureEight), classical_tags(), 3, 9));
  return out;
}

}  // namespace

TEST(Laurent, ArithmeticAndNormalization) {
  const Laurent p = Laurent::from_terms({{-1, 2}, {0, -5}, {1, 2}});
  EXPECT_EQ(p.normalized().to_string(), "2-5t+2t^2");
  EXPECT_EQ((-p).normalized(), p.normalized());
  EXPECT_EQ((p * t(-3)).normalized(), p.normalized());
  EXPECT_EQ(((t() - 1) * (t() + 1)).divided_exactly(t() - 1), t() + 1);
  EXPECT_THROW((t() + 2).divided_exactly(t() - 1), std::domain_error);
  EXPECT_EQ(Laurent::monomial(-1, 2).to_string("A"), "-A^2");
}

TEST(Laurent, OverflowIsReported) {
  const Laurent big(std::int64_t{1} << 62);
  EXPECT_THROW(big * big, std::overflow_error);
}

TEST(Laurent, BareissMatchesCofactorExpansion) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 5;
    std::vector<std::vector<Laurent>> m(n, std::vector<Laurent>(n));
    for (auto& row : m)
      for (auto& x : row) x = Laurent::monomial(c(rng), e(rng)) + Laurent::monomial(c(rng), e(rng));
    EXPECT_EQ(determinant(m), cofactor_det(m));
  }
}

TEST(Components, Counts) {
  EXPECT_EQ(component_count(parse_smgd(kTrefoil)), 1);
  EXPECT_EQ(component_count(parse_smgd(kHopf)), 2);
  EXPECT_EQ(component_count(parse_smgd("O(1)\nO(2)\nO(3)\n")), 3);
}

TEST(Alexander, KnownValues) {
  EXPECT_EQ(alexander_polynomial(parse_smgd("O(1)\n")), Laurent(1));
  EXPECT_EQ(alexander_polynomial(parse_smgd(kKink)), Laurent(1));
  EXPECT_EQ(alexander_polynomial(parse_smgd(kTrefoil)).to_string(), "1-t+t^2");
  EXPECT_EQ(alexander_polynomial(parse_smgd(kFigureEight)).to_string(), "1-3t+t^2");
  EXPECT_EQ(alexander_polynomial(parse_smgd("O(1)\nO(2)\n")), Laurent());
  EXPECT_EQ(alexander_polynomial(parse_smgd(kHopf)).to_string(), "-1+t");
}

TEST(Alexander, TrefoilMinorByCofactor) {
  // arcs: the Wirtinger matrix of the trefoil has rows (1-t, t, -1) cyclically;
  // the 2x2 minor evaluated by cofactor expansion
  const std::vector<std::vector<Laurent>> minor{{t(), Laurent(-1)}, {Laurent(1) - t(), t()}};
  EXPECT_EQ(cofactor_det(minor).normalized().to_string(), "1-t+t^2");
}

TEST(Alexander, InvariantUnderReidemeisterMoves) {
  for (const auto& d : samples()) {
    const Laurent a = alexander_polynomial(d);
    for (const auto& tag : classical_tags())
      for (bool fwd : {true, false})
        for (const auto& s : find_sites(d, {tag, fwd})) EXPECT_EQ(alexander_polynomial(apply(d, s)), a) << tag;
  }
}

TEST(Bracket, BaseCases) {
  EXPECT_EQ(kauffman_bracket(parse_smgd("O(1)\n")), Laurent(1));
  EXPECT_EQ(kauffman_bracket(parse_smgd("O(1)\nO(2)\n")), A(2) * Laurent(-1) - A(-2));
}

TEST(Bracket, Trefoil) {
  const Diagram d = parse_smgd(kTrefoil);
  EXPECT_EQ(kauffman_bracket(d), A(-7) - A(-3) - A(5));
  // the Jones-normalized form equals the reference value up to sign
  const Laurent reference = -A(-4) - A(-12) + A(-16);
  EXPECT_EQ(jones_normalized_bracket(d), -reference);
}

TEST(Bracket, MatchesSkeinOracle) {
  for (const auto& d : samples()) EXPECT_EQ(kauffman_bracket(d), oracle_bracket(d)) << serialize_smgd(d);
}

TEST(Bracket, SkeinRecursionAtEveryCrossing) {
  for (const auto& d : samples())
    for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
      const Diagram a = smooth_crossing(d, v, true), b = smooth_crossing(d, v, false);
      EXPECT_EQ(a.vertices.size() + 1, d.vertices.size());
      EXPECT_EQ(kauffman_bracket(d), A(1) * kauffman_bracket(a) + A(-1) * kauffman_bracket(b)) << serialize_smgd(d);
    }
}

TEST(Bracket, NormalizedFormInvariantUnderMoves) {
  for (const auto& d : samples()) {
    const Laurent f = jones_normalized_bracket(d);
    for (const auto& tag : classical_tags())
      for (bool fwd : {true, false})
        for (const auto& s : find_sites(d, {tag, fwd})) EXPECT_EQ(jones_normalized_bracket(apply(d, s)), f) << tag;
  }
}

TEST(Bracket, CapEnforced) {
  BracketOptions o;
  o.max_crossings = 2;
  EXPECT_THROW(kauffman_bracket(parse_smgd(kTrefoil), o), CapExceeded);
}

TEST(Simplify, KinkToCircle) {
  const Diagram s = simplify(parse_smgd(kKink));
  EXPECT_TRUE(s.vertices.empty());
  EXPECT_EQ(s.circles.size(), 1u);
}

TEST(Simplify, TrefoilStaysAtThree) {
  EXPECT_EQ(simplify(parse_smgd(kTrefoil)).vertices.size(), 3u);
}

TEST(Simplify, NeverIncreasesCrossings) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Diagram d = random_walk(parse_smgd("O(1)\n"), classical_tags(), 10, seed);
    EXPECT_LE(simplify(d).vertices.size(), d.vertices.size());
  }
}

TEST(Certify, Examples) {
  const auto u = certify_unlink(parse_smgd("O(1)\nO(2)\nO(3)\n"));
  EXPECT_EQ(u.kind, UnlinkCertificate::Kind::Unlink);
  EXPECT_EQ(u.components, 3);
  const auto tr = certify_unlink(parse_smgd(kTrefoil));
  EXPECT_EQ(tr.kind, UnlinkCertificate::Kind::NotUnlink);
  EXPECT_NE(tr.reason.find("Alexander"), std::string::npos);
  EXPECT_EQ(certify_unlink(parse_smgd(kHopf)).kind, UnlinkCertificate::Kind::NotUnlink);
}

TEST(Certify, SoundOnRandomUnknotDiagrams) {
  int certified = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Diagram d = random_walk(parse_smgd("O(1)\n"), classical_tags(), 8, seed);
    const auto c = certify_unlink(d);
    EXPECT_NE(c.kind, UnlinkCertificate::Kind::NotUnlink) << serialize_smgd(d);
    if (c.kind == UnlinkCertificate::Kind::Unlink) {
      EXPECT_EQ(c.components, 1);
      ++certified;
    }
  }
  std::printf("certified %d of 20 random unknot diagrams\n", certified);
  EXPECT_GE(certified, 15);
}

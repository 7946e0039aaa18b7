#include <gtest/gtest.h>

#include <set>

#include "smgd/biquandle.hpp"

using namespace smgd;

namespace {

const Table kXtUtr{{3, 1, 3}, {2, 2, 2}, {1, 3, 1}};
const Table kXtOtr{{3, 3, 3}, {2, 2, 2}, {1, 1, 1}};

int units_mod(int n, std::vector<int>& out) {
  out.clear();
  for (int u = 1; u <= std::max(1, n - 1); ++u)
    if (n == 1 || std::gcd(u, n) == 1) out.push_back(u);
  return static_cast<int>(out.size());
}

std::vector<int> compose(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i] - 1];
  return out;
}

}  // namespace

TEST(Axioms, XtIsValid) {
  const auto v = check_axioms(kXtUtr, kXtOtr);
  ASSERT_TRUE(v.valid());
  EXPECT_EQ(v.biquandle->order, 3);
  EXPECT_EQ(v.biquandle->underline(1, 1), 3);
  EXPECT_EQ(v.biquandle->overline(3, 2), 1);
}

TEST(Axioms, TrivialIsValid) {
  for (int n = 1; n <= 5; ++n) {
    const auto t = trivial_biquandle(n);
    EXPECT_TRUE(check_axioms(t.utr, t.otr).valid()) << n;
  }
}

TEST(Axioms, BrokenXtHasWitness) {
  Table u = kXtUtr;
  u[0][0] = 1;
  const auto v = check_axioms(u, kXtOtr);
  ASSERT_FALSE(v.valid());
  EXPECT_EQ(v.violation->axiom, "i");
  EXPECT_EQ(v.violation->witness, std::vector<int>{1});
}

TEST(Axioms, WitnessesReallyFail) {
  // every 2-element table pair: a reported witness must violate its axiom
  int valid = 0;
  for (int mu = 0; mu < 16; ++mu)
    for (int mo = 0; mo < 16; ++mo) {
      Table u(2, std::vector<int>(2)), o(2, std::vector<int>(2));
      for (int k = 0; k < 4; ++k) {
        u[k / 2][k % 2] = ((mu >> k) & 1) + 1;
        o[k / 2][k % 2] = ((mo >> k) & 1) + 1;
      }
      const auto v = check_axioms(u, o);
      if (v.valid()) {
        ++valid;
        continue;
      }
      auto U = [&](int x, int y) { return u[x - 1][y - 1]; };
      auto O = [&](int x, int y) { return o[x - 1][y - 1]; };
      const auto& w = v.violation->witness;
      const auto& a = v.violation->axiom;
      if (a == "i") { EXPECT_NE(U(w[0], w[0]), O(w[0], w[0])); }
      if (a == "ii-alpha") { EXPECT_EQ(O(w[1], w[0]), O(w[2], w[0])); }
      if (a == "ii-beta") { EXPECT_EQ(U(w[1], w[0]), U(w[2], w[0])); }
      if (a == "ii-S") { EXPECT_TRUE(O(w[1], w[0]) == O(w[3], w[2]) && U(w[0], w[1]) == U(w[2], w[3])); }
      if (a.rfind("iii", 0) == 0) { EXPECT_EQ(w.size(), 3u); }
    }
  EXPECT_GE(valid, 1);
}

TEST(Axioms, MalformedTables) {
  EXPECT_THROW(check_axioms({{1, 2}, {1}}, {{1, 2}, {1, 2}}), BiquandleError);
  EXPECT_THROW(check_axioms({{1, 3}, {1, 2}}, {{1, 2}, {1, 2}}), BiquandleError);
  EXPECT_THROW(check_axioms({{1}}, {{1, 1}, {1, 1}}), BiquandleError);
}

TEST(Alexander, AllSmallModuliAreBiquandles) {
  std::vector<int> units;
  for (int n = 1; n <= 8; ++n) {
    units_mod(n, units);
    for (int t : units)
      for (int s : units) {
        const auto b = alexander_biquandle(n, t, s);
        EXPECT_TRUE(check_axioms(b.utr, b.otr).valid()) << n << " " << t << " " << s;
      }
  }
}

TEST(Alexander, Formula) {
  const auto b = alexander_biquandle(3, 2, 1);
  // elements r+1; 1 utr 2 is 2*0 + (1-2)*1 = -1 = 2 mod 3
  EXPECT_EQ(b.underline(1, 2), 3);
  EXPECT_EQ(b.overline(2, 1), 2);
  EXPECT_EQ(alexander_biquandle(1, 1, 1).order, 1);
}

TEST(Alexander, NonUnitRejected) {
  EXPECT_THROW(alexander_biquandle(4, 2, 1), BiquandleError);
  EXPECT_THROW(alexander_biquandle(6, 1, 3), BiquandleError);
}

TEST(Properties, AdjacentLabelsRule) {
  std::vector<FiniteBiquandle> xs{make_biquandle(kXtUtr, kXtOtr), alexander_biquandle(5, 2, 3),
                                  alexander_biquandle(7, 3, 1), trivial_biquandle(3)};
  for (const auto& b : xs) {
    const int n = b.order;
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y) {
        const int p = b.underline(x, y), q = b.overline(y, x);
        int with_x = 0, with_y = 0;
        for (int z = 1; z <= n; ++z) {
          with_x += b.underline(x, z) == p && b.overline(z, x) == q;
          with_y += b.underline(z, y) == p && b.overline(y, z) == q;
        }
        EXPECT_EQ(with_x, 1);
        EXPECT_EQ(with_y, 1);
      }
  }
}

TEST(Hom, IdentityAlwaysPresent) {
  for (const auto& b : {make_biquandle(kXtUtr, kXtOtr), alexander_biquandle(5, 2, 3), trivial_biquandle(2)}) {
    std::vector<int> id(b.order);
    std::iota(id.begin(), id.end(), 1);
    bool found = false;
    for (const auto& h : homomorphisms(b, b))
      if (h.image == id) found = h.isomorphism;
    EXPECT_TRUE(found);
    EXPECT_FALSE(isomorphisms(b, b).empty());
  }
}

TEST(Hom, TrivialIntoXtHitsIdempotents) {
  const auto xt = make_biquandle(kXtUtr, kXtOtr);
  const auto hs = homomorphisms(trivial_biquandle(1), xt);
  ASSERT_EQ(hs.size(), 1u);
  EXPECT_EQ(hs[0].image, std::vector<int>{2});
}

TEST(Hom, MatchesBruteForce) {
  const auto a = alexander_biquandle(3, 2, 1), b = make_biquandle(kXtUtr, kXtOtr);
  std::set<std::vector<int>> brute;
  for (int code = 0; code < 27; ++code) {
    std::vector<int> f{code % 3 + 1, code / 3 % 3 + 1, code / 9 + 1};
    bool ok = true;
    for (int x = 1; x <= 3; ++x)
      for (int y = 1; y <= 3; ++y)
        ok = ok && f[a.underline(x, y) - 1] == b.underline(f[x - 1], f[y - 1]) &&
             f[a.overline(x, y) - 1] == b.overline(f[x - 1], f[y - 1]);
    if (ok) brute.insert(f);
  }
  std::set<std::vector<int>> found;
  for (const auto& h : homomorphisms(a, b)) found.insert(h.image);
  EXPECT_EQ(found, brute);
}

TEST(Hom, CompositionClosed) {
  for (const auto& b : {make_biquandle(kXtUtr, kXtOtr), alexander_biquandle(5, 2, 3), trivial_biquandle(3)}) {
    std::set<std::vector<int>> hs;
    for (const auto& h : homomorphisms(b, b)) hs.insert(h.image);
    for (const auto& f : hs)
      for (const auto& g : hs) EXPECT_TRUE(hs.count(compose(g, f)));
  }
}

TEST(Hom, CapEnforced) {
  HomOptions o;
  o.max_maps = 100;
  EXPECT_THROW(homomorphisms(trivial_biquandle(5), trivial_biquandle(3), o), CapExceeded);
}

TEST(Json, RoundTrip) {
  const auto b = make_biquandle(kXtUtr, kXtOtr);
  EXPECT_EQ(biquandle_from_json(to_json(b)), b);
  EXPECT_EQ(to_json(b).dump(), R"({"order":3,"otr":[[3,3,3],[2,2,2],[1,1,1]],"utr":[[3,1,3],[2,2,2],[1,3,1]]})");
  EXPECT_THROW(biquandle_from_json(nlohmann::json::parse(R"({"order":2,"utr":[[1]]})")), BiquandleError);
}

#include <gtest/gtest.h>

#include "smgd/diagram.hpp"

using namespace smgd;

TEST(Parse, MinimalMarker) {
  const Diagram d = parse_smgd("M(1,1,2,2)\n");
  ASSERT_EQ(d.vertices.size(), 1u);
  EXPECT_EQ(d.vertices[0].kind, VertexKind::Marker);
  EXPECT_EQ(d.edge_count(), 2);
}

TEST(Parse, ArityError) {
  try {
    parse_smgd("X+(1,2,3)\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("X+ takes 4 ports, got 3"), std::string::npos);
    EXPECT_EQ(e.line(), 1);
  }
}

TEST(Parse, NonSphericalMarkerRejected) {
  EXPECT_THROW(parse_smgd("M(1,2,1,2)\n"), DiagramError);
}

TEST(Parse, RenumbersAndRoundTrips) {
  const Diagram d = parse_smgd("diagram loop\nX+(5,5,9,9)\n");
  EXPECT_EQ(d.vertices[0].ports, (std::array<EdgeId, 4>{1, 1, 2, 2}));
  EXPECT_EQ(parse_smgd(serialize_smgd(d)), d);
  EXPECT_EQ(parse_smgd(serialize_smgd(d)).name, "loop");
}

TEST(Parse, Dangling) {
  try {
    parse_smgd("X+(1,2,3,4)\n");
    FAIL();
  } catch (const DiagramError& e) {
    EXPECT_NE(std::string(e.what()).find("dangling edge 1"), std::string::npos);
  }
}

TEST(Parse, OrientationInconsistency) {
  // a and d of X+ are both incoming
  EXPECT_THROW(parse_smgd("X+(1,2,2,1)\n"), DiagramError);
}

TEST(Parse, Circles) {
  const Diagram d = parse_smgd("O(7)\nO(3)\n");
  EXPECT_EQ(d.circles, (std::vector<EdgeId>{1, 2}));
  EXPECT_EQ(d.edge_count(), 2);
}

TEST(Parse, SyntaxErrorPosition) {
  try {
    parse_smgd("# c\nX+(1,2;3,4)\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 7);
  }
}

TEST(Faces, EulerCharacteristicOfHopfLink) {
  const Diagram d = parse_smgd("X+(4,2,3,1)\nX+(2,4,1,3)\n");
  EXPECT_EQ(static_cast<int>(d.vertices.size()) - d.edge_count() + static_cast<int>(faces(d).size()), 2);
}

TEST(Canonical, IndependentOfListingOrder) {
  const Diagram a = parse_smgd("X+(4,2,3,1)\nX+(2,4,1,3)\n");
  const Diagram b = parse_smgd("X+(2,4,1,3)\nX+(4,2,3,1)\n");
  EXPECT_EQ(canonical_form(a), canonical_form(b));
}

TEST(Markers, OrientationFromNeighbours) {
  const Diagram d = parse_smgd("M(1,1,2,2)\n");
  EXPECT_FALSE(d.vertices[0].first_out);
  EXPECT_TRUE(d.vertices[0].port_out(1));
}

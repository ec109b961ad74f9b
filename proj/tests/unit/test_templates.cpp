#include <gtest/gtest.h>

#include <set>

#include "ergm/templates.hpp"

using namespace ergm;

TEST(Template, Constructors) {
  EXPECT_EQ(TemplateGraph::edge().kind(), TemplateKind::Edge);
  EXPECT_EQ(TemplateGraph::two_star().kind(), TemplateKind::Star);
  EXPECT_EQ(TemplateGraph::two_star().num_vertices(), 3u);
  EXPECT_EQ(TemplateGraph::star(4).star_leaves(), 4u);
  EXPECT_EQ(TemplateGraph::triangle().kind(), TemplateKind::Triangle);
  EXPECT_EQ(TemplateGraph::cycle(4).kind(), TemplateKind::Cycle4);
  EXPECT_EQ(TemplateGraph::cycle(5).kind(), TemplateKind::General);
  EXPECT_EQ(TemplateGraph::cycle(3), TemplateGraph::triangle());
}

TEST(Template, RejectsBadEdgeLists) {
  EXPECT_THROW(TemplateGraph(3, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(TemplateGraph(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(TemplateGraph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(TemplateGraph(kMaxTemplateVertices + 1, {{0, 1}}), std::invalid_argument);
}

TEST(Template, Parse) {
  EXPECT_EQ(TemplateGraph::parse("triangle"), TemplateGraph::triangle());
  EXPECT_EQ(TemplateGraph::parse("k_star:3"), TemplateGraph::star(3));
  EXPECT_EQ(TemplateGraph::parse("cycle:6"), TemplateGraph::cycle(6));
  EXPECT_THROW(TemplateGraph::parse("pentagon"), std::invalid_argument);
  EXPECT_THROW(TemplateGraph::parse("cycle:x"), std::invalid_argument);
}

TEST(Template, CommonNeighbours) {
  const auto t = TemplateGraph::triangle();
  for (std::size_t e = 0; e < 3; ++e) EXPECT_EQ(t.common_neighbors(e), 1);
  const auto c = TemplateGraph::cycle(4);
  for (std::size_t e = 0; e < 4; ++e) EXPECT_EQ(c.common_neighbors(e), 0);
  const TemplateGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  for (std::size_t e = 0; e < 6; ++e) EXPECT_EQ(k4.common_neighbors(e), 2);
}

TEST(Template, CanonicalCodeIsRelabelingInvariant) {
  const TemplateGraph a(4, {{0, 1}, {1, 2}, {2, 3}});
  const TemplateGraph b(4, {{2, 0}, {0, 3}, {3, 1}});
  EXPECT_EQ(a.canonical_code(), b.canonical_code());
  EXPECT_NE(a.canonical_code(), TemplateGraph::star(3).canonical_code());
}

// Connected graphs with at least two edges: 2 on three vertices, 6 on four,
// 21 on five.
TEST(Family, SizesMatchKnownCounts) {
  EXPECT_EQ(connected_family(3).members.size(), 2u);
  EXPECT_EQ(connected_family(4).members.size(), 8u);
  EXPECT_EQ(connected_family(5).members.size(), 29u);
}

TEST(Family, MembersAreDistinctAndConnected) {
  const auto f = connected_family(5);
  std::set<std::uint64_t> codes;
  for (const auto& g : f.members) {
    EXPECT_TRUE(g.connected());
    EXPECT_GE(g.num_edges(), 2u);
    EXPECT_LE(g.num_vertices(), 5u);
    codes.insert(g.canonical_code());
  }
  EXPECT_EQ(codes.size(), f.members.size());
}

TEST(Family, DefaultCapIsOneMoreThanLargestTemplate) {
  const auto f = default_family({TemplateGraph::triangle()});
  EXPECT_EQ(f.cap, 4u);
  EXPECT_EQ(f.members.size(), 8u);
}

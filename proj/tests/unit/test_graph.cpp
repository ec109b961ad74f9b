#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "ergm/graph.hpp"

using namespace ergm;

TEST(EdgeIndex, RoundTripsAndIsDense) {
  std::uint64_t expect = 0;
  for (Vertex v = 1; v < 60; ++v)
    for (Vertex u = 0; u < v; ++u) {
      const EdgeId e{u, v};
      ASSERT_EQ(edge_index(e), expect);
      ASSERT_EQ(edge_from_index(expect), e);
      ++expect;
    }
  EXPECT_EQ(expect, num_pairs(60));
}

TEST(EdgeIndex, LargeVertexIds) {
  const EdgeId e{65000, 65535};
  EXPECT_EQ(edge_from_index(edge_index(e)), e);
}

TEST(MakeEdge, OrdersAndRejectsLoops) {
  EXPECT_EQ(make_edge(5, 2), (EdgeId{2, 5}));
  EXPECT_THROW(make_edge(3, 3), std::invalid_argument);
}

TEST(Graph, FlipKeepsDegreesAndCountsInSync) {
  Rng rng(1, 0);
  Graph g(70);
  for (int i = 0; i < 3000; ++i) g.flip(edge_from_index(rng.below(g.num_pairs())));
  std::uint64_t m = 0;
  for (Vertex u = 0; u < 70; ++u) {
    std::uint32_t d = 0;
    for (Vertex v = 0; v < 70; ++v) {
      ASSERT_EQ(g.has_edge(u, v), g.has_edge(v, u));
      d += g.has_edge(u, v);
    }
    ASSERT_EQ(d, g.degree(u));
    m += d;
  }
  EXPECT_EQ(m / 2, g.num_edges());
  for (std::uint64_t i = 0; i < g.num_pairs(); ++i) {
    const bool bit = (g.edge_bits()[i / 64] >> (i % 64)) & 1u;
    ASSERT_EQ(bit, g.has_edge(edge_from_index(i)));
  }
}

TEST(Graph, CodegreeMatchesDefinition) {
  Rng rng(2, 0);
  const Graph g = sample_gnp(90, 0.4, rng);
  for (Vertex u = 0; u < 90; u += 7)
    for (Vertex v = 0; v < 90; v += 5) {
      std::uint32_t c = 0;
      for (Vertex w = 0; w < 90; ++w) c += g.has_edge(u, w) && g.has_edge(v, w);
      EXPECT_EQ(g.codegree(u, v), c);
    }
}

TEST(Graph, CompleteAndEmpty) {
  const Graph k = Graph::complete(9);
  EXPECT_EQ(k.num_edges(), 36u);
  for (Vertex u = 0; u < 9; ++u) EXPECT_EQ(k.degree(u), 8u);
  EXPECT_FALSE(k.has_edge(3, 3));
  EXPECT_EQ(new_empty(9).num_edges(), 0u);
}

TEST(Graph, GnpDensityAndDeterminism) {
  Rng a(3, 0), b(3, 0);
  const Graph x = sample_gnp(200, 0.3, a), y = sample_gnp(200, 0.3, b);
  EXPECT_EQ(x, y);
  EXPECT_NEAR(static_cast<double>(x.num_edges()) / x.num_pairs(), 0.3, 0.02);
}

TEST(Graph, DominanceAndHamming) {
  Rng rng(4, 0);
  Graph lo = sample_gnp(30, 0.3, rng);
  Graph hi = lo;
  hi.set_edge({0, 1}, true);
  hi.set_edge({2, 9}, true);
  EXPECT_TRUE(dominates(lo, hi));
  EXPECT_EQ(hamming_distance(lo, hi), static_cast<std::uint64_t>(!lo.has_edge({0, 1}) + !lo.has_edge({2, 9})));
  hi.set_edge({0, 1}, false);
  lo.set_edge({0, 1}, true);
  EXPECT_FALSE(dominates(lo, hi));
}

TEST(Snapshot, RoundTripAtAwkwardSizes) {
  Rng rng(5, 0);
  for (std::size_t n : {1, 2, 3, 4, 5, 12, 13, 64, 65, 101}) {
    const Graph g = sample_gnp(n, 0.5, rng);
    const auto bytes = snapshot_write(g);
    ASSERT_EQ(bytes.size(), 9 + (num_pairs(n) + 7) / 8);
    EXPECT_EQ(snapshot_read(bytes), g);
  }
}

TEST(Snapshot, LayoutIsFixed) {
  Graph g(4);
  g.set_edge({0, 1}, true);  // index 0
  g.set_edge({2, 3}, true);  // index 5
  const auto b = snapshot_write(g);
  const std::vector<std::uint8_t> want{'E', 'R', 'G', 'X', 1, 4, 0, 0, 0, 0x21};
  EXPECT_EQ(b, want);
}

TEST(Snapshot, RejectsCorruptInput) {
  Graph g(6);
  g.set_edge({1, 4}, true);
  auto b = snapshot_write(g);
  auto bad_magic = b;
  bad_magic[0] = 'X';
  EXPECT_THROW(snapshot_read(bad_magic), SnapshotError);
  auto bad_version = b;
  bad_version[4] = 2;
  EXPECT_THROW(snapshot_read(bad_version), SnapshotError);
  auto truncated = b;
  truncated.pop_back();
  EXPECT_THROW(snapshot_read(truncated), SnapshotError);
  auto padded = b;
  padded.push_back(0);
  EXPECT_THROW(snapshot_read(padded), SnapshotError);
  auto dirty = b;
  dirty.back() |= 0x80;  // 15 pairs: bit 15 is padding
  EXPECT_THROW(snapshot_read(dirty), SnapshotError);
}

TEST(Snapshot, FileRoundTrip) {
  Rng rng(6, 0);
  const Graph g = sample_gnp(40, 0.2, rng);
  const auto path = (std::filesystem::temp_directory_path() / "ergm_graph_test.ergx").string();
  snapshot_save(g, path);
  EXPECT_EQ(snapshot_load(path), g);
  std::remove(path.c_str());
  EXPECT_THROW(snapshot_load(path), std::runtime_error);
}

TEST(Graph, ZeroVerticesRejected) {
  EXPECT_THROW(new_empty(0), std::invalid_argument);
  const Graph one = new_empty(1);
  EXPECT_EQ(one.num_pairs(), 0u);
  EXPECT_EQ(one.degree(0), 0u);
}

TEST(Graph, GnpEndpoints) {
  Rng rng(7, 0);
  EXPECT_EQ(sample_gnp(20, 0.0, rng).num_edges(), 0u);
  EXPECT_EQ(sample_gnp(20, 1.0, rng).num_edges(), 190u);
  EXPECT_THROW(sample_gnp(20, 1.5, rng), std::invalid_argument);
}

TEST(Graph, GnpEdgeCountMoments) {
  // m ~ Bin(4950, 1/2): mean of 10^4 replicas within 3 sigma / sqrt(R).
  Rng rng(8, 0);
  const int reps = 10000;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) sum += static_cast<double>(sample_gnp(100, 0.5, rng).num_edges());
  const double se = std::sqrt(4950 * 0.25) / std::sqrt(static_cast<double>(reps));
  EXPECT_NEAR(sum / reps, 2475.0, 3 * se);
}

TEST(Graph, FlipIsAnInvolutionAndLocal) {
  Rng rng(9, 0);
  for (int rep = 0; rep < 200; ++rep) {
    Graph g = sample_gnp(25, rng.uniform(), rng);
    const Graph before = g;
    const EdgeId e = edge_from_index(rng.below(g.num_pairs()));
    g.flip(e);
    for (Vertex w = 0; w < 25; ++w)
      if (w != e.u && w != e.v) { ASSERT_EQ(g.degree(w), before.degree(w)); }
    g.flip(e);
    ASSERT_EQ(g, before);
  }
  Graph empty(6);
  empty.flip({1, 4});
  EXPECT_EQ(empty.num_edges(), 1u);
}

TEST(Graph, CodegreeSmallCases) {
  Graph path(3);
  path.set_edge({0, 1}, true);
  path.set_edge({1, 2}, true);
  EXPECT_EQ(path.codegree(0, 2), 1u);
  const Graph k = Graph::complete(11);
  EXPECT_EQ(k.codegree(2, 7), 9u);
}

TEST(Graph, CodegreeMatchesSumOnManyInstances) {
  Rng rng(10, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 2 + rng.below(80);
    const Graph g = sample_gnp(n, rng.uniform(), rng);
    const Vertex u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
    std::uint32_t c = 0;
    for (Vertex w = 0; w < n; ++w) c += g.has_edge(u, w) && g.has_edge(v, w);
    ASSERT_EQ(g.codegree(u, v), c);
  }
}

TEST(Graph, DominanceIsAPartialOrder) {
  Rng rng(11, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(10);
    const Graph a = sample_gnp(n, rng.uniform(), rng);
    const Graph b = sample_gnp(n, rng.uniform(), rng);
    Graph c = a;
    for (std::uint64_t i = 0; i < num_pairs(n); ++i)
      if (b.has_edge(edge_from_index(i))) c.set_edge(edge_from_index(i), true);  // c = a | b
    ASSERT_TRUE(dominates(Graph(n), a));
    ASSERT_TRUE(dominates(a, a));
    ASSERT_TRUE(dominates(a, c) && dominates(b, c));
    if (dominates(a, b) && dominates(b, a)) { ASSERT_EQ(a, b); }
    if (dominates(a, b)) { ASSERT_TRUE(dominates(a, c)); }
  }
}

TEST(Snapshot, EmptyGraphPayload) {
  const auto b = snapshot_write(Graph(5));
  ASSERT_EQ(b.size(), 9u + 2u);
  EXPECT_EQ(b[9], 0);
  EXPECT_EQ(b[10], 0);
}

TEST(Snapshot, CorruptLengthField) {
  auto b = snapshot_write(Graph(5));
  b[5] = 6;  // claims n = 6: 15 pairs, still 2 bytes but padding differs
  b[10] = 0x80;
  EXPECT_THROW(snapshot_read(b), SnapshotError);
  b[5] = 40;
  EXPECT_THROW(snapshot_read(b), SnapshotError);
  b[5] = 0;
  EXPECT_THROW(snapshot_read(b), SnapshotError);
}

TEST(Snapshot, HundredRandomRoundTrips) {
  Rng rng(12, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const Graph g = sample_gnp(1 + rng.below(120), rng.uniform(), rng);
    ASSERT_EQ(snapshot_read(snapshot_write(g)), g);
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ergm/cut_distance.hpp"
#include "ergm/dynamics.hpp"
#include "ergm/landscape.hpp"
#include "ergm/manifest.hpp"
#include "ergm/subgraph_counts.hpp"
#include "exact_chain.hpp"

using namespace ergm;

namespace {

std::shared_ptr<const ModelParams> shared(ModelParams m) { return std::make_shared<const ModelParams>(std::move(m)); }

std::uint64_t graph_hash(const Graph& g) {
  const auto b = snapshot_write(g);
  return fnv1a64(std::string_view(reinterpret_cast<const char*>(b.data()), b.size()));
}

}  // namespace

TEST(Conditional, EdgeOnlyAndZeroModels) {
  Rng rng(50, 0);
  const Graph x = sample_gnp(12, 0.5, rng);
  const auto edge = ModelParams::make({-0.4}, {}, 12);
  const auto zero = ModelParams::make({0.0, 0.0}, {TemplateGraph::triangle()}, 12);
  for (std::uint64_t i = 0; i < x.num_pairs(); ++i) {
    EXPECT_DOUBLE_EQ(conditional_prob(edge, x, edge_from_index(i)), logistic(-0.8));
    EXPECT_DOUBLE_EQ(conditional_prob(zero, x, edge_from_index(i)), 0.5);
  }
}

// Ratio of Gibbs weights from full homomorphism counts at n = 4.
TEST(Conditional, MatchesGibbsRatiosEverywhere) {
  const auto m = ModelParams::edge_triangle(-1.8, 2.0, 4);
  const oracle::ExactChain ref(m);
  for (std::size_t s = 0; s < ref.states; ++s) {
    Graph x(4);
    for (std::size_t i = 0; i < ref.pairs; ++i)
      if ((s >> i) & 1u) x.set_edge(edge_from_index(i), true);
    Chain chain(shared(m), x);
    for (std::size_t i = 0; i < ref.pairs; ++i) {
      const double want = ref.up[s * ref.pairs + i];
      ASSERT_NEAR(conditional_prob(m, x, edge_from_index(i)), want, 1e-12);
      ASSERT_NEAR(chain.conditional(edge_from_index(i)), want, 1e-12);
    }
  }
}

TEST(Conditional, DependsOnlyOnTheRest) {
  Rng rng(51, 0);
  const auto m = ModelParams::make({-0.5, 0.3, 0.2}, {TemplateGraph::triangle(), TemplateGraph::cycle(4)}, 15);
  Graph x = sample_gnp(15, 0.4, rng);
  for (int i = 0; i < 50; ++i) {
    const EdgeId e = edge_from_index(rng.below(x.num_pairs()));
    x.set_edge(e, false);
    const double off = conditional_prob(m, x, e);
    x.set_edge(e, true);
    ASSERT_NEAR(conditional_prob(m, x, e), off, 1e-15);
  }
}

// The chain's inline logits agree with the generic delta route for every
// template kind.
TEST(Chain, FastLogitsMatchGenericDeltas) {
  Rng rng(52, 0);
  const std::size_t n = 14;
  const auto m = shared(ModelParams::make(
      {-0.7, 0.4, 0.3, 0.2, 0.1},
      {TemplateGraph::two_star(), TemplateGraph::triangle(), TemplateGraph::cycle(4), TemplateGraph::cycle(5)}, n));
  for (auto policy : {CodegreePolicy::Matrix, CodegreePolicy::OnDemand}) {
    Chain chain(m, sample_gnp(n, 0.5, rng), policy);
    for (int t = 0; t < 300; ++t) {
      chain.step(rng);
      const EdgeId e = edge_from_index(rng.below(num_pairs(n)));
      ASSERT_NEAR(chain.conditional(e), conditional_prob(*m, chain.graph(), e), 1e-13);
    }
    EXPECT_TRUE(chain.caches_consistent());
  }
}

TEST(Chain, PoliciesGiveIdenticalTrajectories) {
  const std::size_t n = 40;
  const auto m = shared(ModelParams::edge_triangle(-0.3, 0.8, n));
  std::vector<std::uint64_t> hashes;
  for (auto policy : {CodegreePolicy::Auto, CodegreePolicy::Matrix, CodegreePolicy::OnDemand}) {
    Rng rng(53, 0);
    Chain chain(m, sample_gnp(n, 0.5, rng), policy);
    for (int t = 0; t < 20000; ++t) chain.step(rng);
    EXPECT_TRUE(chain.caches_consistent());
    hashes.push_back(graph_hash(chain.graph()));
  }
  EXPECT_EQ(hashes[0], hashes[1]);
  EXPECT_EQ(hashes[1], hashes[2]);
}

TEST(Chain, AutoPolicyKeepsTableOnlyForFourCycles) {
  EXPECT_FALSE(Chain(shared(ModelParams::edge_triangle(-1.8, 2.0, 30)), Graph(30)).uses_codegree_matrix());
  EXPECT_TRUE(Chain(shared(ModelParams::make({0.0, 0.1}, {TemplateGraph::cycle(4)}, 30)), Graph(30))
                  .uses_codegree_matrix());
  EXPECT_TRUE(Chain(shared(ModelParams::edge_triangle(-1.8, 2.0, 30)), Graph(30), CodegreePolicy::Matrix)
                  .uses_codegree_matrix());
}

TEST(Chain, RejectsMismatchedSize) {
  EXPECT_THROW(Chain(shared(ModelParams::edge_triangle(0, 0, 10)), Graph(11)), std::invalid_argument);
}

TEST(CodegreeMatrix, TracksRandomFlips) {
  Rng rng(54, 0);
  Graph g = sample_gnp(35, 0.3, rng);
  CodegreeMatrix c(g);
  for (int i = 0; i < 2000; ++i) {
    const EdgeId e = edge_from_index(rng.below(g.num_pairs()));
    g.flip(e);
    c.on_flip(g, e);
  }
  for (Vertex u = 0; u < 35; ++u)
    for (Vertex v = 0; v < 35; ++v)
      if (u != v) { ASSERT_EQ(c.at(u, v), g.codegree(u, v)); }
}

TEST(Glauber, StepCounterAndDeterminism) {
  const auto m = shared(ModelParams::edge_triangle(-0.5, 0.6, 25));
  Rng a(55, 3), b(55, 3);
  Chain x(m, Graph(25)), y(m, Graph(25));
  for (int t = 0; t < 5000; ++t) {
    glauber_step(x, a);
    glauber_step(y, b);
    ASSERT_EQ(x.steps(), static_cast<std::uint64_t>(t + 1));
  }
  EXPECT_EQ(x.graph(), y.graph());
}

// Frozen trajectory fingerprint: seed 2024, stream 0, edge-triangle
// (-0.3, 0.8) at n = 30 from the empty graph, 10^4 steps.
TEST(Glauber, FrozenTrajectoryFingerprint) {
  const auto m = shared(ModelParams::edge_triangle(-0.3, 0.8, 30));
  Rng rng(2024, 0);
  Chain chain(m, Graph(30));
  for (int t = 0; t < 10000; ++t) chain.step(rng);
  EXPECT_EQ(hex64(graph_hash(chain.graph())), "e5b0df5f6963026f");
}

TEST(Glauber, EdgeOnlyStationaryDensity) {
  const double b0 = -0.4, p = logistic(2 * b0);
  const auto m = shared(ModelParams::make({b0}, {}, 30));
  Rng rng(56, 0);
  Chain chain(m, Graph(30));
  for (int t = 0; t < 1000000; ++t) chain.step(rng);
  const double pairs = 435.0;
  const double density = static_cast<double>(chain.graph().num_edges()) / pairs;
  EXPECT_NEAR(density, p, 3 * std::sqrt(p * (1 - p) / pairs));
}

TEST(Glauber, ZeroModelBitsAreFair) {
  const auto m = shared(ModelParams::make({0.0}, {}, 10));
  Rng rng(57, 0);
  Chain chain(m, Graph(10));
  int set = 0;
  const int steps = 200000;
  for (int t = 0; t < steps; ++t) {
    Rng peek = rng;
    const EdgeId e = edge_from_index(peek.below(45));
    chain.step(rng);
    set += chain.graph().has_edge(e);
  }
  EXPECT_NEAR(static_cast<double>(set) / steps, 0.5, 3 * 0.5 / std::sqrt(static_cast<double>(steps)));
}

TEST(Restricted, WholeSpaceBallIsPlainGlauber) {
  const std::size_t n = 6;
  const auto m = shared(ModelParams::edge_triangle(-0.5, 0.7, n));
  const Ball ball{0.3, 0.7};
  Rng a(58, 0), b(58, 0);
  Chain x(m, Graph(n)), y(m, Graph(n));
  for (int t = 0; t < 3000; ++t) {
    glauber_step(x, a);
    restricted_glauber_step(y, ball, b);
    ASSERT_EQ(x.graph(), y.graph());
  }
}

// If every single-flip neighbour of X lies in the ball the restricted step
// makes the same move as the plain one.
TEST(Restricted, DeepInsideBallMatchesPlainStep) {
  Rng rng(59, 0);
  const std::size_t n = 9;
  const auto m = shared(ModelParams::edge_triangle(-0.4, 0.6, n));
  for (int rep = 0; rep < 200; ++rep) {
    const Graph start = sample_gnp(n, 0.5, rng);
    const double eta = cut_distance_exact(start, 0.5) + 2.0 / (n * n) + 1e-12;
    const Ball ball{0.5, eta};
    Chain x(m, start), y(m, start);
    const std::uint64_t seed = rng.next_u64();
    Rng a(seed, 0), b(seed, 0);
    glauber_step(x, a);
    restricted_glauber_step(y, ball, b);
    ASSERT_EQ(x.graph(), y.graph());
  }
}

TEST(Restricted, SizeLimit) {
  const auto m = shared(ModelParams::edge_triangle(0, 0, 23));
  Chain c(m, Graph(23));
  Rng rng(60, 0);
  EXPECT_THROW(restricted_glauber_step(c, {0.5, 0.1}, rng), std::invalid_argument);
}

TEST(Coupling, IdenticalStatesStayIdentical) {
  Rng rng(61, 0);
  const auto m = shared(ModelParams::edge_triangle(-0.5, 0.5, 20));
  const Graph g = sample_gnp(20, 0.4, rng);
  CoupledPair pair(Chain(m, g), Chain(m, g));
  for (int t = 0; t < 20000; ++t) {
    monotone_pair_step(pair, rng);
    ASSERT_EQ(pair.distance, 0u);
  }
  EXPECT_EQ(pair.lower.graph(), pair.upper.graph());
}

TEST(Coupling, ZeroModelAgreesAtEveryUpdatedEdge) {
  Rng rng(62, 0);
  const auto m = shared(ModelParams::make({0.0, 0.0}, {TemplateGraph::triangle()}, 12));
  CoupledPair pair(Chain(m, Graph(12)), Chain(m, Graph::complete(12)));
  for (int t = 0; t < 2000; ++t) {
    Rng peek = rng;
    const EdgeId e = edge_from_index(peek.below(66));
    monotone_pair_step(pair, rng);
    ASSERT_EQ(pair.lower.graph().has_edge(e), pair.upper.graph().has_edge(e));
  }
}

TEST(Coupling, OrderAndDistanceMaintained) {
  Rng rng(63, 0);
  const std::size_t n = 30;
  const auto m = shared(ModelParams::make({-0.6, 0.5, 0.3}, {TemplateGraph::triangle(), TemplateGraph::two_star()}, n));
  Graph lo = sample_gnp(n, 0.3, rng), hi = lo;
  for (std::uint64_t i = 0; i < num_pairs(n); ++i)
    if (rng.bernoulli(0.4)) hi.set_edge(edge_from_index(i), true);
  CoupledPair pair(Chain(m, lo), Chain(m, hi));
  ASSERT_TRUE(pair.ordered);
  for (int t = 0; t < 100000; ++t) {
    monotone_pair_step(pair, rng);
    if (t % 97 == 0) {
      ASSERT_TRUE(dominates(pair.lower.graph(), pair.upper.graph()));
      ASSERT_EQ(pair.distance, hamming_distance(pair.lower.graph(), pair.upper.graph()));
    }
  }
  EXPECT_EQ(pair.order_violations, 0u);
}

// All-zero model: coalescence is coupon collecting over N = 28 pairs.
TEST(Coalescence, ZeroModelIsCouponCollector) {
  const std::size_t n = 8, big_n = 28;
  const auto m = shared(ModelParams::make({0.0}, {}, n));
  double mean = 0.0, var = 0.0;
  for (std::size_t i = 1; i <= big_n; ++i) {
    const double p = static_cast<double>(i) / big_n;
    mean += 1 / p;
    var += (1 - p) / (p * p);
  }
  // Exact CDF P(T <= t) = sum_k (-1)^k C(N,k) (1 - k/N)^t.
  auto cdf = [&](double t) {
    double s = 0.0, binom = 1.0;
    for (std::size_t k = 0; k <= big_n; ++k) {
      s += (k % 2 ? -1.0 : 1.0) * binom * std::pow(1.0 - static_cast<double>(k) / big_n, t);
      binom = binom * static_cast<double>(big_n - k) / static_cast<double>(k + 1);
    }
    return s;
  };
  const int reps = 2000;
  std::vector<double> times;
  Rng rng(64, 0);
  for (int r = 0; r < reps; ++r) {
    const auto t = coalescence_time(m, rng, 1'000'000);
    ASSERT_TRUE(t.has_value());
    times.push_back(static_cast<double>(*t));
  }
  const double avg = std::accumulate(times.begin(), times.end(), 0.0) / reps;
  EXPECT_NEAR(avg, mean, 3 * std::sqrt(var / reps));
  std::sort(times.begin(), times.end());
  const double med = times[reps / 2];
  const double spread = 3 * 0.5 / std::sqrt(static_cast<double>(reps));
  EXPECT_GE(cdf(med), 0.5 - spread);
  EXPECT_LE(cdf(med - 1), 0.5 + spread);
}

TEST(Coalescence, LowRegimeTimesOut) {
  const auto m = shared(ModelParams::edge_triangle(-1.8, 2.0, 32));
  Rng rng(65, 0);
  EXPECT_FALSE(coalescence_time(m, rng, 10'000'000).has_value());
}

// Relabelling vertices does not change the law of the coalescence time:
// drive the coupling through a fixed random vertex permutation and compare
// with the plain run (two-sample test on the means).
TEST(Coalescence, ExchangeableUnderRelabelling) {
  const std::size_t n = 6;
  const auto m = shared(ModelParams::edge_triangle(-0.2, 0.6, n));
  std::vector<Vertex> perm{3, 0, 5, 1, 4, 2};
  auto run = [&](bool permuted, Rng& rng) {
    Chain lo(m, Graph(n)), hi(m, Graph::complete(n));
    std::uint64_t t = 0;
    while (!(lo.graph() == hi.graph())) {
      EdgeId e = edge_from_index(rng.below(num_pairs(n)));
      if (permuted) e = make_edge(perm[e.u], perm[e.v]);
      const double u = rng.uniform();
      const bool a = u < lo.conditional(e), b = u < hi.conditional(e);
      lo.set_edge(e, a);
      hi.set_edge(e, b);
      ++t;
    }
    return static_cast<double>(t);
  };
  const int reps = 3000;
  Rng r1(66, 0), r2(66, 1), r3(66, 2);
  std::vector<double> plain, relabelled, library;
  for (int i = 0; i < reps; ++i) {
    plain.push_back(run(false, r1));
    relabelled.push_back(run(true, r2));
    library.push_back(static_cast<double>(*coalescence_time(m, r3, 10'000'000)));
  }
  auto mean_var = [](const std::vector<double>& v) {
    const double mu = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::pair{mu, s / static_cast<double>(v.size() - 1)};
  };
  const auto [m1, v1] = mean_var(plain);
  const auto [m2, v2] = mean_var(relabelled);
  const auto [m3, v3] = mean_var(library);
  EXPECT_NEAR(m1, m2, 4 * std::sqrt((v1 + v2) / reps));
  EXPECT_NEAR(m1, m3, 4 * std::sqrt((v1 + v3) / reps));
}

// Mean Hamming distance of the monotone pair decays geometrically in the
// High regime: the fitted rate in E d_k ~ exp(-c k / n^2) is positive.
TEST(Coalescence, DistanceDecaysGeometrically) {
  const std::size_t n = 12;
  const auto m = shared(ModelParams::edge_triangle(-0.3, 0.8, n));
  const int reps = 200, horizon = 1500, every = 100;
  std::vector<double> mean(horizon / every + 1, 0.0);
  Rng rng(67, 0);
  for (int r = 0; r < reps; ++r) {
    CoupledPair pair(Chain(m, Graph(n)), Chain(m, Graph::complete(n)));
    for (int k = 0; k <= horizon; ++k) {
      if (k % every == 0) mean[k / every] += static_cast<double>(pair.distance) / reps;
      monotone_pair_step(pair, rng);
    }
  }
  // Least squares of log mean distance against k over the tail.
  std::vector<double> xs, ys;
  for (std::size_t i = 2; i < mean.size(); ++i)
    if (mean[i] > 0) {
      xs.push_back(static_cast<double>(i * every));
      ys.push_back(std::log(mean[i]));
    }
  ASSERT_GE(xs.size(), 5u);
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double c = -(sxy / sxx) * static_cast<double>(n * n);
  EXPECT_GT(c, 0.0);
  for (std::size_t i = 1; i < mean.size(); ++i) EXPECT_LE(mean[i], mean[i - 1] + 1e-9);
}

TEST(Sandwich, WideBandAlwaysOk) {
  Rng rng(68, 0);
  const auto m = shared(ModelParams::edge_triangle(-1.8, 2.0, 20));
  for (int r = 0; r < 20; ++r) {
    const auto s = sandwich_sample(m, 0.3, 0.7, 1.0, 100, rng);
    EXPECT_TRUE(s.ok);
    EXPECT_TRUE(dominates(s.under, s.x) && dominates(s.x, s.over));
  }
}

TEST(Sandwich, HighRegimeOkRate) {
  const std::size_t n = 64;
  const auto m = shared(ModelParams::edge_triangle(-0.3, 0.8, n));
  const double p_star = find_local_maxima(*m)[0].p;
  Rng rng(69, 0);
  int ok = 0;
  for (int r = 0; r < 100; ++r) {
    const auto s = sandwich_sample(m, p_star, 0.1, 0.1, 10 * num_pairs(n), rng);
    ok += s.ok;
    if (s.ok) {
      ASSERT_TRUE(dominates(s.under, s.x));
      ASSERT_TRUE(dominates(s.x, s.over));
      ASSERT_GE(s.min_conditional, p_star - 0.1);
      ASSERT_LE(s.max_conditional, p_star + 0.1);
    }
  }
  EXPECT_GE(ok, 95);
}

TEST(RunChain, ObservationSchedule) {
  const auto m = shared(ModelParams::edge_triangle(-0.5, 0.5, 10));
  Rng rng(70, 0);
  std::vector<Observer> obs{{"edges", {"m"}, [](const Graph& g) { return std::vector<double>{double(g.num_edges())}; }}};
  Chain c0(m, Graph(10));
  const auto r0 = run_chain(c0, 0, rng, obs, 5);
  ASSERT_EQ(r0.steps.size(), 1u);
  EXPECT_EQ(r0.rows[0][0], 0.0);
  for (std::uint64_t T : {1, 7, 10, 99}) {
    Chain c(m, Graph(10));
    std::uint64_t hooks = 0;
    const auto r = run_chain(c, T, rng, obs, 5, [&](const Graph&, std::uint64_t) { ++hooks; });
    EXPECT_EQ(r.steps.size(), T / 5 + 1);
    EXPECT_EQ(hooks, T + 1);
    EXPECT_EQ(c.steps(), T);
  }
}

TEST(RunChain, ObserverErrorsCarryContext) {
  const auto m = shared(ModelParams::edge_triangle(-0.5, 0.5, 10));
  Rng rng(71, 0);
  Chain c(m, Graph(10));
  std::vector<Observer> bad{{"broken", {"a", "b"}, [](const Graph&) { return std::vector<double>{1.0}; }}};
  try {
    run_chain(c, 10, rng, bad, 1);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("broken"), std::string::npos);
  }
  EXPECT_THROW(run_chain(c, 10, rng, {}, 0), std::invalid_argument);
}

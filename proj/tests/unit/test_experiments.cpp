#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "ergm/experiments.hpp"
#include "ergm/manifest.hpp"

using namespace ergm;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ergm_exp_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string file_hash(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return hex64(fnv1a64(data));
}

ExperimentConfig sweep_config(std::size_t points) {
  auto cfg = parse_config(R"({"model": {"beta": [-1.8, 0], "n": 100}})");
  cfg.phase.sweep = SweepSpec{1, 0.0, 3.0, points};
  return cfg;
}

}  // namespace

TEST(Helpers, ParallelForVisitsEachIndexOnceAndRethrows) {
  for (std::size_t threads : {1u, 3u}) {
    std::vector<std::atomic<int>> hits(50);
    parallel_for(50, threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10, threads, [](std::size_t i) {
                   if (i == 4) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
  }
}

TEST(Helpers, QuantilesAndSlope) {
  EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2.0);
  EXPECT_DOUBLE_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_DOUBLE_EQ(quantile({0, 10}, 0.1), 1.0);
  EXPECT_EQ(median({1, INFINITY, INFINITY}), INFINITY);
  EXPECT_THROW(median({}), std::invalid_argument);
  EXPECT_NEAR(loglog_slope({8, 16, 32}, {3 * 64.0, 3 * 256.0, 3 * 1024.0}), 2.0, 1e-12);
  EXPECT_THROW(loglog_slope({1}, {1}), std::invalid_argument);
}

TEST(Phase, SweepTurnsLowAndThresholdIsStable) {
  const auto coarse = run_phase(sweep_config(61));
  ASSERT_EQ(coarse.rows.size(), 61u);
  EXPECT_EQ(coarse.rows.front().report.regime, Regime::High);
  ASSERT_TRUE(coarse.first_low.has_value());
  const auto fine = run_phase(sweep_config(241));
  ASSERT_TRUE(fine.first_low.has_value());
  EXPECT_LE(std::fabs(*coarse.first_low - *fine.first_low), 3.0 / 60);
  EXPECT_LE(*fine.first_low, *coarse.first_low + 1e-12);
}

TEST(Phase, SinglePointWithoutSweep) {
  auto cfg = parse_config(R"({"model": {"beta": [0], "templates": [], "n": 10}})");
  const auto r = run_phase(cfg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].report.regime, Regime::High);
  EXPECT_FALSE(r.first_low.has_value());
  const auto dir = scratch("phase");
  for (const auto& f : write_phase(r, dir.string())) EXPECT_TRUE(std::filesystem::exists(dir / f));
}

TEST(Metastable, SmallRunProducesBothArms) {
  auto cfg = parse_config(R"({"model": {"beta": [-1.8, 2], "n": 30}, "seed": 7,
                              "metastable": {"replicas": 4, "stride": 100}})");
  const auto r = run_metastable(cfg);
  ASSERT_EQ(r.runs.size(), 8u);
  EXPECT_EQ(r.steps, 50u * 435u);
  EXPECT_NEAR(r.solution.q, 0.044554300947563996211, 1e-9);
  for (const auto& run : r.runs) {
    EXPECT_EQ(run.trajectory.steps.size(), r.steps / 100 + 1);
    EXPECT_EQ(run.persisted, run.max_dev <= cfg.metastable.band);
  }
  const auto dir = scratch("meta");
  for (const auto& f : write_metastable(r, dir.string())) EXPECT_TRUE(std::filesystem::exists(dir / f));
}

TEST(Metastable, RefusesModelsOutsideTheExample) {
  auto cfg = parse_config(R"({"model": {"beta": [-1.8, 0], "n": 30}})");
  EXPECT_THROW(run_metastable(cfg), ExampleConditionError);
  cfg = parse_config(R"({"model": {"beta": [-1.8, 2, 0.1], "templates": ["triangle", "two_star"], "n": 30}})");
  EXPECT_THROW(run_metastable(cfg), std::invalid_argument);
}

TEST(Sample, SnapshotsRoundTripAndRerunsAreIdentical) {
  auto cfg = parse_config(R"({"model": {"beta": [-0.3, 0.8], "n": 20},
                              "sample": {"samples": 5, "burn_in_sweeps": 2, "thin_sweeps": 1, "snapshots": true}})");
  const auto a = run_sample(cfg);
  ASSERT_EQ(a.graphs.size(), 5u);
  const auto d1 = scratch("sample1"), d2 = scratch("sample2");
  const auto files = write_sample(a, d1.string());
  for (std::size_t i = 0; i < 5; ++i)
    EXPECT_EQ(snapshot_load((d1 / "snapshots" / ("sample_" + std::to_string(i) + ".ergx")).string()), a.graphs[i]);
  cfg.threads = 3;
  const auto b = run_sample(cfg);
  write_sample(b, d2.string());
  for (const auto& f : files) EXPECT_EQ(file_hash(d1 / f), file_hash(d2 / f)) << f;
}

TEST(Mix, ZeroModelCoalescesAndThreadsDoNotChangeResults) {
  auto cfg = parse_config(R"({"model": {"beta": [0, 0], "n": 8},
                              "mix": {"sizes": [4, 6, 8], "replicas": 11, "exact_n": 4}})");
  const auto a = run_mix(cfg);
  cfg.threads = 2;
  const auto b = run_mix(cfg);
  ASSERT_EQ(a.sizes.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.sizes[i].timeouts, 0u);
    EXPECT_EQ(a.sizes[i].times, b.sizes[i].times);
  }
  ASSERT_TRUE(a.slope.has_value());
  ASSERT_TRUE(a.exact.has_value());
  EXPECT_TRUE(a.exact->monotone);
  EXPECT_TRUE(a.exact->t_delta.has_value());
}

TEST(Validate, AllChecksPass) {
  const auto r = run_validation(parse_config("{}"));
  EXPECT_TRUE(r.all_pass());
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_FALSE(r.tv_curve.empty());
}

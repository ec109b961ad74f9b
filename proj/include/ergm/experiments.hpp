#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ergm/config.hpp"
#include "ergm/diagnostics.hpp"
#include "ergm/dynamics.hpp"
#include "ergm/landscape.hpp"

namespace ergm {

/// Runs fn(i) for every i < count on up to `threads` workers; the first
/// exception is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Global maximizer of L_beta (the one with the largest value). Throws
/// std::runtime_error when the supremum sits on the boundary.
double reference_p_star(const ModelParams& m, const LandscapeTolerances& tol = {});

double median(std::vector<double> v);
double quantile(std::vector<double> v, double q);
/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---- phase

struct PhaseRow {
  std::vector<double> beta;
  LandscapeReport report;
};

struct PhaseResult {
  std::vector<PhaseRow> rows;
  /// Sweep value where the regime first turns Low, if it does.
  std::optional<double> first_low;
};

PhaseResult run_phase(const ExperimentConfig& cfg);
std::vector<std::string> write_phase(const PhaseResult& r, const std::string& dir);

// ---- sample

struct SampleRow {
  std::size_t index = 0;
  std::uint64_t step = 0;
  double density = 0.0;
  RExtrema r;
  bool gamma = false;
  double degree_dev = 0.0;
  WedgeSummary wedge;
  double max_abs_g = 0.0;
  CutBounds cut;
  std::size_t exception_size = 0;
};

struct SampleResult {
  double p_star = 0.0;
  std::size_t family_size = 0;
  std::vector<SampleRow> rows;
  std::vector<Graph> graphs;  // only when snapshots are requested
  double gamma_rate = 0.0;
  double degree_rate = 0.0;  // sup_u |p_u - p*| <= eps
  double wedge_rate = 0.0;   // sup |p_uv - p*^2| <= eps
  double g_rate = 0.0;       // max |g_uv| <= eps / 2
};

SampleResult run_sample(const ExperimentConfig& cfg);
std::vector<std::string> write_sample(const SampleResult& r, const std::string& dir);

// ---- mix

struct MixSize {
  std::size_t n = 0;
  std::vector<std::optional<std::uint64_t>> times;
  std::size_t timeouts = 0;
  double median = 0.0;  // +inf when at least half the replicas timed out
  double q10 = 0.0;
  double q90 = 0.0;
  double mean = 0.0;  // over coalesced replicas
};

struct ExactMixArm {
  std::size_t n = 0;
  double p_star = 0.0;
  double delta = 0.0;
  std::vector<double> tv;
  bool monotone = true;
  std::optional<std::size_t> t_delta;
  double fitted_c = 0.0;  // t_delta / (N log(N / delta))
};

struct MixResult {
  std::vector<MixSize> sizes;
  std::optional<double> slope;
  std::optional<ExactMixArm> exact;
};

/// TV(pi_0 P^t, mu) from pi_0 = G(n, p*) until it drops below delta or
/// max_steps pass.
ExactMixArm exact_mixing_curve(const ModelParams& m, double p_star, double delta, std::size_t max_steps);

MixResult run_mix(const ExperimentConfig& cfg);
std::vector<std::string> write_mix(const MixResult& r, const std::string& dir);

// ---- metastable

/// Edges at vertex 0 ~ Ber(q), all other pairs ~ Ber(p), in linear order.
Graph metastable_initial(std::size_t n, double q, double p, Rng& rng);

struct MetastableRun {
  bool treatment = true;
  std::size_t replica = 0;
  double target = 0.0;
  double max_dev = 0.0;  // max over every step of |p_0(X_t) - target|
  bool persisted = false;
  TrajectoryReport trajectory;
};

struct MetastableResult {
  TergmSolution solution;
  std::uint64_t steps = 0;
  std::vector<MetastableRun> runs;
  double treatment_rate = 0.0;
  double control_rate = 0.0;
};

MetastableResult run_metastable(const ExperimentConfig& cfg);
std::vector<std::string> write_metastable(const MetastableResult& r, const std::string& dir);

// ---- diag

struct DiagResult {
  double p_star = 0.0;
  ConcentrationReport report;
};

DiagResult run_diag(const ExperimentConfig& cfg, const Graph& x);
std::vector<std::string> write_diag(const DiagResult& r, const std::string& dir);

// ---- validate

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationResult {
  std::vector<ValidationCheck> checks;
  std::vector<double> tv_curve;
  bool all_pass() const;
};

ValidationResult run_validation(const ExperimentConfig& cfg);
std::vector<std::string> write_validation(const ValidationResult& r, const std::string& dir);

}  // namespace ergm

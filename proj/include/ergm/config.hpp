#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergm/landscape.hpp"
#include "ergm/model.hpp"

namespace ergm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::vector<double> beta{-0.3, 0.8};
  std::vector<std::string> templates{"triangle"};  // G_1..G_K; the edge is implied
  std::size_t n = 200;

  ModelParams build() const;
};

struct SweepSpec {
  std::size_t index = 1;  // which beta component varies
  double from = 0.0;
  double to = 3.0;
  std::size_t points = 61;
};

struct PhaseConfig {
  std::optional<SweepSpec> sweep;
  LandscapeTolerances tolerances;
};

struct SampleConfig {
  double burn_in_sweeps = 10.0;  // multiples of N = n(n-1)/2 steps
  double thin_sweeps = 2.0;
  std::size_t samples = 100;
  double eps = 0.1;
  double delta = 0.1;
  std::optional<double> p_star;
  std::size_t family_cap = 0;  // 0: one more than the largest template
  bool snapshots = false;
};

struct MixConfig {
  std::vector<std::uint64_t> sizes{8, 16, 32};
  std::size_t replicas = 101;
  std::uint64_t cap = 10'000'000;
  std::size_t exact_n = 5;  // 0 disables the exact arm
  double delta = 1e-4;
  std::size_t exact_max_steps = 20000;
};

struct MetastableConfig {
  std::optional<std::uint64_t> steps;  // default 50 * N
  std::size_t replicas = 20;
  std::optional<std::uint64_t> stride;  // default N / 2
  double eta = 0.05;
  double band = 0.1;
  std::optional<double> q_star;
  std::optional<double> p_star;
  bool control = true;
};

struct DiagConfig {
  std::string snapshot;
  double eps = 0.1;
  double delta = 0.1;
  std::optional<double> p_star;
  std::size_t family_cap = 0;
};

struct ValidateConfig {
  bool negative_control = false;
  std::size_t delta_cases = 1000;
};

struct ExperimentConfig {
  ModelSpec model;
  std::uint64_t seed = 20240601;
  std::string out = "out";
  std::size_t threads = 1;
  PhaseConfig phase;
  SampleConfig sample;
  MixConfig mix;
  MetastableConfig metastable;
  DiagConfig diag;
  ValidateConfig validate;

  /// Throws ConfigError naming the offending field.
  void check() const;
};

/// Parses a JSON document. Unknown keys and wrong types are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON rendering (sorted keys, every field present).
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace ergm

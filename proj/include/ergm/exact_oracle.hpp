#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ergm/dynamics.hpp"
#include "ergm/graph.hpp"
#include "ergm/model.hpp"

namespace ergm {

inline constexpr std::size_t kMaxExactVertices = 6;

/// A law on all graphs with n <= 6 vertices. State s is the graph whose edge
/// with linear index i is present iff bit i of s is set.
struct ExactDistribution {
  std::size_t n = 0;
  std::vector<double> prob;

  std::size_t num_states() const noexcept { return prob.size(); }
};

Graph graph_from_state(std::size_t n, std::uint32_t state);
std::uint32_t state_from_graph(const Graph& x);

/// mu_beta with the normalizer computed by log-sum-exp.
/// Throws std::invalid_argument when n > 6.
ExactDistribution enumerate_measure(const ModelParams& model);

/// Hamiltonian sum_i n^2 beta_i t(G_i, X) for every state.
std::vector<double> enumerate_hamiltonian(const ModelParams& model);

/// Law of G(n, p).
ExactDistribution product_measure(std::size_t n, double p);

ExactDistribution point_mass(std::size_t n, std::uint32_t state);

/// Conditionals of one state may be replaced, e.g. to corrupt them on purpose.
using ConditionalOverride = std::function<double(const Graph& x, EdgeId e, double phi)>;

/// One-step Glauber kernel, applied on the fly. Conditionals are computed once
/// per (state, edge). With a ball, the kernel is the one for mu(. | ball):
/// states outside the ball flip with probability one, moves that leave the
/// ball are rejected.
class ExactKernel {
 public:
  explicit ExactKernel(const ModelParams& model, std::optional<Ball> ball = std::nullopt,
                       const ConditionalOverride& override_phi = {});

  std::size_t n() const noexcept { return n_; }
  std::size_t num_states() const noexcept { return states_; }
  std::size_t num_pairs() const noexcept { return pairs_; }

  /// P(x, x xor edge i).
  double flip_probability(std::uint32_t x, std::size_t i) const;
  /// P(x, x).
  double stay_probability(std::uint32_t x) const;

  bool in_ball(std::uint32_t x) const { return in_ball_.empty() || in_ball_[x]; }

  ExactDistribution apply(const ExactDistribution& dist) const;

 private:
  std::size_t n_;
  std::size_t pairs_;
  std::size_t states_;
  std::vector<double> phi_;  // states x pairs
  std::vector<char> in_ball_;
};

ExactDistribution transition_apply(const ModelParams& model, const ExactDistribution& dist);

/// Half the L1 distance. Throws std::invalid_argument on size mismatch.
double exact_tv(const ExactDistribution& a, const ExactDistribution& b);

/// max over single-flip pairs (x, y) of |mu(x) P(x,y) - mu(y) P(y,x)|.
/// With an override the kernel uses the altered conditionals while mu stays
/// the true measure. Requires n <= 5.
double verify_detailed_balance(const ModelParams& model, const ConditionalOverride& override_phi = {});

/// mu(. | ball).
ExactDistribution condition_on_ball(const ExactDistribution& mu, const Ball& ball);

/// TV(pi_0 P^t, mu) for t = 0..steps.
std::vector<double> tv_curve(const ExactKernel& kernel, const ExactDistribution& start, const ExactDistribution& target,
                             std::size_t steps);

}  // namespace ergm

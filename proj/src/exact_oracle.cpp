#include "ergm/exact_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ergm/cut_distance.hpp"
#include "ergm/subgraph_counts.hpp"

namespace ergm {
namespace {

void check_n(std::size_t n, std::size_t cap) {
  if (n < 2 || n > cap)
    throw std::invalid_argument("exact enumeration supports 2 <= n <= " + std::to_string(cap) + ", got " +
                                std::to_string(n));
}

std::size_t states_for(std::size_t n) { return std::size_t{1} << num_pairs(n); }

}  // namespace

Graph graph_from_state(std::size_t n, std::uint32_t state) {
  Graph g(n);
  while (state) {
    g.flip(edge_from_index(static_cast<std::uint64_t>(std::countr_zero(state))));
    state &= state - 1;
  }
  return g;
}

std::uint32_t state_from_graph(const Graph& x) {
  if (x.num_vertices() > kMaxExactVertices) throw std::invalid_argument("state_from_graph: n too large");
  return static_cast<std::uint32_t>(x.edge_bits()[0]);
}

std::vector<double> enumerate_hamiltonian(const ModelParams& model) {
  model.validate();
  const std::size_t n = model.n;
  check_n(n, kMaxExactVertices);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  std::vector<double> h(states_for(n));
  for (std::size_t s = 0; s < h.size(); ++s) {
    const Graph g = graph_from_state(n, static_cast<std::uint32_t>(s));
    double v = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) v += n2 * model.beta[i] * hom_density(model.templates[i], g);
    h[s] = v;
  }
  return h;
}

ExactDistribution enumerate_measure(const ModelParams& model) {
  const auto h = enumerate_hamiltonian(model);
  const double top = *std::max_element(h.begin(), h.end());
  ExactDistribution d{model.n, std::vector<double>(h.size())};
  double z = 0.0;
  for (std::size_t s = 0; s < h.size(); ++s) z += d.prob[s] = std::exp(h[s] - top);
  for (double& p : d.prob) p /= z;
  return d;
}

ExactDistribution product_measure(std::size_t n, double p) {
  check_n(n, kMaxExactVertices);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("product_measure: p must lie in [0,1]");
  const auto pairs = static_cast<int>(num_pairs(n));
  ExactDistribution d{n, std::vector<double>(states_for(n))};
  for (std::size_t s = 0; s < d.prob.size(); ++s) {
    const int m = std::popcount(static_cast<std::uint32_t>(s));
    d.prob[s] = std::pow(p, m) * std::pow(1.0 - p, pairs - m);
  }
  return d;
}

ExactDistribution point_mass(std::size_t n, std::uint32_t state) {
  check_n(n, kMaxExactVertices);
  ExactDistribution d{n, std::vector<double>(states_for(n), 0.0)};
  if (state >= d.prob.size()) throw std::invalid_argument("point_mass: state out of range");
  d.prob[state] = 1.0;
  return d;
}

ExactKernel::ExactKernel(const ModelParams& model, std::optional<Ball> ball, const ConditionalOverride& override_phi)
    : n_(model.n), pairs_(ergm::num_pairs(model.n)), states_(0) {
  model.validate();
  check_n(n_, kMaxExactVertices);
  states_ = states_for(n_);
  phi_.resize(states_ * pairs_);
  if (ball) in_ball_.resize(states_);
  for (std::size_t s = 0; s < states_; ++s) {
    const Graph g = graph_from_state(n_, static_cast<std::uint32_t>(s));
    if (ball) in_ball_[s] = cut_distance_exact(g, ball->p_star) <= ball->eta;
    for (std::size_t i = 0; i < pairs_; ++i) {
      const EdgeId e = edge_from_index(i);
      double phi = conditional_prob(model, g, e);
      if (override_phi) phi = override_phi(g, e, phi);
      phi_[s * pairs_ + i] = phi;
    }
  }
}

double ExactKernel::flip_probability(std::uint32_t x, std::size_t i) const {
  const std::uint32_t y = x ^ (std::uint32_t{1} << i);
  const double pick = 1.0 / static_cast<double>(pairs_);
  if (!in_ball_.empty()) {
    if (!in_ball_[x]) return pick;
    if (!in_ball_[y]) return 0.0;
  }
  const double phi = phi_[x * pairs_ + i];
  return pick * ((x >> i & 1u) ? 1.0 - phi : phi);
}

double ExactKernel::stay_probability(std::uint32_t x) const {
  double out = 1.0;
  for (std::size_t i = 0; i < pairs_; ++i) out -= flip_probability(x, i);
  return out;
}

ExactDistribution ExactKernel::apply(const ExactDistribution& dist) const {
  if (dist.n != n_ || dist.prob.size() != states_) throw std::invalid_argument("kernel and distribution sizes differ");
  ExactDistribution out{n_, std::vector<double>(states_, 0.0)};
  for (std::size_t x = 0; x < states_; ++x) {
    const double px = dist.prob[x];
    if (px == 0.0) continue;
    double stay = 1.0;
    for (std::size_t i = 0; i < pairs_; ++i) {
      const double f = flip_probability(static_cast<std::uint32_t>(x), i);
      stay -= f;
      out.prob[x ^ (std::size_t{1} << i)] += px * f;
    }
    out.prob[x] += px * stay;
  }
  return out;
}

ExactDistribution transition_apply(const ModelParams& model, const ExactDistribution& dist) {
  return ExactKernel(model).apply(dist);
}

double exact_tv(const ExactDistribution& a, const ExactDistribution& b) {
  if (a.n != b.n || a.prob.size() != b.prob.size()) throw std::invalid_argument("exact_tv: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.prob.size(); ++i) s += std::fabs(a.prob[i] - b.prob[i]);
  return 0.5 * s;
}

double verify_detailed_balance(const ModelParams& model, const ConditionalOverride& override_phi) {
  check_n(model.n, 5);
  const auto mu = enumerate_measure(model);
  const ExactKernel k(model, std::nullopt, override_phi);
  double worst = 0.0;
  for (std::uint32_t x = 0; x < k.num_states(); ++x)
    for (std::size_t i = 0; i < k.num_pairs(); ++i) {
      const std::uint32_t y = x ^ (std::uint32_t{1} << i);
      if (y < x) continue;
      worst = std::max(worst, std::fabs(mu.prob[x] * k.flip_probability(x, i) - mu.prob[y] * k.flip_probability(y, i)));
    }
  return worst;
}

ExactDistribution condition_on_ball(const ExactDistribution& mu, const Ball& ball) {
  ExactDistribution out{mu.n, std::vector<double>(mu.prob.size(), 0.0)};
  double z = 0.0;
  for (std::size_t s = 0; s < mu.prob.size(); ++s) {
    if (cut_distance_exact(graph_from_state(mu.n, static_cast<std::uint32_t>(s)), ball.p_star) <= ball.eta) {
      out.prob[s] = mu.prob[s];
      z += mu.prob[s];
    }
  }
  if (z == 0.0) throw std::invalid_argument("condition_on_ball: the ball carries no mass");
  for (double& p : out.prob) p /= z;
  return out;
}

std::vector<double> tv_curve(const ExactKernel& kernel, const ExactDistribution& start, const ExactDistribution& target,
                             std::size_t steps) {
  std::vector<double> tv;
  tv.reserve(steps + 1);
  ExactDistribution cur = start;
  tv.push_back(exact_tv(cur, target));
  for (std::size_t t = 0; t < steps; ++t) {
    cur = kernel.apply(cur);
    tv.push_back(exact_tv(cur, target));
  }
  return tv;
}

}  // namespace ergm

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/model.hpp"
#include "ergm/rng.hpp"

namespace ergm {

/// Phi_e(X_{~e}) = sigma(sum_i n^2 beta_i Delta_e N_i(X)), from deltas only.
double conditional_prob(const ModelParams& model, const Graph& x, EdgeId e);

/// Whether a chain keeps an n x n table of codegrees up to date.
enum class CodegreePolicy {
  Auto,      // table only for 4-cycle templates (deg codegree queries per step) and n <= 4096
  Matrix,
  OnDemand,  // row AND + popcount per query
};

/// Codegree table updated in O(deg) per edge change.
class CodegreeMatrix {
 public:
  explicit CodegreeMatrix(const Graph& g);
  std::uint32_t at(Vertex u, Vertex v) const noexcept { return data_[static_cast<std::size_t>(u) * n_ + v]; }
  /// Must be called right after `g` flipped e.
  void on_flip(const Graph& g, EdgeId e) noexcept;

 private:
  std::size_t n_;
  std::vector<std::uint16_t> data_;
};

/// Cut-metric ball {X : delta_box(X, p* 1) <= eta}.
struct Ball {
  double p_star = 0.5;
  double eta = 1.0;
};

/// Largest n for which ball membership is decided exactly.
inline constexpr std::size_t kMaxExactCutVertices = 22;

/// A Glauber chain: current graph plus the caches needed to evaluate
/// conditionals quickly. Single owner; randomness is passed in per step.
class Chain {
 public:
  Chain(std::shared_ptr<const ModelParams> model, Graph initial, CodegreePolicy policy = CodegreePolicy::Auto);

  const Graph& graph() const noexcept { return graph_; }
  const ModelParams& model() const noexcept { return *model_; }
  std::shared_ptr<const ModelParams> model_ptr() const noexcept { return model_; }
  std::uint64_t steps() const noexcept { return steps_; }
  bool uses_codegree_matrix() const noexcept { return codegrees_.has_value(); }

  /// sum_i n^2 beta_i Delta_e N_i(X).
  double logit(EdgeId e) const;
  double conditional(EdgeId e) const;

  void set_edge(EdgeId e, bool present);

  /// One Glauber update. Draws the edge, then one uniform U; the bit is set
  /// iff U < phi_e.
  void step(Rng& rng);

  /// One update of the Glauber dynamics for mu(. | ball), with the same draws
  /// as step(). Requires n <= kMaxExactCutVertices.
  void restricted_step(Rng& rng, const Ball& ball);

  /// Counts a step taken by a coupling that updated this chain directly.
  void count_step() noexcept { ++steps_; }

  /// Recomputes degrees and codegrees from scratch and compares with the
  /// caches. Debug aid.
  bool caches_consistent() const;

 private:
  struct Term {
    TemplateKind kind;
    double scale;  // beta_i * n^{2-k}
    std::size_t index;
  };

  std::uint32_t codegree(Vertex u, Vertex v) const noexcept {
    return codegrees_ ? codegrees_->at(u, v) : graph_.codegree(u, v);
  }

  std::shared_ptr<const ModelParams> model_;
  Graph graph_;
  std::optional<CodegreeMatrix> codegrees_;
  std::vector<Term> terms_;
  std::uint64_t steps_ = 0;
  std::optional<bool> in_ball_;
};

void glauber_step(Chain& chain, Rng& rng);
void restricted_glauber_step(Chain& chain, const Ball& ball, Rng& rng);

/// Two chains driven by a shared edge and a shared uniform.
struct CoupledPair {
  Chain lower;
  Chain upper;
  bool ordered = false;
  std::uint64_t distance = 0;          // Hamming distance, maintained incrementally
  std::uint64_t order_violations = 0;  // steps after which lower ⪯ upper failed at the updated edge

  CoupledPair(Chain lo, Chain hi);
};

void monotone_pair_step(CoupledPair& pair, Rng& rng);

/// Steps of the monotone coupling from (empty, complete) until the two graphs
/// agree; nullopt when `cap` steps pass first.
std::optional<std::uint64_t> coalescence_time(std::shared_ptr<const ModelParams> model, Rng& rng, std::uint64_t cap,
                                              CodegreePolicy policy = CodegreePolicy::Auto);

struct SandwichSample {
  Graph under;
  Graph x;
  Graph over;
  bool ok = false;
  bool start_in_ball = false;  // spectral upper bound of the start graph <= eta
  double min_conditional = 1.0;
  double max_conditional = 0.0;
};

/// One sweep over all pairs in linear order with a shared uniform per pair:
/// the model chain resamples from its conditional, `under` and `over` use the
/// thresholds p* - eps and p* + eps. `ok` records that every conditional met
/// along the sweep stayed in [p* - eps, p* + eps]; then under ⪯ x ⪯ over.
/// The starting graph comes from `burn_in` Glauber steps from G(n, p*), a
/// stand-in for a draw from mu(. | B(p*, eta)).
SandwichSample sandwich_sample(std::shared_ptr<const ModelParams> model, double p_star, double eps, double eta,
                               std::uint64_t burn_in, Rng& rng);

/// Diagnostic evaluated on read-only views of the chain.
struct Observer {
  std::string name;
  std::vector<std::string> columns;
  std::function<std::vector<double>(const Graph&)> observe;
};

struct TrajectoryReport {
  std::vector<std::string> columns;
  std::vector<std::uint64_t> steps;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& os) const;
};

using StepHook = std::function<void(const Graph&, std::uint64_t)>;

/// Runs T Glauber steps, observing at t = 0, stride, 2 stride, ... <= T.
/// `each_step`, when set, sees the graph after every step (and at t = 0).
TrajectoryReport run_chain(Chain& chain, std::uint64_t steps, Rng& rng, const std::vector<Observer>& observers,
                           std::uint64_t stride, const StepHook& each_step = {});

}  // namespace ergm

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ergm/templates.hpp"

namespace ergm {

/// Parameters of the Gibbs measure mu(X) ∝ exp(sum_i n^2 beta_i N_{G_i}(X)).
///
/// Index 0 is always the single edge; templates[i] pairs with beta[i].
struct ModelParams {
  std::vector<double> beta;
  std::vector<TemplateGraph> templates;
  std::size_t n = 0;

  /// Builds a model from beta = (beta_0, ..., beta_K) and the K non-edge
  /// templates G_1..G_K. Validates beta_i >= 0 for i >= 1.
  static ModelParams make(std::vector<double> beta, std::vector<TemplateGraph> extra, std::size_t n);

  /// Edge plus triangle, the two-parameter model used throughout the examples.
  static ModelParams edge_triangle(double beta0, double beta1, std::size_t n);

  std::size_t size() const noexcept { return beta.size(); }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  std::string describe() const;
};

}  // namespace ergm

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergm/model.hpp"

namespace ergm {

/// Numerical thresholds for the landscape analysis.
struct LandscapeTolerances {
  std::size_t grid_size = 4096;
  double root_tol = 1e-12;
  double margin = 1e-9;           // scan stays inside (margin, 1 - margin)
  double degenerate = 1e-6;       // |L''| below this is a vanishing second derivative
  double global_value = 1e-9;     // L within this of the supremum counts as global
  double match = 1e-8;            // maxima <-> fixed point matching
};

struct LocalMaximum {
  double p = 0.0;
  double value = 0.0;
  double second_derivative = 0.0;
  bool is_global = false;
  bool is_degenerate = false;
};

struct FixedPoint {
  double p = 0.0;
  double slope = 0.0;  // phi'_beta(p)
  bool stable = false;
};

enum class Regime { High, Low, Critical };

std::string to_string(Regime r);

struct LandscapeReport {
  std::vector<LocalMaximum> maxima;
  /// L' keeps its sign up to the scan margin: the supremum sits at an endpoint.
  bool boundary_max_low = false;
  bool boundary_max_high = false;
  Regime regime = Regime::High;
  std::vector<FixedPoint> fixed_points;
};

/// I(p) = (p log p + (1-p) log(1-p)) / 2 with I(0) = I(1) = 0.
double entropy_term(double p);

/// L_beta(p) = sum_i beta_i p^{|E_i|} - I(p) and its first two derivatives.
double landscape_value(const ModelParams& m, double p);
double landscape_derivative(const ModelParams& m, double p);
double landscape_second_derivative(const ModelParams& m, double p);

/// phi_beta(p) = sigma(sum_i 2 beta_i |E_i| p^{|E_i|-1}) and its derivative.
double phi_beta(const ModelParams& m, double p);
double phi_beta_derivative(const ModelParams& m, double p);

/// Logistic function computed through exp(-|x|).
double logistic(double x);

std::vector<LocalMaximum> find_local_maxima(const ModelParams& m, const LandscapeTolerances& tol = {},
                                            bool* boundary_low = nullptr, bool* boundary_high = nullptr);

std::vector<FixedPoint> find_phi_fixed_points(const ModelParams& m, const LandscapeTolerances& tol = {});

Regime classify_regime(const std::vector<LocalMaximum>& maxima, double tol_degenerate,
                       std::size_t boundary_maxima = 0);

/// Maxima, regime and fixed points in one report.
LandscapeReport analyze_landscape(const ModelParams& m, const LandscapeTolerances& tol = {});

/// Global maximizers of L_beta with nonvanishing second derivative.
std::vector<double> global_maximizers(const LandscapeReport& report);

/// Result of the edge-triangle metastability construction.
struct TergmSolution {
  double p1 = 0.0;        // global maximizer of L_beta
  double p2 = 0.0;        // the other local maximizer
  double q = 0.0;         // stable fixed point of g(x) = sigma(2b0 + 6b1 x p1)
  double f_slope_p1 = 0.0;  // f'(p1), f(x) = sigma(2b0 + 6b1 x^2)
  double g_slope_q = 0.0;   // g'(q)
};

class ExampleConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves for (p1*, p2*, q*) and checks the three conditions of the
/// construction; throws ExampleConditionError naming the failed condition.
TergmSolution solve_example_tergm(double beta0, double beta1, const LandscapeTolerances& tol = {});

}  // namespace ergm

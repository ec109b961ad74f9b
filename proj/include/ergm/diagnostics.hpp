#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ergm/cut_distance.hpp"
#include "ergm/graph.hpp"
#include "ergm/model.hpp"
#include "ergm/templates.hpp"

namespace ergm {

/// p_u(X) = deg(u) / n.
double normalized_degree(const Graph& x, Vertex u);

/// p_uv(X) = codeg(u, v) / n. Throws std::invalid_argument when u == v.
double normalized_wedge(const Graph& x, Vertex u, Vertex v);

struct RExtrema {
  double min = 0.0;
  double max = 0.0;
};

/// Extremes of r_G(X, e) over all pairs e and all G in the family.
/// Throws std::invalid_argument for an empty family or a single-edge member.
RExtrema r_extrema(const Graph& x, const TemplateFamily& family);

/// X in Gamma_{p*}^eps: every r_G(X, e) lies in [p* - eps, p* + eps].
/// Stops at the first value outside the band.
bool gamma_member(const Graph& x, double p_star, double eps, const TemplateFamily& family);

/// Vertices whose normalized degree is further than 2 d_hat / delta from p.
/// Whenever d_hat >= delta_box(X, p 1) the set has at most delta n elements.
std::vector<Vertex> degree_exception_set(const Graph& x, double p, double delta, double d_hat);

/// All conditionals phi_e(X_{~e}) as a dense symmetric n x n table, zero on
/// the diagonal.
std::vector<double> conditional_matrix(const ModelParams& model, const Graph& x);

/// g_uv(X) = p_uv(X) - (1/2n) sum_w (phi_uw X_vw + phi_vw X_uw), w ranging
/// over vertices other than u and v.
double g_uv_statistic(const ModelParams& model, const Graph& x, Vertex u, Vertex v);

/// max over u < v of |g_uv(X)|, using one conditional table for all pairs.
double max_abs_g(const ModelParams& model, const Graph& x);

struct CavityStatistics {
  double r_bar_min = 0.0;
  double r_bar_max = 0.0;
  double p1_min = 0.0;
  double p1_max = 0.0;
};

/// Statistics of the distinguished vertex 0 against the rest of the graph.
/// r-bar: p_u over u != 0 and r_G(X, e) over pairs avoiding 0, G in family.
/// p^(1): p_0 and p_{0u} / p1_star over u != 0.
CavityStatistics cavity_statistics(const Graph& x, const TemplateFamily& family, double p1_star);

struct WedgeSummary {
  double max_dev = 0.0;  // max over pairs of p_uv - p*^2
  double min_dev = 0.0;  // min over pairs of p_uv - p*^2
  double sup_abs = 0.0;
};

WedgeSummary wedge_summary(const Graph& x, double p_star);

/// sup_u |p_u - p|.
double max_degree_deviation(const Graph& x, double p);

struct ConcentrationReport {
  std::vector<double> p_u;
  WedgeSummary wedge;
  std::size_t exception_set_size = 0;
  RExtrema r;
  bool gamma_member = false;
  std::optional<double> cut_exact;
  CutBounds cut_bounds;
  CavityStatistics cavity;
  double max_abs_g = 0.0;
};

struct ConcentrationOptions {
  double p_star = 0.5;
  double eps = 0.1;
  double delta = 0.1;             // exception-set parameter
  bool with_g = true;             // needs the model; O(n^3)
  bool with_cut_bounds = true;
  std::optional<double> p1_star;  // cavity reference; defaults to p_star
};

ConcentrationReport concentration_report(const ModelParams& model, const Graph& x, const TemplateFamily& family,
                                         const ConcentrationOptions& opts);

}  // namespace ergm

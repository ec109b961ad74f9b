#include "ergm/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ergm/dynamics.hpp"
#include "ergm/subgraph_counts.hpp"

namespace ergm {
namespace {

void check_family(const TemplateFamily& family) {
  if (family.members.empty()) throw std::invalid_argument("template family is empty");
  for (const auto& h : family.members)
    if (h.num_edges() < 2) throw std::invalid_argument("template family member '" + h.name() + "' has fewer than 2 edges");
}

template <class Visit>
void for_each_neighbor(const Graph& x, Vertex u, Visit&& visit) {
  const auto r = x.row(u);
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::uint64_t w = r[k];
    while (w) {
      visit(static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
}

}  // namespace

double normalized_degree(const Graph& x, Vertex u) {
  if (u >= x.num_vertices()) throw std::invalid_argument("normalized_degree: vertex out of range");
  return static_cast<double>(x.degree(u)) / static_cast<double>(x.num_vertices());
}

double normalized_wedge(const Graph& x, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("normalized_wedge: u == v");
  if (u >= x.num_vertices() || v >= x.num_vertices()) throw std::invalid_argument("normalized_wedge: vertex out of range");
  return static_cast<double>(x.codegree(u, v)) / static_cast<double>(x.num_vertices());
}

RExtrema r_extrema(const Graph& x, const TemplateFamily& family) {
  check_family(family);
  RExtrema out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  const std::uint64_t pairs = x.num_pairs();
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const EdgeId e = edge_from_index(i);
    for (const auto& h : family.members) {
      const double r = r_value(h, x, e);
      out.min = std::min(out.min, r);
      out.max = std::max(out.max, r);
    }
  }
  return out;
}

bool gamma_member(const Graph& x, double p_star, double eps, const TemplateFamily& family) {
  check_family(family);
  const std::uint64_t pairs = x.num_pairs();
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const EdgeId e = edge_from_index(i);
    for (const auto& h : family.members) {
      const double r = r_value(h, x, e);
      if (r < p_star - eps || r > p_star + eps) return false;
    }
  }
  return true;
}

std::vector<Vertex> degree_exception_set(const Graph& x, double p, double delta, double d_hat) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("degree_exception_set: delta must lie in (0,1]");
  const double threshold = 2.0 * d_hat / delta;
  std::vector<Vertex> s;
  for (Vertex u = 0; u < x.num_vertices(); ++u)
    if (std::fabs(normalized_degree(x, u) - p) > threshold) s.push_back(u);
  return s;
}

std::vector<double> conditional_matrix(const ModelParams& model, const Graph& x) {
  const std::size_t n = x.num_vertices();
  std::vector<double> phi(n * n, 0.0);
  for (std::uint64_t i = 0; i < x.num_pairs(); ++i) {
    const EdgeId e = edge_from_index(i);
    const double c = conditional_prob(model, x, e);
    phi[e.u * n + e.v] = c;
    phi[e.v * n + e.u] = c;
  }
  return phi;
}

namespace {

double g_from_table(const Graph& x, const std::vector<double>& phi, Vertex u, Vertex v) {
  const std::size_t n = x.num_vertices();
  // X_vw nonzero only for w in N(v); the diagonal of phi is zero, which drops w = u.
  double s = 0.0;
  for_each_neighbor(x, v, [&](Vertex w) { s += phi[u * n + w]; });
  for_each_neighbor(x, u, [&](Vertex w) { s += phi[v * n + w]; });
  return normalized_wedge(x, u, v) - s / (2.0 * static_cast<double>(n));
}

}  // namespace

double g_uv_statistic(const ModelParams& model, const Graph& x, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("g_uv_statistic: u == v");
  const std::size_t n = x.num_vertices();
  double s = 0.0;
  for (Vertex w = 0; w < n; ++w) {
    if (w == u || w == v) continue;
    if (x.has_edge(v, w)) s += conditional_prob(model, x, make_edge(u, w));
    if (x.has_edge(u, w)) s += conditional_prob(model, x, make_edge(v, w));
  }
  return normalized_wedge(x, u, v) - s / (2.0 * static_cast<double>(n));
}

double max_abs_g(const ModelParams& model, const Graph& x) {
  const auto phi = conditional_matrix(model, x);
  double best = 0.0;
  for (Vertex v = 1; v < x.num_vertices(); ++v)
    for (Vertex u = 0; u < v; ++u) best = std::max(best, std::fabs(g_from_table(x, phi, u, v)));
  return best;
}

CavityStatistics cavity_statistics(const Graph& x, const TemplateFamily& family, double p1_star) {
  check_family(family);
  const std::size_t n = x.num_vertices();
  if (n < 3) throw std::invalid_argument("cavity_statistics needs n >= 3");
  if (!(p1_star > 0.0)) throw std::invalid_argument("cavity_statistics: p1_star must be positive");
  CavityStatistics c;
  c.r_bar_min = std::numeric_limits<double>::infinity();
  c.r_bar_max = -std::numeric_limits<double>::infinity();
  for (Vertex u = 1; u < n; ++u) {
    const double pu = normalized_degree(x, u);
    c.r_bar_min = std::min(c.r_bar_min, pu);
    c.r_bar_max = std::max(c.r_bar_max, pu);
  }
  for (Vertex v = 2; v < n; ++v)
    for (Vertex u = 1; u < v; ++u)
      for (const auto& h : family.members) {
        const double r = r_value(h, x, EdgeId{u, v});
        c.r_bar_min = std::min(c.r_bar_min, r);
        c.r_bar_max = std::max(c.r_bar_max, r);
      }
  c.p1_min = c.p1_max = normalized_degree(x, 0);
  for (Vertex u = 1; u < n; ++u) {
    const double w = normalized_wedge(x, 0, u) / p1_star;
    c.p1_min = std::min(c.p1_min, w);
    c.p1_max = std::max(c.p1_max, w);
  }
  return c;
}

WedgeSummary wedge_summary(const Graph& x, double p_star) {
  WedgeSummary w{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0};
  const double target = p_star * p_star;
  for (Vertex v = 1; v < x.num_vertices(); ++v)
    for (Vertex u = 0; u < v; ++u) {
      const double d = normalized_wedge(x, u, v) - target;
      w.max_dev = std::max(w.max_dev, d);
      w.min_dev = std::min(w.min_dev, d);
    }
  w.sup_abs = std::max(std::fabs(w.max_dev), std::fabs(w.min_dev));
  return w;
}

double max_degree_deviation(const Graph& x, double p) {
  double best = 0.0;
  for (Vertex u = 0; u < x.num_vertices(); ++u) best = std::max(best, std::fabs(normalized_degree(x, u) - p));
  return best;
}

ConcentrationReport concentration_report(const ModelParams& model, const Graph& x, const TemplateFamily& family,
                                         const ConcentrationOptions& opts) {
  ConcentrationReport rep;
  const std::size_t n = x.num_vertices();
  rep.p_u.resize(n);
  for (Vertex u = 0; u < n; ++u) rep.p_u[u] = normalized_degree(x, u);
  rep.wedge = wedge_summary(x, opts.p_star);
  rep.r = r_extrema(x, family);
  rep.gamma_member = rep.r.min >= opts.p_star - opts.eps && rep.r.max <= opts.p_star + opts.eps;
  if (n <= kExactCutMaxVertices) {
    rep.cut_exact = cut_distance_exact(x, opts.p_star);
    rep.cut_bounds = {*rep.cut_exact, *rep.cut_exact};
  } else if (opts.with_cut_bounds) {
    rep.cut_bounds = cut_distance_bounds(x, opts.p_star);
  }
  const double d_hat = rep.cut_exact ? *rep.cut_exact : rep.cut_bounds.upper;
  if (rep.cut_exact || opts.with_cut_bounds)
    rep.exception_set_size = degree_exception_set(x, opts.p_star, opts.delta, d_hat).size();
  rep.cavity = cavity_statistics(x, family, opts.p1_star.value_or(opts.p_star));
  if (opts.with_g) rep.max_abs_g = max_abs_g(model, x);
  return rep;
}

}  // namespace ergm

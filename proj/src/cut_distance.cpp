#include "ergm/cut_distance.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ergm {
namespace {

// Every candidate (S, T) is scored by one expression so that the fast and the
// naive enumerations produce bit-identical doubles: integer edge count a over
// S x T, integer cell count s*t, value |a - p*(s t)| / n^2.
inline double score(std::int64_t a, std::int64_t st, double p, double n2) {
  return std::fabs(static_cast<double>(a) - p * static_cast<double>(st)) / n2;
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("cut distance: p must lie in [0,1]");
}

// Best T for a row set described by integer column counts a_v and size s.
double best_columns(const std::vector<std::int64_t>& col, std::int64_t s, const std::vector<char>& active,
                    double p, double n2, std::vector<char>* chosen = nullptr) {
  const double ps = p * static_cast<double>(s);
  std::int64_t a_pos = 0, t_pos = 0, a_neg = 0, t_neg = 0;
  for (std::size_t v = 0; v < col.size(); ++v) {
    if (!active[v]) continue;
    const double d = static_cast<double>(col[v]) - ps;
    if (d > 0) {
      a_pos += col[v];
      ++t_pos;
    } else if (d < 0) {
      a_neg += col[v];
      ++t_neg;
    }
  }
  const double vp = score(a_pos, s * t_pos, p, n2);
  const double vn = score(a_neg, s * t_neg, p, n2);
  if (chosen) {
    const bool pos = vp >= vn;
    chosen->assign(col.size(), 0);
    for (std::size_t v = 0; v < col.size(); ++v) {
      if (!active[v]) continue;
      const double d = static_cast<double>(col[v]) - ps;
      (*chosen)[v] = pos ? d > 0 : d < 0;
    }
  }
  return std::max(vp, vn);
}

double exact_masked(const Graph& x, const std::vector<char>& active, double p) {
  const std::size_t n = x.num_vertices();
  if (n > kExactCutMaxVertices)
    throw std::invalid_argument("exact cut distance needs n <= " + std::to_string(kExactCutMaxVertices) +
                                ", got " + std::to_string(n));
  check_p(p);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  std::vector<std::int64_t> col(n, 0);
  std::vector<char> in_s(n, 0);
  std::int64_t s = 0;
  double best = 0.0;  // S empty scores 0
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto u = static_cast<Vertex>(std::countr_zero(i));
    if (!active[u]) {
      in_s[u] ^= 1;
      continue;  // inactive rows contribute nothing
    }
    const int sign = in_s[u] ? -1 : 1;
    in_s[u] ^= 1;
    s += sign;
    const auto r = x.row(u);
    for (std::size_t v = 0; v < n; ++v)
      if ((r[v >> 6] >> (v & 63)) & 1u) col[v] += sign;
    best = std::max(best, best_columns(col, s, active, p, n2));
  }
  return best;
}

Eigen::MatrixXd centered(const Graph& x, const std::vector<char>& active, double p) {
  const std::size_t n = x.num_vertices();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t u = 0; u < n; ++u) {
    if (!active[u]) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (!active[v]) continue;
      m(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) =
          (x.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)) ? 1.0 : 0.0) - p;
    }
  }
  return m;
}

double spectral_masked(const Graph& x, const std::vector<char>& active, double p) {
  check_p(p);
  const std::size_t n = x.num_vertices();
  const Eigen::MatrixXd m = centered(x, active, p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double norm = std::max(std::fabs(ev.minCoeff()), std::fabs(ev.maxCoeff()));
  // The solver is backward stable; pad by a multiple of its error scale so the
  // bound stays an upper bound when it is tight (e.g. the empty graph).
  const double pad = 1e-12 * (m.norm() + 1.0);
  return (norm + pad) / static_cast<double>(n);
}

// Alternating maximization. Each round fixes S, takes the best T, then the
// best S for that T (same rule by symmetry). The reported value is always
// best_columns() at the final S, i.e. a value the exact search also scores.
double greedy_masked(const Graph& x, const std::vector<char>& active, double p, const CutBoundOptions& opts) {
  check_p(p);
  const std::size_t n = x.num_vertices();
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  Rng rng(opts.seed, 0);
  double best = 0.0;
  std::vector<std::int64_t> col(n);
  std::vector<char> s_set(n), t_set(n);
  auto columns_of = [&](const std::vector<char>& rows_in, std::int64_t& size) {
    std::fill(col.begin(), col.end(), 0);
    size = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (!rows_in[u] || !active[u]) continue;
      ++size;
      for (std::size_t v = 0; v < n; ++v)
        if (x.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) ++col[v];
    }
  };
  for (std::size_t r = 0; r < std::max<std::size_t>(opts.restarts, 1); ++r) {
    for (std::size_t u = 0; u < n; ++u) s_set[u] = static_cast<char>(rng.next_u32() & 1u);
    double last = -1.0;
    for (std::size_t round = 0; round < opts.max_rounds; ++round) {
      std::int64_t s = 0;
      columns_of(s_set, s);
      const double val = best_columns(col, s, active, p, n2, &t_set);
      best = std::max(best, val);
      if (val <= last) break;
      last = val;
      std::int64_t t = 0;
      columns_of(t_set, t);  // A symmetric: row sums over T
      best_columns(col, t, active, p, n2, &s_set);
    }
  }
  return best;
}

std::vector<char> mask_from(std::size_t n, const std::vector<Vertex>& s) {
  std::vector<char> active(n, 1);
  for (Vertex u : s) {
    if (u >= n) throw std::invalid_argument("restricted cut distance: vertex out of range");
    active[u] = 0;
  }
  return active;
}

}  // namespace

double cut_distance_exact(const Graph& x, double p) {
  return exact_masked(x, std::vector<char>(x.num_vertices(), 1), p);
}

double cut_distance_naive(const Graph& x, double p) {
  const std::size_t n = x.num_vertices();
  if (n > 10) throw std::invalid_argument("naive cut distance is limited to n <= 10");
  check_p(p);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint64_t> rows(n);
  for (std::size_t u = 0; u < n; ++u) rows[u] = x.row(static_cast<Vertex>(u))[0];
  double best = 0.0;
  for (std::uint64_t s = 0; s < total; ++s) {
    const auto ss = static_cast<std::int64_t>(std::popcount(s));
    for (std::uint64_t t = 0; t < total; ++t) {
      std::int64_t a = 0;
      for (std::size_t u = 0; u < n; ++u)
        if ((s >> u) & 1u) a += std::popcount(rows[u] & t);
      best = std::max(best, score(a, ss * std::popcount(t), p, n2));
    }
  }
  return best;
}

CutBounds cut_distance_bounds(const Graph& x, double p, const CutBoundOptions& opts) {
  const std::vector<char> active(x.num_vertices(), 1);
  return {greedy_masked(x, active, p, opts), spectral_masked(x, active, p)};
}

double cut_distance_spectral_upper(const Graph& x, double p) {
  return spectral_masked(x, std::vector<char>(x.num_vertices(), 1), p);
}

double cut_distance_masked_upper(const Graph& x, double p, std::size_t max_mask) {
  const std::size_t n = x.num_vertices();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  const double dn = static_cast<double>(n);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return std::fabs(x.degree(a) / dn - p) > std::fabs(x.degree(b) / dn - p);
  });
  std::vector<char> active(n, 1);
  double best = spectral_masked(x, active, p);
  for (std::size_t k = 1; k <= std::min(max_mask, n); ++k) {
    active[order[k - 1]] = 0;
    const double kk = static_cast<double>(k);
    best = std::min(best, spectral_masked(x, active, p) + kk * (2.0 * dn - kk) / (dn * dn));
  }
  return best;
}

double restricted_cut_distance(const Graph& x, const std::vector<Vertex>& s, double p) {
  return exact_masked(x, mask_from(x.num_vertices(), s), p);
}

CutBounds restricted_cut_distance_bounds(const Graph& x, const std::vector<Vertex>& s, double p,
                                         const CutBoundOptions& opts) {
  const auto active = mask_from(x.num_vertices(), s);
  return {greedy_masked(x, active, p, opts), spectral_masked(x, active, p)};
}

}  // namespace ergm

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/rng.hpp"

namespace ergm {

/// Largest n handled by exact subset enumeration.
inline constexpr std::size_t kExactCutMaxVertices = 22;

/// delta_box(X, p 1) where X is read as a step graphon on n equal cells,
/// diagonal cells included (value 0 there). Enumerates all 2^n row sets S with
/// a Gray code; for fixed S the best column set is a union of cells, chosen by
/// the sign of the column sums. Throws std::invalid_argument for n > 22.
double cut_distance_exact(const Graph& x, double p);

/// Same quantity by brute force over all (S, T) pairs. Test oracle, n <= 10.
double cut_distance_naive(const Graph& x, double p);

struct CutBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct CutBoundOptions {
  std::size_t restarts = 32;
  std::size_t max_rounds = 64;
  std::uint64_t seed = 0x5eed;
};

/// lower: best of alternating S/T maximizations from random starts.
/// upper: ||A - pJ||_2 / n (J all ones, diagonal included). For unit
/// vectors the bilinear form bounds |1_S^T M 1_T| by ||M|| sqrt(|S||T|) <= ||M|| n.
CutBounds cut_distance_bounds(const Graph& x, double p, const CutBoundOptions& opts = {});

/// Spectral upper bound alone.
double cut_distance_spectral_upper(const Graph& x, double p);

/// Spectral bound improved by masking: for each prefix of the vertices sorted
/// by |p_u - p| the masked kernel costs at most |S|(2n - |S|)/n^2 extra.
double cut_distance_masked_upper(const Graph& x, double p, std::size_t max_mask);

/// Restricted cut metric: rows and columns of S replaced by p, then compared
/// with p 1. Exact (n <= 22).
double restricted_cut_distance(const Graph& x, const std::vector<Vertex>& s, double p);

/// Bounds for the restricted metric at any n.
CutBounds restricted_cut_distance_bounds(const Graph& x, const std::vector<Vertex>& s, double p,
                                         const CutBoundOptions& opts = {});

}  // namespace ergm

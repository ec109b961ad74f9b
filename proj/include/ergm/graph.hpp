#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergm/rng.hpp"

namespace ergm {

using Vertex = std::uint32_t;

/// Largest vertex count the snapshot format can carry.
inline constexpr std::size_t kMaxVertices = std::size_t{1} << 16;

/// Unordered vertex pair with u < v.
struct EdgeId {
  Vertex u = 0;
  Vertex v = 1;

  friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

/// Canonical edge order: e(u,v) = v(v-1)/2 + u for u < v.
constexpr std::uint64_t edge_index(EdgeId e) noexcept {
  return static_cast<std::uint64_t>(e.v) * (e.v - 1) / 2 + e.u;
}

EdgeId edge_from_index(std::uint64_t index) noexcept;

/// Orders the endpoints; throws std::invalid_argument when u == v.
EdgeId make_edge(Vertex a, Vertex b);

constexpr std::uint64_t num_pairs(std::size_t n) noexcept {
  return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

/// Dense simple graph on vertices 0..n-1.
///
/// The adjacency is stored twice: as n bit rows, so that codegrees are a
/// word-wise AND plus popcount, and as a triangular bit array indexed by
/// edge_index(), which is the snapshot payload. Both are kept in sync by every
/// mutation, together with the degree vector and the edge count.
class Graph {
 public:
  explicit Graph(std::size_t n);

  std::size_t num_vertices() const noexcept { return n_; }
  std::uint64_t num_pairs() const noexcept { return ergm::num_pairs(n_); }
  std::uint64_t num_edges() const noexcept { return m_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool has_edge(Vertex u, Vertex v) const noexcept {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  bool has_edge(EdgeId e) const noexcept { return has_edge(e.u, e.v); }

  void set_edge(EdgeId e, bool present) noexcept {
    if (has_edge(e) != present) flip(e);
  }
  void flip(EdgeId e) noexcept;

  std::uint32_t degree(Vertex u) const noexcept { return degrees_[u]; }
  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }

  std::span<const std::uint64_t> row(Vertex u) const noexcept {
    return {rows_.data() + u * words_, words_};
  }

  std::uint32_t codegree(Vertex u, Vertex v) const noexcept {
    const std::uint64_t* a = rows_.data() + u * words_;
    const std::uint64_t* b = rows_.data() + v * words_;
    std::uint32_t c = 0;
    for (std::size_t k = 0; k < words_; ++k) c += std::popcount(a[k] & b[k]);
    return c;
  }

  /// Triangular edge bits, bit i = edge with linear index i.
  std::span<const std::uint64_t> edge_bits() const noexcept { return tri_; }

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.tri_ == b.tri_;
  }

  static Graph complete(std::size_t n);

 private:
  std::size_t n_;
  std::size_t words_;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> tri_;
  std::vector<std::uint32_t> degrees_;
};

inline Graph new_empty(std::size_t n) { return Graph(n); }

/// Each pair present independently with probability p. Pairs are drawn in
/// linear edge order, one uniform per pair.
Graph sample_gnp(std::size_t n, double p, Rng& rng);

/// True iff every edge of x is an edge of y (x ⪯ y).
bool dominates(const Graph& x, const Graph& y);

std::uint64_t hamming_distance(const Graph& a, const Graph& b);

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "ERGX", version byte 1, n as u32 little-endian, then ceil(N/8) payload
/// bytes with bit i (LSB first within each byte) = edge i; padding bits zero.
std::vector<std::uint8_t> snapshot_write(const Graph& x);
Graph snapshot_read(std::span<const std::uint8_t> bytes);

void snapshot_save(const Graph& x, const std::string& path);
Graph snapshot_load(const std::string& path);

}  // namespace ergm

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ergm {

/// Templates are capped at eight vertices.
inline constexpr std::size_t kMaxTemplateVertices = 8;

enum class TemplateKind { Edge, Star, Triangle, Cycle4, General };

/// Small fixed simple graph on vertices 0..k-1.
class TemplateGraph {
 public:
  using Edge = std::pair<int, int>;

  /// Validates the edge list: endpoints in range, no loops, no repeats.
  TemplateGraph(std::size_t k, std::vector<Edge> edges, std::string name = {});

  static TemplateGraph edge();
  static TemplateGraph two_star() { return star(2); }
  /// Star with `leaves` leaves (leaves + 1 vertices).
  static TemplateGraph star(std::size_t leaves);
  static TemplateGraph triangle();
  static TemplateGraph cycle(std::size_t k);

  /// "edge", "two_star", "k_star:K", "triangle" or "cycle:K".
  static TemplateGraph parse(const std::string& spec);

  std::size_t num_vertices() const noexcept { return k_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  bool adjacent(int i, int j) const noexcept { return (adj_[i] >> j) & 1u; }
  std::uint32_t neighbor_mask(int i) const noexcept { return adj_[i]; }

  /// d_ij for the edge at position `edge`: common neighbours of its endpoints.
  int common_neighbors(std::size_t edge) const noexcept { return dij_[edge]; }

  TemplateKind kind() const noexcept { return kind_; }
  /// Leaf count when kind() == Star.
  std::size_t star_leaves() const noexcept { return k_ - 1; }
  const std::string& name() const noexcept { return name_; }
  bool connected() const noexcept;

  /// Minimum adjacency code over all vertex relabelings, tagged with the
  /// vertex count in the top bits. At most 11 vertices.
  std::uint64_t canonical_code() const;

  friend bool operator==(const TemplateGraph& a, const TemplateGraph& b) noexcept {
    return a.k_ == b.k_ && a.adj_ == b.adj_;
  }

 private:
  std::size_t k_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::vector<std::uint32_t> adj_;
  std::vector<int> dij_;
  TemplateKind kind_;
  std::string name_;
};

/// A template family with its vertex cap L.
struct TemplateFamily {
  std::vector<TemplateGraph> members;
  std::size_t cap = 0;
};

/// All connected simple graphs on at most `cap` vertices with at least two
/// edges, one representative per isomorphism class.
TemplateFamily connected_family(std::size_t cap);

/// connected_family(max_i |V(G_i)| + 1).
TemplateFamily default_family(const std::vector<TemplateGraph>& templates);

}  // namespace ergm

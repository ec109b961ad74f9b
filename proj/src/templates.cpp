#include "ergm/templates.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ergm {

namespace {

std::uint64_t adjacency_code(const std::vector<std::uint32_t>& adj, const std::vector<int>& perm) {
  const std::size_t k = adj.size();
  std::uint64_t code = 0;
  int bit = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j, ++bit)
      if ((adj[perm[i]] >> perm[j]) & 1u) code |= std::uint64_t{1} << bit;
  return code;
}

std::size_t parse_size(const std::string& text, const std::string& spec) {
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) throw std::invalid_argument("template '" + spec + "': bad size");
  return value;
}

}  // namespace

TemplateGraph::TemplateGraph(std::size_t k, std::vector<Edge> edges, std::string name)
    : k_(k), edges_(std::move(edges)), degrees_(k, 0), adj_(k, 0), name_(std::move(name)) {
  if (k == 0 || k > kMaxTemplateVertices)
    throw std::invalid_argument("template vertex count must be in [1, 8]");
  for (auto& [i, j] : edges_) {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= k || static_cast<std::size_t>(j) >= k)
      throw std::invalid_argument("template edge endpoint out of range");
    if (i == j) throw std::invalid_argument("template edges must not be loops");
    if (adj_[i] >> j & 1u) throw std::invalid_argument("template edge listed twice");
    adj_[i] |= 1u << j;
    adj_[j] |= 1u << i;
    ++degrees_[i];
    ++degrees_[j];
  }
  dij_.reserve(edges_.size());
  for (const auto& [i, j] : edges_) dij_.push_back(std::popcount(adj_[i] & adj_[j]));

  const std::size_t m = edges_.size();
  const bool no_isolated = std::all_of(degrees_.begin(), degrees_.end(), [](int d) { return d > 0; });
  const int max_deg = degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
  if (k == 2 && m == 1) {
    kind_ = TemplateKind::Edge;
  } else if (k == 3 && m == 3) {
    kind_ = TemplateKind::Triangle;
  } else if (no_isolated && k >= 3 && m == k - 1 && max_deg == static_cast<int>(k - 1)) {
    kind_ = TemplateKind::Star;
  } else if (k == 4 && m == 4 && std::all_of(degrees_.begin(), degrees_.end(), [](int d) { return d == 2; })) {
    kind_ = TemplateKind::Cycle4;
  } else {
    kind_ = TemplateKind::General;
  }
  if (name_.empty()) {
    name_ = "k" + std::to_string(k) + ":";
    for (std::size_t e = 0; e < m; ++e)
      name_ += (e ? "," : "") + std::to_string(edges_[e].first) + "-" + std::to_string(edges_[e].second);
  }
}

TemplateGraph TemplateGraph::edge() { return TemplateGraph(2, {{0, 1}}, "edge"); }

TemplateGraph TemplateGraph::star(std::size_t leaves) {
  if (leaves == 0 || leaves + 1 > kMaxTemplateVertices) throw std::invalid_argument("star needs 1..7 leaves");
  std::vector<Edge> edges;
  for (std::size_t l = 1; l <= leaves; ++l) edges.emplace_back(0, static_cast<int>(l));
  std::string name = leaves == 1 ? "edge" : leaves == 2 ? "two_star" : "k_star:" + std::to_string(leaves);
  return TemplateGraph(leaves + 1, std::move(edges), name);
}

TemplateGraph TemplateGraph::triangle() { return TemplateGraph(3, {{0, 1}, {1, 2}, {0, 2}}, "triangle"); }

TemplateGraph TemplateGraph::cycle(std::size_t k) {
  if (k < 3 || k > kMaxTemplateVertices) throw std::invalid_argument("cycle length must be in [3, 8]");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) edges.emplace_back(static_cast<int>(i), static_cast<int>((i + 1) % k));
  return TemplateGraph(k, std::move(edges), k == 3 ? "triangle" : "cycle:" + std::to_string(k));
}

TemplateGraph TemplateGraph::parse(const std::string& spec) {
  if (spec == "edge") return edge();
  if (spec == "two_star") return two_star();
  if (spec == "triangle") return triangle();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::size_t size = parse_size(spec.substr(colon + 1), spec);
    if (head == "k_star") return star(size);
    if (head == "cycle") return cycle(size);
  }
  throw std::invalid_argument("unknown template '" + spec + "'");
}

bool TemplateGraph::connected() const noexcept {
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < k_; ++i)
      if (frontier >> i & 1u) next |= adj_[i];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (k_ == 32 ? ~0u : (1u << k_) - 1);
}

std::uint64_t TemplateGraph::canonical_code() const {
  if (k_ > 11) throw std::invalid_argument("canonical_code supports at most 11 vertices");
  std::vector<int> perm(k_);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, adjacency_code(adj_, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return (static_cast<std::uint64_t>(k_) << 58) | best;
}

TemplateFamily connected_family(std::size_t cap) {
  if (cap < 3 || cap > 6) throw std::invalid_argument("family cap must be in [3, 6]");
  TemplateFamily family;
  family.cap = cap;
  for (std::size_t k = 3; k <= cap; ++k) {
    std::vector<TemplateGraph::Edge> pairs;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    std::map<std::uint64_t, bool> seen;
    const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      if (std::popcount(mask) < static_cast<int>(k - 1)) continue;
      std::vector<TemplateGraph::Edge> edges;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (mask >> b & 1u) edges.push_back(pairs[b]);
      TemplateGraph g(k, std::move(edges));
      if (!g.connected()) continue;
      const auto code = g.canonical_code();
      if (seen.emplace(code, true).second) family.members.push_back(std::move(g));
    }
  }
  return family;
}

TemplateFamily default_family(const std::vector<TemplateGraph>& templates) {
  std::size_t largest = 2;
  for (const auto& t : templates) largest = std::max(largest, t.num_vertices());
  return connected_family(largest + 1);
}

}  // namespace ergm

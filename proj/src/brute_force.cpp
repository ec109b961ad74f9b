#include "ergm/brute_force.hpp"

#include <vector>

namespace ergm {
namespace {

// Odometer over the free coordinates of `img`.
template <class Visit>
void for_each_map(std::vector<int>& img, const std::vector<int>& free, int n, Visit&& visit) {
  for (int f : free) img[f] = 0;
  while (true) {
    visit();
    std::size_t i = 0;
    while (i < free.size() && ++img[free[i]] == n) img[free[i++]] = 0;
    if (i == free.size()) return;
  }
}

}  // namespace

HomCount hom_count_naive(const TemplateGraph& h, const Graph& x) {
  const int k = static_cast<int>(h.num_vertices());
  std::vector<int> img(k), free(k);
  for (int i = 0; i < k; ++i) free[i] = i;
  HomCount c = 0;
  for_each_map(img, free, static_cast<int>(x.num_vertices()), [&] {
    for (const auto& [a, b] : h.edges())
      if (img[a] == img[b] || !x.has_edge(static_cast<Vertex>(img[a]), static_cast<Vertex>(img[b]))) return;
    ++c;
  });
  return c;
}

HomCount delta_count_naive(const TemplateGraph& h, const Graph& x, EdgeId e) {
  Graph plus = x;
  plus.set_edge(e, true);
  const int k = static_cast<int>(h.num_vertices());
  const auto& edges = h.edges();
  auto on_e = [&](int a, int b) {
    return (a == static_cast<int>(e.u) && b == static_cast<int>(e.v)) ||
           (a == static_cast<int>(e.v) && b == static_cast<int>(e.u));
  };
  HomCount c = 0;
  for (std::size_t t = 0; t < edges.size(); ++t) {
    for (int orient = 0; orient < 2; ++orient) {
      std::vector<int> img(k, -1), free;
      img[edges[t].first] = static_cast<int>(orient ? e.v : e.u);
      img[edges[t].second] = static_cast<int>(orient ? e.u : e.v);
      for (int i = 0; i < k; ++i)
        if (img[i] < 0) free.push_back(i);
      for_each_map(img, free, static_cast<int>(x.num_vertices()), [&] {
        for (std::size_t s = 0; s < edges.size(); ++s) {
          const auto [a, b] = edges[s];
          if (img[a] == img[b] || !plus.has_edge(static_cast<Vertex>(img[a]), static_cast<Vertex>(img[b]))) return;
          if (s < t && on_e(img[a], img[b])) return;  // counted at an earlier edge
        }
        ++c;
      });
    }
  }
  return c;
}

}  // namespace ergm

#include "ergm/subgraph_counts.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ergm {

namespace {

/// Backtracking homomorphism counter over bit rows.
///
/// Template vertices are assigned in an order where each vertex follows as
/// many of its neighbours as possible, so its candidate set is the AND of the
/// rows of the images of those neighbours. The last vertex is never
/// enumerated: its contribution is the popcount of its candidate set.
///
/// Optional constraints:
///  - `forced`: the pair treated as present regardless of x (X^{+e});
///  - `forbidden`: a vertex that may not appear in the image;
///  - `excluded`: template edges that may not be mapped onto the forced pair.
class HomEngine {
 public:
  HomEngine(const TemplateGraph& h, const Graph& x, std::optional<EdgeId> forced)
      : h_(h), x_(x), forced_(forced), words_(x.words_per_row()), n_(x.num_vertices()) {
    buffers_.assign((h.num_vertices() + 1) * words_, 0);
    all_.assign(words_, ~std::uint64_t{0});
    if (n_ % 64) all_.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
    if (forced_) {
      const auto ru = x.row(forced_->u), rv = x.row(forced_->v);
      plus_u_.assign(ru.begin(), ru.end());
      plus_v_.assign(rv.begin(), rv.end());
      set_bit(plus_u_.data(), forced_->v);
      set_bit(plus_v_.data(), forced_->u);
    }
  }

  HomCount count(const std::array<int, kMaxTemplateVertices>& pins, std::optional<Vertex> forbidden,
                 std::uint32_t excluded_edges) {
    image_ = pins;
    forbidden_ = forbidden;
    excluded_ = excluded_edges;
    const std::size_t k = h_.num_vertices();
    std::uint32_t assigned = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (image_[i] >= 0) {
        if (forbidden_ && static_cast<Vertex>(image_[i]) == *forbidden_) return 0;
        assigned |= 1u << i;
      }
    // Template edges with both ends pinned must be present and not excluded.
    for (std::size_t e = 0; e < h_.num_edges(); ++e) {
      const auto [i, j] = h_.edges()[e];
      if ((assigned >> i & 1u) && (assigned >> j & 1u)) {
        if (!present(image_[i], image_[j])) return 0;
        if ((excluded_ >> e & 1u) && on_forced(image_[i], image_[j])) return 0;
      }
    }
    order_.clear();
    std::uint32_t placed = assigned;
    while (static_cast<std::size_t>(std::popcount(placed)) < k) {
      int best = -1, best_links = -1;
      for (std::size_t i = 0; i < k; ++i) {
        if (placed >> i & 1u) continue;
        const int links = std::popcount(h_.neighbor_mask(static_cast<int>(i)) & placed);
        if (links > best_links) best = static_cast<int>(i), best_links = links;
      }
      order_.push_back(best);
      placed |= 1u << best;
    }
    if (order_.empty()) return 1;
    return recurse(0);
  }

 private:
  bool present(int a, int b) const {
    if (on_forced(a, b)) return true;
    return x_.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  bool on_forced(int a, int b) const {
    if (!forced_) return false;
    const int fu = static_cast<int>(forced_->u), fv = static_cast<int>(forced_->v);
    return (a == fu && b == fv) || (a == fv && b == fu);
  }

  void clear_bit(std::uint64_t* set, Vertex w) const { set[w >> 6] &= ~(std::uint64_t{1} << (w & 63)); }
  void set_bit(std::uint64_t* set, Vertex w) const { set[w >> 6] |= std::uint64_t{1} << (w & 63); }

  // Row of `img` in X^{+e}.
  const std::uint64_t* row_of(Vertex img) const {
    if (forced_) {
      if (img == forced_->u) return plus_u_.data();
      if (img == forced_->v) return plus_v_.data();
    }
    return x_.row(img).data();
  }

  // Candidates for template vertex t given the vertices assigned so far:
  // common X^{+e}-neighbours of the images of its assigned neighbours, minus
  // the forbidden vertex and minus landings that would put an excluded
  // template edge on the forced pair.
  void candidates(int t, std::uint64_t* cand) const {
    std::copy(all_.begin(), all_.end(), cand);
    const std::uint32_t nb = h_.neighbor_mask(t);
    for (std::size_t j = 0; j < h_.num_vertices(); ++j) {
      if (image_[j] < 0 || !(nb >> j & 1u)) continue;
      const std::uint64_t* row = row_of(static_cast<Vertex>(image_[j]));
      for (std::size_t w = 0; w < words_; ++w) cand[w] &= row[w];
    }
    if (forbidden_) clear_bit(cand, *forbidden_);
    if (excluded_ && forced_) {
      for (std::size_t e = 0; e < h_.num_edges(); ++e) {
        if (!(excluded_ >> e & 1u)) continue;
        auto [a, b] = h_.edges()[e];
        int other = -1;
        if (a == t) other = b;
        else if (b == t) other = a;
        if (other < 0 || image_[other] < 0) continue;
        const auto img = static_cast<Vertex>(image_[other]);
        if (img == forced_->u) clear_bit(cand, forced_->v);
        else if (img == forced_->v) clear_bit(cand, forced_->u);
      }
    }
  }

  std::uint32_t edge_mask_between(int a, int b) const {
    for (std::size_t e = 0; e < h_.num_edges(); ++e) {
      const auto [i, j] = h_.edges()[e];
      if ((i == a && j == b) || (i == b && j == a)) return 1u << e;
    }
    return 0;
  }

  HomCount popcount_of(const std::uint64_t* set) const {
    HomCount c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += static_cast<unsigned>(std::popcount(set[w]));
    return c;
  }

  HomCount recurse(std::size_t depth) {
    const int t = order_[depth];
    std::uint64_t* cand = buffers_.data() + depth * words_;
    candidates(t, cand);
    const std::size_t left = order_.size() - depth;
    if (left == 1) return popcount_of(cand);
    if (left == 2) return last_two(t, order_[depth + 1], cand, buffers_.data() + (depth + 1) * words_);
    HomCount total = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        image_[t] = static_cast<int>(w * 64 + b);
        total += recurse(depth + 1);
      }
    }
    image_[t] = -1;
    return total;
  }

  // Two template vertices t, b left, t's candidates known. If they are not
  // adjacent the count factorizes; otherwise sum |cand_b ∩ N(x)| over x.
  HomCount last_two(int t, int b, const std::uint64_t* cand_t, std::uint64_t* base_b) {
    candidates(b, base_b);  // t is unassigned, so only the other constraints
    if (!h_.adjacent(t, b)) return popcount_of(cand_t) * popcount_of(base_b);
    const bool excluded_tb = forced_ && (excluded_ & edge_mask_between(t, b));
    HomCount total = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand_t[w];
      while (bits) {
        const auto xv = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
        const std::uint64_t* row = row_of(xv);
        HomCount c = 0;
        for (std::size_t k = 0; k < words_; ++k) c += static_cast<unsigned>(std::popcount(base_b[k] & row[k]));
        if (excluded_tb && (xv == forced_->u || xv == forced_->v)) {
          const Vertex partner = xv == forced_->u ? forced_->v : forced_->u;
          if ((base_b[partner >> 6] & row[partner >> 6]) >> (partner & 63) & 1u) --c;
        }
        total += c;
      }
    }
    return total;
  }

  const TemplateGraph& h_;
  const Graph& x_;
  std::optional<EdgeId> forced_;
  std::size_t words_;
  std::size_t n_;
  std::vector<std::uint64_t> buffers_;
  std::vector<std::uint64_t> all_;
  std::vector<std::uint64_t> plus_u_, plus_v_;
  std::vector<int> order_;
  std::array<int, kMaxTemplateVertices> image_{};
  std::optional<Vertex> forbidden_;
  std::uint32_t excluded_ = 0;
};

std::array<int, kMaxTemplateVertices> no_pins() {
  std::array<int, kMaxTemplateVertices> p{};
  p.fill(-1);
  return p;
}

HomCount ipow(HomCount base, std::size_t exp) {
  HomCount r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

double density_scale(std::size_t n, std::size_t k) {
  double s = 1.0;
  for (std::size_t i = 0; i < k; ++i) s *= static_cast<double>(n);
  return s;
}

HomCount hom_count(const TemplateGraph& h, const Graph& x) {
  if (h.kind() == TemplateKind::Edge || h.kind() == TemplateKind::Star) {
    // sum_v deg(v)^leaves; enumeration would visit every one of them.
    HomCount total = 0;
    for (Vertex v = 0; v < x.num_vertices(); ++v) {
      HomCount term = 1;
      for (std::size_t l = 0; l < h.star_leaves(); ++l) term *= x.degree(v);
      total += term;
    }
    return total;
  }
  HomEngine engine(h, x, std::nullopt);
  return engine.count(no_pins(), std::nullopt, 0);
}

double hom_density(const TemplateGraph& h, const Graph& x) {
  return static_cast<double>(hom_count(h, x)) / density_scale(x.num_vertices(), h.num_vertices());
}

HomCount delta_count_enumerated(const TemplateGraph& h, const Graph& x, EdgeId e) {
  // Each homomorphism using e is counted once, at the first template edge
  // (in list order) that lands on e.
  HomEngine engine(h, x, e);
  HomCount total = 0;
  const auto& edges = h.edges();
  for (std::size_t t = 0; t < edges.size(); ++t) {
    const std::uint32_t excluded = (1u << t) - 1;
    for (int orient = 0; orient < 2; ++orient) {
      auto pins = no_pins();
      pins[edges[t].first] = static_cast<int>(orient ? e.v : e.u);
      pins[edges[t].second] = static_cast<int>(orient ? e.u : e.v);
      total += engine.count(pins, std::nullopt, excluded);
    }
  }
  return total;
}

HomCount delta_count(const TemplateGraph& h, const Graph& x, EdgeId e) {
  const bool has = x.has_edge(e);
  // Degrees and codegrees below are those of X^{-e}.
  const HomCount du = x.degree(e.u) - (has ? 1 : 0);
  const HomCount dv = x.degree(e.v) - (has ? 1 : 0);
  switch (h.kind()) {
    case TemplateKind::Edge:
      return 2;
    case TemplateKind::Star: {
      const std::size_t s = h.star_leaves();
      return ipow(du + 1, s) - ipow(du, s) + ipow(dv + 1, s) - ipow(dv, s);
    }
    case TemplateKind::Triangle:
#ifdef ERGM_NEGATIVE_CONTROL
      return 6 * static_cast<HomCount>(x.codegree(e.u, e.v)) + 1;  // deliberately wrong
#else
      return 6 * static_cast<HomCount>(x.codegree(e.u, e.v));
#endif
    case TemplateKind::Cycle4: {
      // tr((B+E)^4) - tr(B^4) = 8 (B^3)_uv + 4 (d_u + d_v) + 2.
      HomCount walks = 0;
      const auto row = x.row(e.u);
      for (std::size_t w = 0; w < row.size(); ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
          const auto z = static_cast<Vertex>(w * 64 + std::countr_zero(bits));
          bits &= bits - 1;
          if (z == e.v) continue;
          walks += x.codegree(z, e.v) - (has ? 1 : 0);
        }
      }
      return 8 * walks + 4 * (du + dv) + 2;
    }
    case TemplateKind::General:
      break;
  }
  return delta_count_enumerated(h, x, e);
}

double delta_hom(const TemplateGraph& h, const Graph& x, EdgeId e) {
  return static_cast<double>(delta_count(h, x, e)) / density_scale(x.num_vertices(), h.num_vertices());
}

double r_value(const TemplateGraph& h, const Graph& x, EdgeId e) {
  const std::size_t m = h.num_edges();
  if (m < 2) throw std::invalid_argument("r_value needs a template with at least two edges");
  const double delta = delta_hom(h, x, e);
  if (delta == 0.0) return 0.0;
  const double n = static_cast<double>(x.num_vertices());
  return std::pow(n * n * delta / (2.0 * static_cast<double>(m)), 1.0 / static_cast<double>(m - 1));
}

double restricted_hom_density(const TemplateGraph& h, const Graph& x, Vertex u) {
  if (u >= x.num_vertices()) throw std::invalid_argument("vertex out of range");
  HomEngine engine(h, x, std::nullopt);
  const HomCount total = engine.count(no_pins(), std::nullopt, 0);
  const HomCount avoiding = engine.count(no_pins(), u, 0);
  return static_cast<double>(total - avoiding) / density_scale(x.num_vertices(), h.num_vertices());
}

double restricted_hom_density_surrogate(const TemplateGraph& h, const Graph& x, Vertex u) {
  if (u >= x.num_vertices()) throw std::invalid_argument("vertex out of range");
  HomEngine engine(h, x, std::nullopt);
  HomCount total = 0;
  for (std::size_t l = 0; l < h.num_vertices(); ++l) {
    auto pins = no_pins();
    pins[l] = static_cast<int>(u);
    total += engine.count(pins, std::nullopt, 0);
  }
  return static_cast<double>(total) / density_scale(x.num_vertices(), h.num_vertices());
}

double approx_delta(const TemplateGraph& h, std::size_t n, double p_star, double p_uv) {
  if (!(p_star > 0.0 && p_star < 1.0)) throw std::invalid_argument("approx_delta needs p* in (0,1)");
  const double m = static_cast<double>(h.num_edges());
  double sum = 0.0;
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    sum += std::pow(p_uv / (p_star * p_star), h.common_neighbors(e)) * std::pow(p_star, m - 1.0);
  const double nn = static_cast<double>(n);
  return 2.0 / (nn * nn) * sum;
}

}  // namespace ergm

#include "ergm/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ergm/cut_distance.hpp"
#include "ergm/landscape.hpp"
#include "ergm/subgraph_counts.hpp"

namespace ergm {

double conditional_prob(const ModelParams& model, const Graph& x, EdgeId e) {
  const double n = static_cast<double>(x.num_vertices());
  double h = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (model.beta[i] == 0.0) continue;
    h += n * n * model.beta[i] * delta_hom(model.templates[i], x, e);
  }
  return logistic(h);
}

CodegreeMatrix::CodegreeMatrix(const Graph& g) : n_(g.num_vertices()), data_(n_ * n_, 0) {
  if (n_ > 4096) throw std::invalid_argument("codegree matrix limited to n <= 4096");
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v) {
      const auto c = static_cast<std::uint16_t>(g.codegree(u, v));
      data_[u * n_ + v] = c;
      data_[v * n_ + u] = c;
    }
}

void CodegreeMatrix::on_flip(const Graph& g, EdgeId e) noexcept {
  // Adding uv makes u a common neighbour of (v, w) for every w ~ u, and v one
  // of (u, w) for every w ~ v. Removal undoes the same set.
  const int d = g.has_edge(e) ? 1 : -1;
  auto bump = [&](Vertex a, Vertex skip, Vertex centre) {
    const auto r = g.row(centre);
    std::uint16_t* row_a = data_.data() + static_cast<std::size_t>(a) * n_;
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::uint64_t bits = r[k];
      while (bits) {
        const auto w = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
        if (w == skip) continue;
        row_a[w] = static_cast<std::uint16_t>(row_a[w] + d);
        data_[static_cast<std::size_t>(w) * n_ + a] = row_a[w];
      }
    }
  };
  bump(e.u, e.u, e.v);
  bump(e.v, e.v, e.u);
}

Chain::Chain(std::shared_ptr<const ModelParams> model, Graph initial, CodegreePolicy policy)
    : model_(std::move(model)), graph_(std::move(initial)) {
  if (!model_) throw std::invalid_argument("chain needs a model");
  model_->validate();
  const std::size_t n = graph_.num_vertices();
  if (model_->n != 0 && model_->n != n)
    throw std::invalid_argument("model is configured for n = " + std::to_string(model_->n) + " but the graph has " +
                                std::to_string(n) + " vertices");
  bool wants = false;
  for (std::size_t i = 0; i < model_->size(); ++i) {
    const auto& h = model_->templates[i];
    if (model_->beta[i] == 0.0) continue;
    terms_.push_back({h.kind(), model_->beta[i] * static_cast<double>(n) * static_cast<double>(n) /
                                    density_scale(n, h.num_vertices()),
                      i});
    wants = wants || h.kind() == TemplateKind::Cycle4;
  }
  const bool matrix = policy == CodegreePolicy::Matrix || (policy == CodegreePolicy::Auto && wants && n <= 4096);
  if (matrix) codegrees_.emplace(graph_);
}

double Chain::logit(EdgeId e) const {
  double h = 0.0;
  const bool has = graph_.has_edge(e);
  for (const Term& t : terms_) {
    switch (t.kind) {
      case TemplateKind::Edge:
        h += 2.0 * t.scale;
        break;
      case TemplateKind::Triangle:
        h += t.scale * 6.0 * static_cast<double>(codegree(e.u, e.v));
        break;
      case TemplateKind::Cycle4: {
        const std::uint32_t off = has ? 1 : 0;
        std::uint64_t walks = 0;
        const auto row = graph_.row(e.u);
        for (std::size_t k = 0; k < row.size(); ++k) {
          std::uint64_t bits = row[k];
          while (bits) {
            const auto z = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
            if (z != e.v) walks += codegree(z, e.v) - off;
          }
        }
        const double du = graph_.degree(e.u) - off, dv = graph_.degree(e.v) - off;
        h += t.scale * (8.0 * static_cast<double>(walks) + 4.0 * (du + dv) + 2.0);
        break;
      }
      default:
        h += t.scale * static_cast<double>(delta_count(model_->templates[t.index], graph_, e));
        break;
    }
  }
  return h;
}

double Chain::conditional(EdgeId e) const { return logistic(logit(e)); }

void Chain::set_edge(EdgeId e, bool present) {
  if (graph_.has_edge(e) == present) return;
  graph_.flip(e);
  if (codegrees_) codegrees_->on_flip(graph_, e);
  in_ball_.reset();
}

void Chain::step(Rng& rng) {
  const EdgeId e = edge_from_index(rng.below(graph_.num_pairs()));
  const double u = rng.uniform();
  set_edge(e, u < conditional(e));
  ++steps_;
}

void Chain::restricted_step(Rng& rng, const Ball& ball) {
  if (graph_.num_vertices() > kMaxExactCutVertices)
    throw std::invalid_argument("restricted Glauber step needs n <= " + std::to_string(kMaxExactCutVertices) +
                                " for exact ball membership");
  const EdgeId e = edge_from_index(rng.below(graph_.num_pairs()));
  const double u = rng.uniform();
  if (!in_ball_) in_ball_ = cut_distance_exact(graph_, ball.p_star) <= ball.eta;
  if (!*in_ball_) {
    // pi(X) = 0: the flip is taken with probability one.
    set_edge(e, !graph_.has_edge(e));
  } else {
    graph_.flip(e);
    const bool flipped_inside = cut_distance_exact(graph_, ball.p_star) <= ball.eta;
    graph_.flip(e);
    if (flipped_inside) {
      const bool bit = u < conditional(e);
      if (bit != graph_.has_edge(e)) {
        set_edge(e, bit);
        in_ball_ = true;
      }
    }
  }
  ++steps_;
}

bool Chain::caches_consistent() const {
  const std::size_t n = graph_.num_vertices();
  std::uint64_t m = 0;
  for (Vertex u = 0; u < n; ++u) {
    std::uint32_t d = 0;
    for (auto w : graph_.row(u)) d += static_cast<std::uint32_t>(std::popcount(w));
    if (d != graph_.degree(u)) return false;
    m += d;
  }
  if (m / 2 != graph_.num_edges()) return false;
  if (codegrees_) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v && codegrees_->at(u, v) != graph_.codegree(u, v)) return false;
  }
  return true;
}

void glauber_step(Chain& chain, Rng& rng) { chain.step(rng); }

void restricted_glauber_step(Chain& chain, const Ball& ball, Rng& rng) { chain.restricted_step(rng, ball); }

CoupledPair::CoupledPair(Chain lo, Chain hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.graph().num_vertices() != upper.graph().num_vertices())
    throw std::invalid_argument("coupled chains must have the same number of vertices");
  ordered = dominates(lower.graph(), upper.graph());
  distance = hamming_distance(lower.graph(), upper.graph());
}

void monotone_pair_step(CoupledPair& pair, Rng& rng) {
  const EdgeId e = edge_from_index(rng.below(pair.lower.graph().num_pairs()));
  const double u = rng.uniform();
  const bool before = pair.lower.graph().has_edge(e) != pair.upper.graph().has_edge(e);
  const bool lo = u < pair.lower.conditional(e);
  const bool hi = u < pair.upper.conditional(e);
  pair.lower.set_edge(e, lo);
  pair.upper.set_edge(e, hi);
  pair.lower.count_step();
  pair.upper.count_step();
  const bool after = lo != hi;
  if (before && !after) --pair.distance;
  if (!before && after) ++pair.distance;
  // Only e changed, so order can only break there.
  if (pair.ordered && lo && !hi) ++pair.order_violations;
}

std::optional<std::uint64_t> coalescence_time(std::shared_ptr<const ModelParams> model, Rng& rng, std::uint64_t cap,
                                              CodegreePolicy policy) {
  const std::size_t n = model->n;
  if (n < 2) throw std::invalid_argument("coalescence_time needs model.n >= 2");
  CoupledPair pair(Chain(model, Graph(n), policy), Chain(model, Graph::complete(n), policy));
  for (std::uint64_t t = 0; t < cap; ++t) {
    if (pair.distance == 0) return t;
    monotone_pair_step(pair, rng);
  }
  if (pair.distance == 0) return cap;
  return std::nullopt;
}

SandwichSample sandwich_sample(std::shared_ptr<const ModelParams> model, double p_star, double eps, double eta,
                               std::uint64_t burn_in, Rng& rng) {
  if (!(p_star >= 0.0 && p_star <= 1.0)) throw std::invalid_argument("sandwich_sample: p* must lie in [0,1]");
  if (!(eps >= 0.0)) throw std::invalid_argument("sandwich_sample: eps must be nonnegative");
  const std::size_t n = model->n;
  Chain chain(model, sample_gnp(n, p_star, rng));
  for (std::uint64_t t = 0; t < burn_in; ++t) chain.step(rng);

  SandwichSample out{Graph(n), Graph(n), Graph(n)};
  out.start_in_ball = n <= kExactCutMaxVertices ? cut_distance_exact(chain.graph(), p_star) <= eta
                                                : cut_distance_spectral_upper(chain.graph(), p_star) <= eta;
  out.ok = true;
  const double lo = p_star - eps, hi = p_star + eps;
  const std::uint64_t pairs = num_pairs(n);
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const EdgeId e = edge_from_index(i);
    const double u = rng.uniform();
    const double c = chain.conditional(e);
    out.min_conditional = std::min(out.min_conditional, c);
    out.max_conditional = std::max(out.max_conditional, c);
    if (c < lo || c > hi) out.ok = false;
    chain.set_edge(e, u < c);
    out.under.set_edge(e, u < lo);
    out.over.set_edge(e, u < hi);
  }
  out.x = chain.graph();
  return out;
}

void TrajectoryReport::write_csv(std::ostream& os) const {
  os << "step";
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    os << steps[i];
    for (double v : rows[i]) os << ',' << v;
    os << '\n';
  }
  os.precision(old);
}

TrajectoryReport run_chain(Chain& chain, std::uint64_t steps, Rng& rng, const std::vector<Observer>& observers,
                           std::uint64_t stride, const StepHook& each_step) {
  if (stride == 0) throw std::invalid_argument("run_chain: stride must be positive");
  TrajectoryReport rep;
  for (const auto& o : observers) rep.columns.insert(rep.columns.end(), o.columns.begin(), o.columns.end());
  auto observe = [&](std::uint64_t t) {
    std::vector<double> row;
    row.reserve(rep.columns.size());
    for (const auto& o : observers) {
      std::vector<double> vals;
      try {
        vals = o.observe(chain.graph());
      } catch (const std::exception& ex) {
        throw std::runtime_error("observer '" + o.name + "' failed at step " + std::to_string(t) + ": " + ex.what());
      }
      if (vals.size() != o.columns.size())
        throw std::runtime_error("observer '" + o.name + "' returned " + std::to_string(vals.size()) +
                                 " values for " + std::to_string(o.columns.size()) + " columns at step " +
                                 std::to_string(t));
      row.insert(row.end(), vals.begin(), vals.end());
    }
    rep.steps.push_back(t);
    rep.rows.push_back(std::move(row));
  };
  observe(0);
  if (each_step) each_step(chain.graph(), 0);
  for (std::uint64_t t = 1; t <= steps; ++t) {
    chain.step(rng);
    if (each_step) each_step(chain.graph(), t);
    if (t % stride == 0) observe(t);
  }
  return rep;
}

}  // namespace ergm

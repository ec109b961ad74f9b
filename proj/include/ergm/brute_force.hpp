#pragma once

#include "ergm/graph.hpp"
#include "ergm/subgraph_counts.hpp"
#include "ergm/templates.hpp"

namespace ergm {

/// Plain enumeration of all n^k maps. Slow; for cross-checks only.
HomCount hom_count_naive(const TemplateGraph& h, const Graph& x);

/// hom(H, X^{+e}) - hom(H, X^{-e}) by plain enumeration of the maps that send
/// at least one template edge onto e (each counted at its first such edge).
HomCount delta_count_naive(const TemplateGraph& h, const Graph& x, EdgeId e);

}  // namespace ergm

#pragma once

#include "ergm/graph.hpp"
#include "ergm/templates.hpp"

namespace ergm {

/// Exact homomorphism counts fit in 128 bits: a count is below n^k <= 2^128.
using HomCount = unsigned __int128;

/// Number of maps [k] -> [n] (not necessarily injective) sending every
/// template edge to an edge of x.
HomCount hom_count(const TemplateGraph& h, const Graph& x);

/// t(H, X) = hom_count / n^k.
double hom_density(const TemplateGraph& h, const Graph& x);

/// Homomorphisms of H into X^{+e} that use e, i.e. the integer numerator of
/// N_H(X^{+e}) - N_H(X^{-e}). Independent of the current state of e.
/// Dispatches to closed forms for edge, star, triangle and 4-cycle.
HomCount delta_count(const TemplateGraph& h, const Graph& x, EdgeId e);

/// Pinned-enumeration route, valid for every template. Exposed so that the
/// closed forms can be checked against it.
HomCount delta_count_enumerated(const TemplateGraph& h, const Graph& x, EdgeId e);

/// Delta_e N_H(X) = N_H(X^{+e}) - N_H(X^{-e}).
double delta_hom(const TemplateGraph& h, const Graph& x, EdgeId e);

/// r_H(X, e) = (n^2 Delta_e N_H(X) / 2|E|)^(1/(|E|-1)); zero when the delta is.
/// Throws std::invalid_argument for single-edge templates.
double r_value(const TemplateGraph& h, const Graph& x, EdgeId e);

/// N_H(X; u): density of the homomorphisms whose image contains u.
double restricted_hom_density(const TemplateGraph& h, const Graph& x, Vertex u);

/// N^0_H(X; u): sum over template vertices l of the density of maps with l -> u.
double restricted_hom_density_surrogate(const TemplateGraph& h, const Graph& x, Vertex u);

/// Main term (2/n^2) sum_{(i,j) in E(H)} (p_uv/p*^2)^{d_ij} p*^{|E|-1}.
double approx_delta(const TemplateGraph& h, std::size_t n, double p_star, double p_uv);

/// n^k as a double.
double density_scale(std::size_t n, std::size_t k);

}  // namespace ergm

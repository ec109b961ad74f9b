#include "ergm/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ergm {

ModelParams ModelParams::make(std::vector<double> beta, std::vector<TemplateGraph> extra, std::size_t n) {
  ModelParams m;
  m.beta = std::move(beta);
  m.templates.reserve(extra.size() + 1);
  m.templates.push_back(TemplateGraph::edge());
  for (auto& t : extra) m.templates.push_back(std::move(t));
  m.n = n;
  m.validate();
  return m;
}

ModelParams ModelParams::edge_triangle(double beta0, double beta1, std::size_t n) {
  return make({beta0, beta1}, {TemplateGraph::triangle()}, n);
}

void ModelParams::validate() const {
  if (beta.empty()) throw std::invalid_argument("model: beta must contain at least beta_0");
  if (beta.size() != templates.size())
    throw std::invalid_argument("model: " + std::to_string(beta.size()) + " beta values for " +
                                std::to_string(templates.size()) + " templates");
  if (templates.front().kind() != TemplateKind::Edge)
    throw std::invalid_argument("model: template 0 must be the single edge");
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (!std::isfinite(beta[i])) throw std::invalid_argument("model: beta values must be finite");
    if (i >= 1 && beta[i] < 0.0)
      throw std::invalid_argument("model: beta_" + std::to_string(i) + " must be nonnegative");
  }
}

std::string ModelParams::describe() const {
  std::ostringstream os;
  os << "n=" << n << " beta=(";
  for (std::size_t i = 0; i < beta.size(); ++i) os << (i ? ", " : "") << beta[i];
  os << ") templates=[";
  for (std::size_t i = 0; i < templates.size(); ++i) os << (i ? ", " : "") << templates[i].name();
  os << "]";
  return os.str();
}

}  // namespace ergm

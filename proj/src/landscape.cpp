#include "ergm/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ergm {

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Roots of f on [lo, hi] found by a uniform sign-change scan. When
/// `down_only` is set only + to - crossings are kept.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi, std::size_t grid,
                               double tol, bool down_only) {
  std::vector<double> roots;
  double prev_x = lo, prev_f = f(lo);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double x = i == grid ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
    const double fx = f(x);
    if (prev_f == 0.0) {
      // Counted when it was the right end of the previous cell.
    } else if (fx == 0.0) {
      // Look one cell ahead to decide on the direction of the crossing.
      const double next = i == grid ? fx : f(std::min(hi, x + (hi - lo) / static_cast<double>(grid)));
      if (!down_only || (prev_f > 0.0 && next <= 0.0)) roots.push_back(x);
    } else if ((prev_f > 0.0) != (fx > 0.0)) {
      if (!down_only || prev_f > 0.0) roots.push_back(bisect(f, prev_x, x, tol));
    }
    prev_x = x;
    prev_f = fx;
  }
  return roots;
}

/// Sum_i c_i beta_i |E_i|^(a) p^{|E_i| - s}, the common building block.
double poly_term(const ModelParams& m, double p, int shift, bool factor1, bool factor2) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double e = static_cast<double>(m.templates[i].num_edges());
    double c = m.beta[i];
    if (factor1) c *= e;
    if (factor2) c *= (e - 1.0);
    if (c == 0.0) continue;
    s += c * std::pow(p, e - shift);
  }
  return s;
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::High: return "high";
    case Regime::Low: return "low";
    case Regime::Critical: return "critical";
  }
  return "unknown";
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double z = std::exp(x);
  return z / (1.0 + z);
}

double entropy_term(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("entropy_term needs p in [0,1]");
  double s = 0.0;
  if (p > 0.0) s += p * std::log(p);
  if (p < 1.0) s += (1.0 - p) * std::log1p(-p);
  return 0.5 * s;
}

double landscape_value(const ModelParams& m, double p) {
  return poly_term(m, p, 0, false, false) - entropy_term(p);
}

double landscape_derivative(const ModelParams& m, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("L' is defined on (0,1) only");
  return poly_term(m, p, 1, true, false) - 0.5 * (std::log(p) - std::log1p(-p));
}

double landscape_second_derivative(const ModelParams& m, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("L'' is defined on (0,1) only");
  return poly_term(m, p, 2, true, true) - 0.5 / (p * (1.0 - p));
}

double phi_beta(const ModelParams& m, double p) { return logistic(2.0 * poly_term(m, p, 1, true, false)); }

double phi_beta_derivative(const ModelParams& m, double p) {
  const double s = phi_beta(m, p);
  return s * (1.0 - s) * 2.0 * poly_term(m, p, 2, true, true);
}

std::vector<LocalMaximum> find_local_maxima(const ModelParams& m, const LandscapeTolerances& tol,
                                            bool* boundary_low, bool* boundary_high) {
  if (tol.grid_size < 64) throw std::invalid_argument("grid_size must be at least 64");
  const double lo = tol.margin, hi = 1.0 - tol.margin;
  auto dl = [&](double p) { return landscape_derivative(m, p); };
  const auto roots = scan_roots(dl, lo, hi, tol.grid_size, tol.root_tol, true);
  if (boundary_low) *boundary_low = dl(lo) < 0.0;
  if (boundary_high) *boundary_high = dl(hi) > 0.0;

  std::vector<LocalMaximum> out;
  double sup = -std::numeric_limits<double>::infinity();
  for (double p : roots) {
    LocalMaximum mx;
    mx.p = p;
    mx.value = landscape_value(m, p);
    mx.second_derivative = landscape_second_derivative(m, p);
    mx.is_degenerate = std::abs(mx.second_derivative) < tol.degenerate;
    sup = std::max(sup, mx.value);
    out.push_back(mx);
  }
  if (dl(lo) < 0.0) sup = std::max(sup, landscape_value(m, 0.0));
  if (dl(hi) > 0.0) sup = std::max(sup, landscape_value(m, 1.0));
  for (auto& mx : out) mx.is_global = mx.value >= sup - tol.global_value;
  return out;
}

std::vector<FixedPoint> find_phi_fixed_points(const ModelParams& m, const LandscapeTolerances& tol) {
  auto h = [&](double p) { return phi_beta(m, p) - p; };
  std::vector<FixedPoint> out;
  for (double p : scan_roots(h, 0.0, 1.0, tol.grid_size, tol.root_tol, false)) {
    FixedPoint fp;
    fp.p = p;
    fp.slope = phi_beta_derivative(m, p);
    fp.stable = fp.slope < 1.0;
    out.push_back(fp);
  }
  return out;
}

Regime classify_regime(const std::vector<LocalMaximum>& maxima, double tol_degenerate, std::size_t boundary_maxima) {
  for (const auto& mx : maxima)
    if (std::abs(mx.second_derivative) < tol_degenerate) return Regime::Critical;
  return maxima.size() + boundary_maxima == 1 ? Regime::High : Regime::Low;
}

LandscapeReport analyze_landscape(const ModelParams& m, const LandscapeTolerances& tol) {
  LandscapeReport r;
  r.maxima = find_local_maxima(m, tol, &r.boundary_max_low, &r.boundary_max_high);
  r.regime = classify_regime(r.maxima, tol.degenerate,
                             static_cast<std::size_t>(r.boundary_max_low) + static_cast<std::size_t>(r.boundary_max_high));
  r.fixed_points = find_phi_fixed_points(m, tol);
  return r;
}

std::vector<double> global_maximizers(const LandscapeReport& report) {
  std::vector<double> out;
  for (const auto& mx : report.maxima)
    if (mx.is_global && !mx.is_degenerate) out.push_back(mx.p);
  return out;
}

TergmSolution solve_example_tergm(double beta0, double beta1, const LandscapeTolerances& tol) {
  const ModelParams m = ModelParams::edge_triangle(beta0, beta1, 0);
  const auto maxima = find_local_maxima(m, tol);
  std::vector<LocalMaximum> regular;
  for (const auto& mx : maxima)
    if (!mx.is_degenerate) regular.push_back(mx);
  if (regular.size() < 2)
    throw ExampleConditionError("condition 1 failed: L_beta has " + std::to_string(regular.size()) +
                                " non-degenerate local maxima, need two");
  std::sort(regular.begin(), regular.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
  if (regular[0].value - regular[1].value <= tol.global_value)
    throw ExampleConditionError("condition 1 failed: the global maximizer is not unique");

  auto f = [&](double x) { return logistic(2.0 * beta0 + 6.0 * beta1 * x * x); };
  TergmSolution s;
  s.p1 = regular[0].p;
  s.p2 = regular[1].p;
  for (double p : {s.p1, s.p2})
    if (std::abs(f(p) - p) > tol.match)
      throw ExampleConditionError("condition 1 failed: a local maximizer is not a fixed point of f");

  auto g = [&](double x) { return logistic(2.0 * beta0 + 6.0 * beta1 * x * s.p1); };
  auto g_slope = [&](double x) {
    const double v = g(x);
    return 6.0 * beta1 * s.p1 * v * (1.0 - v);
  };
  auto h = [&](double x) { return g(x) - x; };
  bool found = false;
  for (double q : scan_roots(h, 0.0, 1.0, tol.grid_size, tol.root_tol, false)) {
    if (std::abs(q - s.p1) <= 1e-6 || std::abs(q - s.p2) <= 1e-6) continue;
    if (g_slope(q) >= 1.0) continue;
    s.q = q;
    found = true;
    break;
  }
  if (!found)
    throw ExampleConditionError("condition 2 failed: g has no stable fixed point distinct from p1*, p2*");

  const double fv = f(s.p1);
  s.f_slope_p1 = 12.0 * beta1 * s.p1 * fv * (1.0 - fv);
  s.g_slope_q = g_slope(s.q);
  if (!(s.f_slope_p1 < 1.0) || !(s.g_slope_q < 1.0))
    throw ExampleConditionError("condition 3 failed: f'(p1*) or g'(q*) is not below 1");
  return s;
}

}  // namespace ergm

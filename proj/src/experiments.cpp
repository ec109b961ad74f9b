#include "ergm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ergm/brute_force.hpp"
#include "ergm/cut_distance.hpp"
#include "ergm/exact_oracle.hpp"
#include "ergm/subgraph_counts.hpp"

namespace ergm {

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double reference_p_star(const ModelParams& m, const LandscapeTolerances& tol) {
  const auto rep = analyze_landscape(m, tol);
  const LocalMaximum* best = nullptr;
  for (const auto& mx : rep.maxima)
    if (!best || mx.value > best->value) best = &mx;
  if (!best) throw std::runtime_error("L_beta has no interior maximum for " + m.describe());
  return best->p;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  if (std::isinf(v[lo]) || std::isinf(v[hi])) return v[hi];
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs two or more points");
  const double k = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += std::log(x[i]), my += std::log(y[i]);
  mx /= k;
  my /= k;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name);
  if (!out) throw std::runtime_error("cannot write '" + (std::filesystem::path(dir) / name).string() + "'");
  out.precision(17);
  return out;
}

TemplateFamily family_for(const ModelParams& m, std::size_t cap) {
  return cap == 0 ? default_family(m.templates) : connected_family(cap);
}

std::uint64_t sweeps(double s, std::uint64_t pairs) {
  return static_cast<std::uint64_t>(std::llround(s * static_cast<double>(pairs)));
}

}  // namespace

// ---------------------------------------------------------------- phase

PhaseResult run_phase(const ExperimentConfig& cfg) {
  PhaseResult res;
  const ModelParams base = cfg.model.build();
  std::vector<std::vector<double>> betas;
  if (cfg.phase.sweep) {
    const auto& sw = *cfg.phase.sweep;
    for (std::size_t i = 0; i < sw.points; ++i) {
      auto b = base.beta;
      b[sw.index] = sw.points == 1 ? sw.from
                                   : sw.from + (sw.to - sw.from) * static_cast<double>(i) /
                                                   static_cast<double>(sw.points - 1);
      betas.push_back(b);
    }
  } else {
    betas.push_back(base.beta);
  }
  for (const auto& b : betas) {
    ModelParams m = base;
    m.beta = b;
    m.validate();
    res.rows.push_back({b, analyze_landscape(m, cfg.phase.tolerances)});
    if (cfg.phase.sweep && !res.first_low && res.rows.back().report.regime == Regime::Low)
      res.first_low = b[cfg.phase.sweep->index];
  }
  return res;
}

std::vector<std::string> write_phase(const PhaseResult& r, const std::string& dir) {
  auto regimes = open_out(dir, "phase_regimes.csv");
  auto maxima = open_out(dir, "phase_maxima.csv");
  auto fixed = open_out(dir, "phase_fixed_points.csv");
  const std::size_t k = r.rows.empty() ? 0 : r.rows.front().beta.size();
  auto beta_header = [&](std::ostream& os) {
    os << "row";
    for (std::size_t i = 0; i < k; ++i) os << ",beta" << i;
  };
  beta_header(regimes);
  regimes << ",regime,num_maxima,boundary_low,boundary_high\n";
  beta_header(maxima);
  maxima << ",p,value,second_derivative,is_global,is_degenerate\n";
  beta_header(fixed);
  fixed << ",p,slope,stable\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    auto prefix = [&](std::ostream& os) {
      os << i;
      for (double b : row.beta) os << ',' << b;
    };
    prefix(regimes);
    regimes << ',' << to_string(row.report.regime) << ',' << row.report.maxima.size() << ','
            << row.report.boundary_max_low << ',' << row.report.boundary_max_high << '\n';
    for (const auto& m : row.report.maxima) {
      prefix(maxima);
      maxima << ',' << m.p << ',' << m.value << ',' << m.second_derivative << ',' << m.is_global << ','
             << m.is_degenerate << '\n';
    }
    for (const auto& f : row.report.fixed_points) {
      prefix(fixed);
      fixed << ',' << f.p << ',' << f.slope << ',' << f.stable << '\n';
    }
  }
  return {"phase_regimes.csv", "phase_maxima.csv", "phase_fixed_points.csv"};
}

// ---------------------------------------------------------------- sample

SampleResult run_sample(const ExperimentConfig& cfg) {
  const auto model = std::make_shared<const ModelParams>(cfg.model.build());
  const auto& sc = cfg.sample;
  SampleResult res;
  res.p_star = sc.p_star ? *sc.p_star : reference_p_star(*model, cfg.phase.tolerances);
  const auto family = family_for(*model, sc.family_cap);
  res.family_size = family.members.size();
  const std::size_t n = model->n;
  const std::uint64_t pairs = num_pairs(n);
  Rng rng(cfg.seed, 0);
  Chain chain(model, sample_gnp(n, res.p_star, rng));
  for (std::uint64_t t = 0, b = sweeps(sc.burn_in_sweeps, pairs); t < b; ++t) chain.step(rng);
  const std::uint64_t thin = std::max<std::uint64_t>(1, sweeps(sc.thin_sweeps, pairs));
  std::vector<Graph> graphs;
  std::vector<std::uint64_t> at;
  for (std::size_t s = 0; s < sc.samples; ++s) {
    for (std::uint64_t t = 0; t < thin; ++t) chain.step(rng);
    graphs.push_back(chain.graph());
    at.push_back(chain.steps());
  }
  // The chain is sequential; the diagnostics of each sample are not.
  res.rows.resize(graphs.size());
  parallel_for(graphs.size(), cfg.threads, [&](std::size_t s) {
    const Graph& x = graphs[s];
    SampleRow row;
    row.index = s;
    row.step = at[s];
    row.density = static_cast<double>(x.num_edges()) / static_cast<double>(pairs);
    row.r = r_extrema(x, family);
    row.gamma = row.r.min >= res.p_star - sc.eps && row.r.max <= res.p_star + sc.eps;
    row.degree_dev = max_degree_deviation(x, res.p_star);
    row.wedge = wedge_summary(x, res.p_star);
    row.max_abs_g = max_abs_g(*model, x);
    if (n <= kExactCutMaxVertices) {
      const double d = cut_distance_exact(x, res.p_star);
      row.cut = {d, d};
    } else {
      CutBoundOptions opts;
      opts.seed = cfg.seed ^ (0x9e3779b97f4a7c15ull * (s + 1));
      row.cut = cut_distance_bounds(x, res.p_star, opts);
    }
    row.exception_size = degree_exception_set(x, res.p_star, sc.delta, row.cut.upper).size();
    res.rows[s] = row;
  });
  std::size_t g = 0, d = 0, w = 0, gg = 0;
  for (const auto& row : res.rows) {
    g += row.gamma;
    d += row.degree_dev <= sc.eps;
    w += row.wedge.sup_abs <= sc.eps;
    gg += row.max_abs_g <= sc.eps / 2;
  }
  const double k = static_cast<double>(res.rows.size());
  res.gamma_rate = g / k;
  res.degree_rate = d / k;
  res.wedge_rate = w / k;
  res.g_rate = gg / k;
  if (sc.snapshots) res.graphs = std::move(graphs);
  return res;
}

std::vector<std::string> write_sample(const SampleResult& r, const std::string& dir) {
  auto out = open_out(dir, "samples.csv");
  out << "sample,step,density,r_min,r_max,gamma_member,max_degree_dev,wedge_max_dev,wedge_min_dev,wedge_sup_abs,"
         "max_abs_g,cut_lower,cut_upper,exception_set_size\n";
  for (const auto& s : r.rows)
    out << s.index << ',' << s.step << ',' << s.density << ',' << s.r.min << ',' << s.r.max << ',' << s.gamma << ','
        << s.degree_dev << ',' << s.wedge.max_dev << ',' << s.wedge.min_dev << ',' << s.wedge.sup_abs << ','
        << s.max_abs_g << ',' << s.cut.lower << ',' << s.cut.upper << ',' << s.exception_size << '\n';
  auto sum = open_out(dir, "sample_summary.csv");
  sum << "p_star,family_size,samples,gamma_rate,degree_rate,wedge_rate,g_rate\n"
      << r.p_star << ',' << r.family_size << ',' << r.rows.size() << ',' << r.gamma_rate << ',' << r.degree_rate << ','
      << r.wedge_rate << ',' << r.g_rate << '\n';
  std::vector<std::string> files{"samples.csv", "sample_summary.csv"};
  for (std::size_t i = 0; i < r.graphs.size(); ++i) {
    std::ostringstream name;
    name << "snapshots/sample_" << i << ".ergx";
    std::filesystem::create_directories(std::filesystem::path(dir) / "snapshots");
    snapshot_save(r.graphs[i], (std::filesystem::path(dir) / name.str()).string());
    files.push_back(name.str());
  }
  return files;
}

// ---------------------------------------------------------------- mix

ExactMixArm exact_mixing_curve(const ModelParams& m, double p_star, double delta, std::size_t max_steps) {
  ExactMixArm arm;
  arm.n = m.n;
  arm.p_star = p_star;
  arm.delta = delta;
  const ExactKernel kernel(m);
  const auto mu = enumerate_measure(m);
  ExactDistribution cur = product_measure(m.n, p_star);
  arm.tv.push_back(exact_tv(cur, mu));
  for (std::size_t t = 1; t <= max_steps && arm.tv.back() >= delta; ++t) {
    cur = kernel.apply(cur);
    arm.tv.push_back(exact_tv(cur, mu));
  }
  for (std::size_t t = 1; t < arm.tv.size(); ++t)
    if (arm.tv[t] > arm.tv[t - 1]) arm.monotone = false;
  if (arm.tv.back() < delta) arm.t_delta = arm.tv.size() - 1;
  const double pairs = static_cast<double>(num_pairs(m.n));
  if (arm.t_delta) arm.fitted_c = static_cast<double>(*arm.t_delta) / (pairs * std::log(pairs / delta));
  return arm;
}

MixResult run_mix(const ExperimentConfig& cfg) {
  MixResult res;
  const ModelParams base = cfg.model.build();
  const auto& mc = cfg.mix;
  for (std::size_t si = 0; si < mc.sizes.size(); ++si) {
    ModelParams m = base;
    m.n = mc.sizes[si];
    const auto model = std::make_shared<const ModelParams>(m);
    MixSize ms;
    ms.n = m.n;
    ms.times.resize(mc.replicas);
    parallel_for(mc.replicas, cfg.threads, [&](std::size_t r) {
      Rng rng(cfg.seed, (static_cast<std::uint64_t>(si) << 32) + r);
      ms.times[r] = coalescence_time(model, rng, mc.cap);
    });
    std::vector<double> all, done;
    for (const auto& t : ms.times) {
      all.push_back(t ? static_cast<double>(*t) : std::numeric_limits<double>::infinity());
      if (t) done.push_back(static_cast<double>(*t));
      else ++ms.timeouts;
    }
    ms.median = median(all);
    ms.q10 = quantile(all, 0.1);
    ms.q90 = quantile(all, 0.9);
    ms.mean = done.empty() ? std::numeric_limits<double>::infinity()
                           : std::accumulate(done.begin(), done.end(), 0.0) / static_cast<double>(done.size());
    res.sizes.push_back(std::move(ms));
  }
  if (res.sizes.size() >= 2) {
    std::vector<double> x, y;
    bool finite = true;
    for (const auto& s : res.sizes) {
      x.push_back(static_cast<double>(s.n));
      y.push_back(s.median);
      finite = finite && std::isfinite(s.median);
    }
    if (finite) res.slope = loglog_slope(x, y);
  }
  if (mc.exact_n != 0) {
    ModelParams m = base;
    m.n = mc.exact_n;
    res.exact = exact_mixing_curve(m, reference_p_star(m, cfg.phase.tolerances), mc.delta, mc.exact_max_steps);
  }
  return res;
}

std::vector<std::string> write_mix(const MixResult& r, const std::string& dir) {
  auto times = open_out(dir, "mix_times.csv");
  times << "n,replica,coalesced,steps\n";
  for (const auto& s : r.sizes)
    for (std::size_t i = 0; i < s.times.size(); ++i)
      times << s.n << ',' << i << ',' << s.times[i].has_value() << ',' << (s.times[i] ? *s.times[i] : 0) << '\n';
  auto sum = open_out(dir, "mix_summary.csv");
  sum << "n,replicas,timeouts,median,q10,q90,mean\n";
  for (const auto& s : r.sizes)
    sum << s.n << ',' << s.times.size() << ',' << s.timeouts << ',' << s.median << ',' << s.q10 << ',' << s.q90 << ','
        << s.mean << '\n';
  auto fit = open_out(dir, "mix_fit.csv");
  fit << "loglog_slope\n";
  if (r.slope) fit << *r.slope << '\n';
  else fit << "nan\n";
  std::vector<std::string> files{"mix_times.csv", "mix_summary.csv", "mix_fit.csv"};
  if (r.exact) {
    auto tv = open_out(dir, "mix_exact_tv.csv");
    tv << "t,tv\n";
    for (std::size_t t = 0; t < r.exact->tv.size(); ++t) tv << t << ',' << r.exact->tv[t] << '\n';
    auto es = open_out(dir, "mix_exact_summary.csv");
    es << "n,p_star,delta,t_delta,fitted_c,monotone\n"
       << r.exact->n << ',' << r.exact->p_star << ',' << r.exact->delta << ','
       << (r.exact->t_delta ? std::to_string(*r.exact->t_delta) : std::string("nan")) << ',' << r.exact->fitted_c
       << ',' << r.exact->monotone << '\n';
    files.push_back("mix_exact_tv.csv");
    files.push_back("mix_exact_summary.csv");
  }
  return files;
}

// ---------------------------------------------------------------- metastable

Graph metastable_initial(std::size_t n, double q, double p, Rng& rng) {
  Graph g(n);
  const std::uint64_t pairs = num_pairs(n);
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const EdgeId e = edge_from_index(i);
    if (rng.uniform() < (e.u == 0 ? q : p)) g.flip(e);
  }
  return g;
}

MetastableResult run_metastable(const ExperimentConfig& cfg) {
  const ModelParams m = cfg.model.build();
  if (m.size() != 2 || m.templates[1].kind() != TemplateKind::Triangle)
    throw std::invalid_argument("metastable experiment needs the edge-triangle model");
  const auto& mc = cfg.metastable;
  MetastableResult res;
  res.solution = solve_example_tergm(m.beta[0], m.beta[1], cfg.phase.tolerances);
  const double q = mc.q_star.value_or(res.solution.q);
  const double p = mc.p_star.value_or(res.solution.p1);
  const auto model = std::make_shared<const ModelParams>(m);
  const std::size_t n = m.n;
  const std::uint64_t pairs = num_pairs(n);
  res.steps = mc.steps.value_or(50 * pairs);
  const std::uint64_t stride = mc.stride.value_or(std::max<std::uint64_t>(1, pairs / 2));
  const TemplateFamily triangle_family{{TemplateGraph::triangle()}, 3};
  const double dn = static_cast<double>(n);
  const double mask_cost = (2.0 * dn - 1.0) / (dn * dn);

  const std::size_t arms = mc.control ? 2 : 1;
  res.runs.resize(arms * mc.replicas);
  parallel_for(res.runs.size(), cfg.threads, [&](std::size_t idx) {
    const bool treatment = idx < mc.replicas;
    const std::size_t r = treatment ? idx : idx - mc.replicas;
    Rng rng(cfg.seed, (treatment ? 0 : std::uint64_t{1} << 32) + r);
    const double start_q = treatment ? q : p;
    const double target = start_q;
    Chain chain(model, metastable_initial(n, start_q, p, rng));
    MetastableRun run;
    run.treatment = treatment;
    run.replica = r;
    run.target = target;
    std::vector<Observer> obs;
    obs.push_back({"vertex0", {"p1", "p1_min", "p1_max", "rbar_min", "rbar_max"}, [&](const Graph& x) {
                     const auto c = cavity_statistics(x, triangle_family, p);
                     return std::vector<double>{normalized_degree(x, 0), c.p1_min, c.p1_max, c.r_bar_min, c.r_bar_max};
                   }});
    obs.push_back({"omega", {"cut_upper", "in_omega"}, [&](const Graph& x) {
                     // delta <= masked distance + |S|(2n-|S|)/n^2 with S = {0}
                     const double up = restricted_cut_distance_bounds(x, {0}, p).upper + mask_cost;
                     const bool in = up <= mc.eta / 2 && std::fabs(normalized_degree(x, 0) - start_q) <= mc.eta;
                     return std::vector<double>{up, in ? 1.0 : 0.0};
                   }});
    double worst = 0.0;
    run.trajectory = run_chain(chain, res.steps, rng, obs, stride, [&](const Graph& x, std::uint64_t) {
      worst = std::max(worst, std::fabs(static_cast<double>(x.degree(0)) / dn - target));
    });
    run.max_dev = worst;
    run.persisted = worst <= mc.band;
    res.runs[idx] = std::move(run);
  });
  std::size_t t_ok = 0, c_ok = 0, c_n = 0;
  for (const auto& run : res.runs) {
    if (run.treatment) t_ok += run.persisted;
    else {
      ++c_n;
      c_ok += run.persisted;
    }
  }
  res.treatment_rate = static_cast<double>(t_ok) / static_cast<double>(mc.replicas);
  res.control_rate = c_n ? static_cast<double>(c_ok) / static_cast<double>(c_n) : 0.0;
  return res;
}

std::vector<std::string> write_metastable(const MetastableResult& r, const std::string& dir) {
  auto ts = open_out(dir, "metastable_series.csv");
  bool header = false;
  for (const auto& run : r.runs) {
    if (!header) {
      ts << "arm,replica,step";
      for (const auto& c : run.trajectory.columns) ts << ',' << c;
      ts << '\n';
      header = true;
    }
    for (std::size_t i = 0; i < run.trajectory.steps.size(); ++i) {
      ts << (run.treatment ? "treatment" : "control") << ',' << run.replica << ',' << run.trajectory.steps[i];
      for (double v : run.trajectory.rows[i]) ts << ',' << v;
      ts << '\n';
    }
  }
  auto runs = open_out(dir, "metastable_runs.csv");
  runs << "arm,replica,target,max_dev,persisted\n";
  for (const auto& run : r.runs)
    runs << (run.treatment ? "treatment" : "control") << ',' << run.replica << ',' << run.target << ','
         << run.max_dev << ',' << run.persisted << '\n';
  auto sum = open_out(dir, "metastable_summary.csv");
  sum << "p1_star,p2_star,q_star,f_slope_p1,g_slope_q,steps,treatment_rate,control_rate\n"
      << r.solution.p1 << ',' << r.solution.p2 << ',' << r.solution.q << ',' << r.solution.f_slope_p1 << ','
      << r.solution.g_slope_q << ',' << r.steps << ',' << r.treatment_rate << ',' << r.control_rate << '\n';
  return {"metastable_series.csv", "metastable_runs.csv", "metastable_summary.csv"};
}

// ---------------------------------------------------------------- diag

DiagResult run_diag(const ExperimentConfig& cfg, const Graph& x) {
  ModelParams m = cfg.model.build();
  m.n = x.num_vertices();
  DiagResult res;
  res.p_star = cfg.diag.p_star ? *cfg.diag.p_star : reference_p_star(m, cfg.phase.tolerances);
  ConcentrationOptions opts;
  opts.p_star = res.p_star;
  opts.eps = cfg.diag.eps;
  opts.delta = cfg.diag.delta;
  res.report = concentration_report(m, x, family_for(m, cfg.diag.family_cap), opts);
  return res;
}

std::vector<std::string> write_diag(const DiagResult& r, const std::string& dir) {
  const auto& rep = r.report;
  auto out = open_out(dir, "diag_report.csv");
  out << "p_star,r_min,r_max,gamma_member,wedge_max_dev,wedge_min_dev,wedge_sup_abs,exception_set_size,cut_exact,"
         "cut_lower,cut_upper,r_bar_min,r_bar_max,p1_min,p1_max,max_abs_g\n"
      << r.p_star << ',' << rep.r.min << ',' << rep.r.max << ',' << rep.gamma_member << ',' << rep.wedge.max_dev << ','
      << rep.wedge.min_dev << ',' << rep.wedge.sup_abs << ',' << rep.exception_set_size << ','
      << (rep.cut_exact ? std::to_string(*rep.cut_exact) : std::string("nan")) << ',' << rep.cut_bounds.lower << ','
      << rep.cut_bounds.upper << ',' << rep.cavity.r_bar_min << ',' << rep.cavity.r_bar_max << ','
      << rep.cavity.p1_min << ',' << rep.cavity.p1_max << ',' << rep.max_abs_g << '\n';
  auto deg = open_out(dir, "diag_degrees.csv");
  deg << "vertex,p_u\n";
  for (std::size_t u = 0; u < rep.p_u.size(); ++u) deg << u << ',' << rep.p_u[u] << '\n';
  return {"diag_report.csv", "diag_degrees.csv"};
}

// ---------------------------------------------------------------- validate

bool ValidationResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

TemplateGraph random_template(Rng& rng) {
  switch (rng.below(6)) {
    case 0: return TemplateGraph::edge();
    case 1: return TemplateGraph::star(2 + rng.below(3));
    case 2: return TemplateGraph::triangle();
    case 3: return TemplateGraph::cycle(4);
    default: break;
  }
  while (true) {
    const std::size_t k = 3 + rng.below(3);
    std::vector<TemplateGraph::Edge> edges;
    for (std::size_t j = 1; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (rng.uniform() < 0.5) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    if (!edges.empty()) return TemplateGraph(k, edges);
  }
}

template <class F>
void timed(ValidationResult& res, const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  ValidationCheck c;
  c.name = name;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.checks.push_back(std::move(c));
}

}  // namespace

ValidationResult run_validation(const ExperimentConfig& cfg) {
  ValidationResult res;
  const std::uint64_t seed = cfg.seed;
  const ModelParams low = ModelParams::edge_triangle(-1.8, 2.0, 4);

  timed(res, "edge_only_exactness", [&](ValidationCheck& c) {
    const auto m = ModelParams::make({-0.5}, {}, 4);
    const double tv = exact_tv(enumerate_measure(m), product_measure(4, logistic(-1.0)));
    c.pass = tv <= 1e-10;
    c.detail = "tv=" + fmt(tv);
  });

  timed(res, "detailed_balance", [&](ValidationCheck& c) {
    const double v = verify_detailed_balance(low);
    c.pass = v <= 1e-12;
    c.detail = "max_violation=" + fmt(v);
  });

  timed(res, "detailed_balance_detects_corruption", [&](ValidationCheck& c) {
    const double v = verify_detailed_balance(low, [](const Graph&, EdgeId, double phi) {
      return std::min(1.0, phi + 1e-3);
    });
    c.pass = v > 1e-4;
    c.detail = "corrupted max_violation=" + fmt(v);
  });

  if (cfg.validate.negative_control) {
    timed(res, "negative_control_detailed_balance", [&](ValidationCheck& c) {
      const double v = verify_detailed_balance(low, [](const Graph&, EdgeId, double phi) {
        return std::min(1.0, phi + 1e-3);
      });
      c.pass = v <= 1e-12;
      c.detail = "corrupted kernel, max_violation=" + fmt(v);
    });
  }

  timed(res, "conditional_matches_enumeration", [&](ValidationCheck& c) {
    const auto h = enumerate_hamiltonian(low);
    double worst = 0.0;
    for (std::uint32_t s = 0; s < h.size(); ++s) {
      const Graph g = graph_from_state(4, s);
      for (std::size_t i = 0; i < 6; ++i) {
        const std::uint32_t plus = s | (1u << i), minus = s & ~(1u << i);
        const double want = logistic(h[plus] - h[minus]);
        worst = std::max(worst, std::fabs(conditional_prob(low, g, edge_from_index(i)) - want));
      }
    }
    c.pass = worst <= 1e-12;
    c.detail = "max_abs_diff=" + fmt(worst);
  });

  timed(res, "delta_equivalence", [&](ValidationCheck& c) {
    Rng rng(seed, 101);
    std::size_t bad = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.validate.delta_cases; ++i) {
      const auto h = random_template(rng);
      const std::size_t n = 3 + rng.below(h.num_vertices() >= 5 ? 10 : 18);
      const Graph x = sample_gnp(n, rng.uniform(), rng);
      const EdgeId e = edge_from_index(rng.below(x.num_pairs()));
      const double scale = density_scale(n, h.num_vertices());
      const double fast = delta_hom(h, x, e);
      const double slow = static_cast<double>(delta_count_naive(h, x, e)) / scale;
      const double diff = std::fabs(fast - slow);
      worst = std::max(worst, diff);
      if (diff > 1e-12) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(bad) + " mismatches, max_abs_diff=" + fmt(worst);
  });

  timed(res, "landscape_fixed_points", [&](ValidationCheck& c) {
    Rng rng(seed, 102);
    std::size_t bad = 0, maxima = 0;
    const std::vector<TemplateGraph> pool{TemplateGraph::two_star(), TemplateGraph::triangle()};
    for (int i = 0; i < 100; ++i) {
      std::vector<double> beta{-3.0 + 4.0 * rng.uniform()};
      std::vector<TemplateGraph> extra;
      const std::size_t k = 1 + rng.below(2);
      for (std::size_t j = 0; j < k; ++j) {
        extra.push_back(pool[k == 2 ? j : rng.below(2)]);
        beta.push_back(3.0 * rng.uniform());
      }
      const auto m = ModelParams::make(beta, extra, 10);
      for (const auto& mx : analyze_landscape(m).maxima) {
        if (mx.is_degenerate) continue;
        ++maxima;
        if (std::fabs(phi_beta(m, mx.p) - mx.p) > 1e-8 || phi_beta_derivative(m, mx.p) > 1.0 + 1e-8) ++bad;
      }
    }
    c.pass = bad == 0;
    c.detail = std::to_string(bad) + " of " + std::to_string(maxima) + " maxima off";
  });

  timed(res, "example_tergm", [&](ValidationCheck& c) {
    const auto s = solve_example_tergm(-1.8, 2.0);
    c.pass = std::fabs(s.p1 - 0.9997739607124451878) <= 1e-9 && std::fabs(s.p2 - 0.026821405176543805482) <= 1e-9 &&
             std::fabs(s.q - 0.044554300947563996211) <= 1e-9;
    c.detail = "p1=" + fmt(s.p1) + " p2=" + fmt(s.p2) + " q=" + fmt(s.q);
  });

  timed(res, "restricted_kernel_stationary", [&](ValidationCheck& c) {
    const auto m = ModelParams::edge_triangle(-0.3, 0.8, 5);
    const Ball ball{reference_p_star(m), 0.3};
    const auto target = condition_on_ball(enumerate_measure(m), ball);
    const double tv = exact_tv(ExactKernel(m, ball).apply(target), target);
    c.pass = tv <= 1e-12;
    c.detail = "tv=" + fmt(tv);
  });

  timed(res, "exact_mixing_curve", [&](ValidationCheck& c) {
    const auto m = ModelParams::edge_triangle(-0.3, 0.8, 5);
    const auto arm = exact_mixing_curve(m, reference_p_star(m), 1e-4, 20000);
    res.tv_curve = arm.tv;
    c.pass = arm.monotone && arm.t_delta && arm.fitted_c <= 20.0;
    c.detail = "t_delta=" + (arm.t_delta ? std::to_string(*arm.t_delta) : std::string("none")) +
               " C=" + fmt(arm.fitted_c) + " monotone=" + (arm.monotone ? "yes" : "no");
  });

  timed(res, "cut_exact_vs_naive", [&](ValidationCheck& c) {
    Rng rng(seed, 103);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
      const Graph x = sample_gnp(8, rng.uniform(), rng);
      const double p = rng.uniform();
      if (cut_distance_exact(x, p) != cut_distance_naive(x, p)) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(bad) + " of 100 differ";
  });

  timed(res, "cut_bounds_bracket", [&](ValidationCheck& c) {
    Rng rng(seed, 104);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
      const Graph x = sample_gnp(12, rng.uniform(), rng);
      const double p = rng.uniform();
      const double d = cut_distance_exact(x, p);
      const auto b = cut_distance_bounds(x, p);
      if (!(b.lower <= d && d <= b.upper)) ++bad;
    }
    c.pass = bad == 0;
    c.detail = std::to_string(bad) + " of 100 outside";
  });

  timed(res, "coupon_collector", [&](ValidationCheck& c) {
    const std::size_t n = 8, reps = 400;
    const auto m = std::make_shared<const ModelParams>(ModelParams::make({0.0}, {}, n));
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      Rng rng(seed, 1000 + r);
      sum += static_cast<double>(coalescence_time(m, rng, 1'000'000).value_or(1'000'000));
    }
    const double pairs = static_cast<double>(num_pairs(n));
    // Coupon collector over N coupons: sum of geometric waits with success i/N.
    double mean = 0.0, var = 0.0;
    for (int i = 1; i <= static_cast<int>(pairs); ++i) {
      const double p = i / pairs;
      mean += 1.0 / p;
      var += (1.0 - p) / (p * p);
    }
    const double se = std::sqrt(var / static_cast<double>(reps));
    const double got = sum / static_cast<double>(reps);
    c.pass = std::fabs(got - mean) <= 3.0 * se;
    c.detail = "mean=" + fmt(got) + " expected=" + fmt(mean) + " 3se=" + fmt(3 * se);
  });

  timed(res, "g_statistic_fast_vs_slow", [&](ValidationCheck& c) {
    Rng rng(seed, 105);
    const auto m = ModelParams::edge_triangle(-0.3, 0.8, 12);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Graph x = sample_gnp(12, rng.uniform(), rng);
      double fast = 0.0, slow = 0.0;
      fast = max_abs_g(m, x);
      for (Vertex v = 1; v < 12; ++v)
        for (Vertex u = 0; u < v; ++u) slow = std::max(slow, std::fabs(g_uv_statistic(m, x, u, v)));
      worst = std::max(worst, std::fabs(fast - slow));
    }
    c.pass = worst <= 1e-12;
    c.detail = "max_abs_diff=" + fmt(worst);
  });

  return res;
}

std::vector<std::string> write_validation(const ValidationResult& r, const std::string& dir) {
  auto out = open_out(dir, "validate.csv");
  out << "check,pass,seconds,detail\n";
  for (const auto& c : r.checks) out << c.name << ',' << c.pass << ',' << c.seconds << ",\"" << c.detail << "\"\n";
  auto tv = open_out(dir, "validate_tv_curve.csv");
  tv << "t,tv\n";
  for (std::size_t t = 0; t < r.tv_curve.size(); ++t) tv << t << ',' << r.tv_curve[t] << '\n';
  return {"validate.csv", "validate_tv_curve.csv"};
}

}  // namespace ergm

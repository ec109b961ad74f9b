// Command-line front end: phase | sample | mix | metastable | diag | validate.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ergm/config.hpp"
#include "ergm/experiments.hpp"
#include "ergm/manifest.hpp"

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
};

ergm::ExperimentConfig resolve(const Globals& g) {
  ergm::ExperimentConfig cfg = g.config.empty() ? ergm::ExperimentConfig{} : ergm::load_config(g.config);
  if (g.seed) cfg.seed = *g.seed;
  if (g.out) cfg.out = *g.out;
  if (g.threads) cfg.threads = *g.threads;
  cfg.check();
  return cfg;
}

void finish(const std::string& command, const ergm::ExperimentConfig& cfg, const std::string& started,
            const std::vector<std::string>& files) {
  ergm::RunManifest man;
  man.command = command;
  const std::string canonical = ergm::config_to_json(cfg);
  man.config_hash = "fnv1a64:" + ergm::hex64(ergm::fnv1a64(canonical));
  man.seed = cfg.seed;
  man.started = started;
  {
    std::ofstream c(std::filesystem::path(cfg.out) / "config.json");
    c << canonical << '\n';
  }
  man.add_output(cfg.out, "config.json");
  for (const auto& f : files) man.add_output(cfg.out, f);
  man.finished = ergm::utc_timestamp();
  std::ofstream m(std::filesystem::path(cfg.out) / "manifest.json");
  m << man.to_json() << '\n';
  std::cout << "wrote " << files.size() + 2 << " files to " << cfg.out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ERGM sampling and analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "JSON experiment config");
  app.add_option("--seed", g.seed, "RNG seed (overrides the config)");
  app.add_option("--out", g.out, "output directory (overrides the config)");
  app.add_option("--threads", g.threads, "worker threads for replicas")->check(CLI::PositiveNumber);

  auto* phase = app.add_subcommand("phase", "landscape analysis and regime classification");
  auto* sample = app.add_subcommand("sample", "stationary samples with concentration diagnostics");
  auto* mix = app.add_subcommand("mix", "coalescence-time sweep and exact TV curve");
  auto* meta = app.add_subcommand("metastable", "persistence of the two-density initial state");
  auto* diag = app.add_subcommand("diag", "concentration report for a graph snapshot");
  std::string snapshot;
  diag->add_option("--snapshot", snapshot, "snapshot file (overrides diag.snapshot)");
  auto* validate = app.add_subcommand("validate", "oracle suite; nonzero exit on any failure");
  bool negative = false;
  validate->add_flag("--negative-control", negative, "corrupt the kernel; the suite must then fail");

  CLI11_PARSE(app, argc, argv);

  try {
    ergm::ExperimentConfig cfg = resolve(g);
    std::filesystem::create_directories(cfg.out);
    const std::string started = ergm::utc_timestamp();
    if (*phase) {
      const auto r = ergm::run_phase(cfg);
      for (const auto& row : r.rows) {
        std::cout << "beta=(";
        for (std::size_t i = 0; i < row.beta.size(); ++i) std::cout << (i ? "," : "") << row.beta[i];
        std::cout << ") regime=" << ergm::to_string(row.report.regime) << " maxima=" << row.report.maxima.size()
                  << '\n';
      }
      if (r.first_low) std::cout << "first Low regime at sweep value " << *r.first_low << '\n';
      finish("phase", cfg, started, ergm::write_phase(r, cfg.out));
    } else if (*sample) {
      const auto r = ergm::run_sample(cfg);
      std::printf("p*=%.6f samples=%zu gamma=%.3f degree=%.3f wedge=%.3f g=%.3f\n", r.p_star, r.rows.size(),
                  r.gamma_rate, r.degree_rate, r.wedge_rate, r.g_rate);
      finish("sample", cfg, started, ergm::write_sample(r, cfg.out));
    } else if (*mix) {
      const auto r = ergm::run_mix(cfg);
      for (const auto& s : r.sizes)
        std::printf("n=%zu median=%.1f timeouts=%zu\n", s.n, s.median, s.timeouts);
      if (r.slope) std::printf("log-log slope=%.4f\n", *r.slope);
      if (r.exact)
        std::printf("exact n=%zu: t_delta=%s C=%.4f monotone=%s\n", r.exact->n,
                    r.exact->t_delta ? std::to_string(*r.exact->t_delta).c_str() : "none", r.exact->fitted_c,
                    r.exact->monotone ? "yes" : "no");
      finish("mix", cfg, started, ergm::write_mix(r, cfg.out));
    } else if (*meta) {
      const auto r = ergm::run_metastable(cfg);
      std::printf("p1*=%.10f p2*=%.10f q*=%.10f treatment=%.3f control=%.3f\n", r.solution.p1, r.solution.p2,
                  r.solution.q, r.treatment_rate, r.control_rate);
      finish("metastable", cfg, started, ergm::write_metastable(r, cfg.out));
    } else if (*diag) {
      if (!snapshot.empty()) cfg.diag.snapshot = snapshot;
      if (cfg.diag.snapshot.empty()) throw ergm::ConfigError("diag needs --snapshot or diag.snapshot");
      const auto x = ergm::snapshot_load(cfg.diag.snapshot);
      const auto r = ergm::run_diag(cfg, x);
      std::printf("n=%zu p*=%.6f r=[%.4f, %.4f] gamma_member=%d cut=[%.4f, %.4f]\n", x.num_vertices(), r.p_star,
                  r.report.r.min, r.report.r.max, r.report.gamma_member ? 1 : 0, r.report.cut_bounds.lower,
                  r.report.cut_bounds.upper);
      finish("diag", cfg, started, ergm::write_diag(r, cfg.out));
    } else if (*validate) {
      if (negative) cfg.validate.negative_control = true;
      const auto r = ergm::run_validation(cfg);
      for (const auto& c : r.checks)
        std::printf("%-40s %s  %8.2fs  %s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.seconds, c.detail.c_str());
      finish("validate", cfg, started, ergm::write_validation(r, cfg.out));
      return r.all_pass() ? 0 : 1;
    }
  } catch (const ergm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

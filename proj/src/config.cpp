#include "ergm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ergm {
namespace {

using nlohmann::json;

// Reads one JSON object, tracking which keys were consumed so that leftovers
// can be reported as unknown.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }
  // Optional section: null reads as absent.
  bool has_section(const char* key) {
    if (!j_.contains(key)) return false;
    if (!j_.at(key).is_null()) return true;
    used_.insert(key);
    return false;
  }

  void get(const char* key, double& out) { read(key, [&](const json& v) { out = number(v, key); }); }
  void get(const char* key, bool& out) {
    read(key, [&](const json& v) {
      if (!v.is_boolean()) fail(key, "expected true or false");
      out = v.get<bool>();
    });
  }
  void get(const char* key, std::string& out) {
    read(key, [&](const json& v) {
      if (!v.is_string()) fail(key, "expected a string");
      out = v.get<std::string>();
    });
  }
  void get(const char* key, std::uint64_t& out) { read(key, [&](const json& v) { out = count(v, key); }); }
  void get(const char* key, std::vector<double>& out) {
    read(key, [&](const json& v) {
      if (!v.is_array()) fail(key, "expected an array of numbers");
      out.clear();
      for (const auto& x : v) out.push_back(number(x, key));
    });
  }
  void get(const char* key, std::vector<std::uint64_t>& out) {
    read(key, [&](const json& v) {
      if (!v.is_array()) fail(key, "expected an array of integers");
      out.clear();
      for (const auto& x : v) out.push_back(count(x, key));
    });
  }
  void get(const char* key, std::vector<std::string>& out) {
    read(key, [&](const json& v) {
      if (!v.is_array()) fail(key, "expected an array of strings");
      out.clear();
      for (const auto& x : v) {
        if (!x.is_string()) fail(key, "expected an array of strings");
        out.push_back(x.get<std::string>());
      }
    });
  }
  template <class T>
  void get(const char* key, std::optional<T>& out) {
    if (!j_.contains(key)) return;
    if (j_.at(key).is_null()) {
      used_.insert(key);
      out.reset();
      return;
    }
    T v{};
    get(key, v);
    out = v;
  }

  Reader child(const char* key) {
    used_.insert(key);
    return Reader(j_.at(key), where() + "." + key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw ConfigError(where() + ": unknown key '" + k + "'");
  }

 private:
  template <class F>
  void read(const char* key, F&& f) {
    if (!j_.contains(key)) return;
    used_.insert(key);
    f(j_.at(key));
  }
  std::string where() const { return path_.empty() ? "config" : path_; }
  [[noreturn]] void fail(const char* key, const std::string& msg) const {
    throw ConfigError(where() + "." + key + ": " + msg);
  }
  double number(const json& v, const char* key) const {
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
  }
  std::uint64_t count(const json& v, const char* key) const {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) fail(key, "must be nonnegative");
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
    fail(key, "expected a nonnegative integer");
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void read_model(Reader r, ModelSpec& m) {
  r.get("beta", m.beta);
  r.get("templates", m.templates);
  r.get("n", m.n);
  r.finish();
}

void read_tolerances(Reader r, LandscapeTolerances& t) {
  r.get("grid_size", t.grid_size);
  r.get("root_tol", t.root_tol);
  r.get("margin", t.margin);
  r.get("degenerate", t.degenerate);
  r.get("global_value", t.global_value);
  r.get("match", t.match);
  r.finish();
}

void read_phase(Reader r, PhaseConfig& p) {
  if (r.has_section("sweep")) {
    Reader s = r.child("sweep");
    SweepSpec sw;
    s.get("index", sw.index);
    s.get("from", sw.from);
    s.get("to", sw.to);
    s.get("points", sw.points);
    s.finish();
    p.sweep = sw;
  }
  if (r.has("tolerances")) read_tolerances(r.child("tolerances"), p.tolerances);
  r.finish();
}

void read_sample(Reader r, SampleConfig& s) {
  r.get("burn_in_sweeps", s.burn_in_sweeps);
  r.get("thin_sweeps", s.thin_sweeps);
  r.get("samples", s.samples);
  r.get("eps", s.eps);
  r.get("delta", s.delta);
  r.get("p_star", s.p_star);
  r.get("family_cap", s.family_cap);
  r.get("snapshots", s.snapshots);
  r.finish();
}

void read_mix(Reader r, MixConfig& m) {
  r.get("sizes", m.sizes);
  r.get("replicas", m.replicas);
  r.get("cap", m.cap);
  r.get("exact_n", m.exact_n);
  r.get("delta", m.delta);
  r.get("exact_max_steps", m.exact_max_steps);
  r.finish();
}

void read_metastable(Reader r, MetastableConfig& m) {
  r.get("steps", m.steps);
  r.get("replicas", m.replicas);
  r.get("stride", m.stride);
  r.get("eta", m.eta);
  r.get("band", m.band);
  r.get("q_star", m.q_star);
  r.get("p_star", m.p_star);
  r.get("control", m.control);
  r.finish();
}

void read_diag(Reader r, DiagConfig& d) {
  r.get("snapshot", d.snapshot);
  r.get("eps", d.eps);
  r.get("delta", d.delta);
  r.get("p_star", d.p_star);
  r.get("family_cap", d.family_cap);
  r.finish();
}

void read_validate(Reader r, ValidateConfig& v) {
  r.get("negative_control", v.negative_control);
  r.get("delta_cases", v.delta_cases);
  r.finish();
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

void check_prob(const std::optional<double>& p, const std::string& name) {
  if (p && !(*p >= 0.0 && *p <= 1.0)) throw ConfigError(name + " must lie in [0,1]");
}

}  // namespace

ModelParams ModelSpec::build() const {
  std::vector<TemplateGraph> extra;
  extra.reserve(templates.size());
  for (const auto& t : templates) {
    try {
      extra.push_back(TemplateGraph::parse(t));
    } catch (const std::exception& e) {
      throw ConfigError("model.templates: " + std::string(e.what()));
    }
  }
  try {
    return ModelParams::make(beta, std::move(extra), n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model: " + std::string(e.what()));
  }
}

void ExperimentConfig::check() const {
  (void)model.build();
  if (model.n < 2) throw ConfigError("model.n must be at least 2");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (sample.samples < 1) throw ConfigError("sample.samples must be at least 1");
  if (!(sample.burn_in_sweeps >= 0.0) || !(sample.thin_sweeps > 0.0))
    throw ConfigError("sample.burn_in_sweeps must be >= 0 and sample.thin_sweeps > 0");
  if (!(sample.eps > 0.0)) throw ConfigError("sample.eps must be positive");
  if (!(sample.delta > 0.0 && sample.delta <= 1.0)) throw ConfigError("sample.delta must lie in (0,1]");
  check_prob(sample.p_star, "sample.p_star");
  if (mix.replicas < 1) throw ConfigError("mix.replicas must be at least 1");
  if (mix.cap < 1) throw ConfigError("mix.cap must be at least 1");
  for (auto n : mix.sizes)
    if (n < 2) throw ConfigError("mix.sizes entries must be at least 2");
  if (mix.exact_n != 0 && (mix.exact_n < 2 || mix.exact_n > 6)) throw ConfigError("mix.exact_n must be 0 or in [2,6]");
  if (!(mix.delta > 0.0 && mix.delta < 1.0)) throw ConfigError("mix.delta must lie in (0,1)");
  if (metastable.replicas < 1) throw ConfigError("metastable.replicas must be at least 1");
  if (metastable.steps && *metastable.steps < 1) throw ConfigError("metastable.steps must be at least 1");
  if (metastable.stride && *metastable.stride < 1) throw ConfigError("metastable.stride must be at least 1");
  if (!(metastable.eta > 0.0) || !(metastable.band > 0.0)) throw ConfigError("metastable.eta and band must be positive");
  check_prob(metastable.q_star, "metastable.q_star");
  check_prob(metastable.p_star, "metastable.p_star");
  check_prob(diag.p_star, "diag.p_star");
  if (phase.sweep) {
    if (phase.sweep->index >= model.beta.size()) throw ConfigError("phase.sweep.index is out of range for model.beta");
    if (phase.sweep->points < 1) throw ConfigError("phase.sweep.points must be at least 1");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  Reader r(j, "");
  if (r.has("model")) read_model(r.child("model"), cfg.model);
  r.get("seed", cfg.seed);
  r.get("out", cfg.out);
  r.get("threads", cfg.threads);
  if (r.has("phase")) read_phase(r.child("phase"), cfg.phase);
  if (r.has("sample")) read_sample(r.child("sample"), cfg.sample);
  if (r.has("mix")) read_mix(r.child("mix"), cfg.mix);
  if (r.has("metastable")) read_metastable(r.child("metastable"), cfg.metastable);
  if (r.has("diag")) read_diag(r.child("diag"), cfg.diag);
  if (r.has("validate")) read_validate(r.child("validate"), cfg.validate);
  r.finish();
  cfg.check();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = {{"beta", c.model.beta}, {"templates", c.model.templates}, {"n", c.model.n}};
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["threads"] = c.threads;
  const auto& t = c.phase.tolerances;
  json phase = {{"tolerances",
                 {{"grid_size", t.grid_size},
                  {"root_tol", t.root_tol},
                  {"margin", t.margin},
                  {"degenerate", t.degenerate},
                  {"global_value", t.global_value},
                  {"match", t.match}}}};
  phase["sweep"] = c.phase.sweep ? json{{"index", c.phase.sweep->index},
                                        {"from", c.phase.sweep->from},
                                        {"to", c.phase.sweep->to},
                                        {"points", c.phase.sweep->points}}
                                 : json(nullptr);
  j["phase"] = phase;
  j["sample"] = {{"burn_in_sweeps", c.sample.burn_in_sweeps}, {"thin_sweeps", c.sample.thin_sweeps},
                 {"samples", c.sample.samples},               {"eps", c.sample.eps},
                 {"delta", c.sample.delta},                   {"p_star", opt(c.sample.p_star)},
                 {"family_cap", c.sample.family_cap},         {"snapshots", c.sample.snapshots}};
  j["mix"] = {{"sizes", c.mix.sizes}, {"replicas", c.mix.replicas}, {"cap", c.mix.cap},
              {"exact_n", c.mix.exact_n}, {"delta", c.mix.delta}, {"exact_max_steps", c.mix.exact_max_steps}};
  j["metastable"] = {{"steps", opt(c.metastable.steps)}, {"replicas", c.metastable.replicas},
                     {"stride", opt(c.metastable.stride)}, {"eta", c.metastable.eta},
                     {"band", c.metastable.band},         {"q_star", opt(c.metastable.q_star)},
                     {"p_star", opt(c.metastable.p_star)}, {"control", c.metastable.control}};
  j["diag"] = {{"snapshot", c.diag.snapshot}, {"eps", c.diag.eps}, {"delta", c.diag.delta},
               {"p_star", opt(c.diag.p_star)}, {"family_cap", c.diag.family_cap}};
  j["validate"] = {{"negative_control", c.validate.negative_control}, {"delta_cases", c.validate.delta_cases}};
  return j.dump(2);
}

}  // namespace ergm

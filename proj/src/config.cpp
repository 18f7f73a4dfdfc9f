#include "ratefp/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include <json.hpp>

#include "ratefp/sha256.hpp"

namespace ratefp {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& scope,
                    const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw ValidationError(scope.empty() ? it.key() : scope + "." + it.key(), "unknown key");
}

double num(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ValidationError(field, "expected an integer");
  return j.get<int>();
}

void parse_model(const json& m, ModelParams& p) {
  reject_unknown(m, "model",
                 {"nu_c", "alpha", "w", "w_hat", "lambda", "delta_lambda", "lambda1", "lambda2",
                  "beta", "nu_max"});
  const bool has_pair = m.contains("lambda1") || m.contains("lambda2");
  const bool has_base = m.contains("lambda") || m.contains("delta_lambda");
  if (has_pair && has_base)
    throw ValidationError("model.lambda", "give either lambda/delta_lambda or lambda1/lambda2");
  if (m.contains("nu_c")) p.nu_c = num(m["nu_c"], "nu_c");
  if (m.contains("alpha")) p.alpha = num(m["alpha"], "alpha");
  if (m.contains("w")) p.w = num(m["w"], "w");
  if (m.contains("w_hat")) p.w_hat = num(m["w_hat"], "w_hat");
  if (m.contains("beta")) p.beta = num(m["beta"], "beta");
  if (m.contains("nu_max")) p.nu_max = num(m["nu_max"], "nu_max");
  if (has_base) {
    double base = p.lambda2;  // current base stimulus
    double delta = p.lambda1 - p.lambda2;
    if (m.contains("lambda")) base = num(m["lambda"], "lambda");
    if (m.contains("delta_lambda")) delta = num(m["delta_lambda"], "delta_lambda");
    p.lambda1 = base + delta;
    p.lambda2 = base;
  }
  if (m.contains("lambda1")) p.lambda1 = num(m["lambda1"], "lambda1");
  if (m.contains("lambda2")) p.lambda2 = num(m["lambda2"], "lambda2");
}

void parse_numerics(const json& n, NumericsConfig& c) {
  reject_unknown(n, "numerics",
                 {"fp2d_n", "fp2d_dt", "fp2d_scheme", "manifold_n", "fp1d_dt", "t_end",
                  "snapshot_every", "p0_sd", "sde_dt", "sde_paths", "sde_t_end", "horizon",
                  "histogram_n", "equilibrium_grid_n", "threads", "trajectory_stride"});
  if (n.contains("fp2d_n")) c.fp2d_n = integer(n["fp2d_n"], "numerics.fp2d_n");
  if (n.contains("fp2d_dt")) c.fp2d_dt = num(n["fp2d_dt"], "numerics.fp2d_dt");
  if (n.contains("fp2d_scheme")) {
    c.fp2d_scheme = n["fp2d_scheme"].get<std::string>();
    if (c.fp2d_scheme != "implicit" && c.fp2d_scheme != "explicit")
      throw ValidationError("numerics.fp2d_scheme", "must be 'implicit' or 'explicit'");
  }
  if (n.contains("manifold_n")) c.manifold_n = integer(n["manifold_n"], "numerics.manifold_n");
  if (n.contains("fp1d_dt")) c.fp1d_dt = num(n["fp1d_dt"], "numerics.fp1d_dt");
  if (n.contains("t_end")) c.t_end = num(n["t_end"], "numerics.t_end");
  if (n.contains("snapshot_every"))
    c.snapshot_every = num(n["snapshot_every"], "numerics.snapshot_every");
  if (n.contains("p0_sd")) c.p0_sd = num(n["p0_sd"], "numerics.p0_sd");
  if (n.contains("sde_dt")) c.sde_dt = num(n["sde_dt"], "numerics.sde_dt");
  if (n.contains("sde_paths")) c.sde_paths = integer(n["sde_paths"], "numerics.sde_paths");
  if (n.contains("sde_t_end")) c.sde_t_end = num(n["sde_t_end"], "numerics.sde_t_end");
  if (n.contains("horizon")) c.horizon = num(n["horizon"], "numerics.horizon");
  if (n.contains("histogram_n")) c.histogram_n = integer(n["histogram_n"], "numerics.histogram_n");
  if (n.contains("equilibrium_grid_n"))
    c.equilibrium_grid_n = integer(n["equilibrium_grid_n"], "numerics.equilibrium_grid_n");
  if (n.contains("threads")) c.threads = integer(n["threads"], "numerics.threads");
  if (n.contains("trajectory_stride"))
    c.trajectory_stride = num(n["trajectory_stride"], "numerics.trajectory_stride");
}

void parse_three_well(const json& t, ThreeWellParams& p) {
  reject_unknown(t, "three_well",
                 {"w_plus", "w_plus_critical", "kappa_scale", "bias_gain", "y_max", "n_nodes"});
  if (t.contains("w_plus")) p.w_plus = num(t["w_plus"], "three_well.w_plus");
  if (t.contains("w_plus_critical"))
    p.w_plus_critical = num(t["w_plus_critical"], "three_well.w_plus_critical");
  if (t.contains("kappa_scale")) p.kappa_scale = num(t["kappa_scale"], "three_well.kappa_scale");
  if (t.contains("bias_gain")) p.bias_gain = num(t["bias_gain"], "three_well.bias_gain");
  if (t.contains("y_max")) p.y_max = num(t["y_max"], "three_well.y_max");
  if (t.contains("n_nodes")) p.n_nodes = integer(t["n_nodes"], "three_well.n_nodes");
}

}  // namespace

void ExperimentConfig::validate(bool sweep_mode) const {
  model.validate();
  if (three_well) three_well->validate();
  if (backends.empty()) throw ValidationError("backends", "select at least one backend");
  for (const std::string& b : backends)
    if (b != "sde" && b != "fp2d" && b != "reduced")
      throw ValidationError("backends", "unknown backend '" + b + "'");
  if (three_well)
    for (const std::string& b : backends)
      if (b == "fp2d")
        throw ValidationError("backends",
                              "the three-well family is a reduced model; fp2d does not apply");
  if (sweep_mode && sweep.delta_lambda.empty())
    throw ValidationError("sweep.delta_lambda", "sweep mode needs a nonempty list");
  if (numerics.fp2d_n < 8) throw ValidationError("numerics.fp2d_n", "need >= 8 cells");
  if (!(numerics.fp2d_dt > 0.0)) throw ValidationError("numerics.fp2d_dt", "must be > 0");
  if (!(numerics.fp1d_dt > 0.0)) throw ValidationError("numerics.fp1d_dt", "must be > 0");
  if (!(numerics.sde_dt > 0.0)) throw ValidationError("numerics.sde_dt", "must be > 0");
  if (numerics.sde_paths < 1) throw ValidationError("numerics.sde_paths", "must be >= 1");
  if (!(numerics.t_end >= 0.0)) throw ValidationError("numerics.t_end", "must be >= 0");
  if (numerics.manifold_n < 3) throw ValidationError("numerics.manifold_n", "need >= 3 nodes");
}

std::string ExperimentConfig::canonical_json() const {
  json j;
  j["model"] = {{"nu_c", model.nu_c},     {"alpha", model.alpha},   {"w", model.w},
                {"w_hat", model.w_hat},   {"lambda1", model.lambda1},
                {"lambda2", model.lambda2}, {"beta", model.beta},   {"nu_max", model.nu_max}};
  if (three_well)
    j["three_well"] = {{"w_plus", three_well->w_plus},
                       {"w_plus_critical", three_well->w_plus_critical},
                       {"kappa_scale", three_well->kappa_scale},
                       {"bias_gain", three_well->bias_gain},
                       {"y_max", three_well->y_max},
                       {"n_nodes", three_well->n_nodes}};
  j["numerics"] = {{"fp2d_n", numerics.fp2d_n},
                   {"fp2d_dt", numerics.fp2d_dt},
                   {"fp2d_scheme", numerics.fp2d_scheme},
                   {"manifold_n", numerics.manifold_n},
                   {"fp1d_dt", numerics.fp1d_dt},
                   {"t_end", numerics.t_end},
                   {"snapshot_every", numerics.snapshot_every},
                   {"p0_sd", numerics.p0_sd},
                   {"sde_dt", numerics.sde_dt},
                   {"sde_paths", numerics.sde_paths},
                   {"sde_t_end", numerics.sde_t_end},
                   {"horizon", numerics.horizon},
                   {"histogram_n", numerics.histogram_n},
                   {"equilibrium_grid_n", numerics.equilibrium_grid_n},
                   {"trajectory_stride", numerics.trajectory_stride}};
  j["sweep"] = {{"delta_lambda", sweep.delta_lambda}, {"w_plus", sweep.w_plus}};
  j["backends"] = backends;
  j["seed"] = seed;
  return j.dump();
}

std::string ExperimentConfig::hash() const { return sha256_hex(canonical_json()).substr(0, 12); }

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config root must be an object");
  reject_unknown(j, "",
                 {"preset", "model", "three_well", "numerics", "sweep", "backends", "seed",
                  "output_dir"});
  ExperimentConfig c;
  if (j.contains("preset")) {
    const std::string name = j["preset"].get<std::string>();
    c.model = preset_params(name, 0.01);  // presets carry the standard bias
  }
  if (j.contains("model")) parse_model(j["model"], c.model);
  if (j.contains("three_well")) {
    ThreeWellParams t;
    parse_three_well(j["three_well"], t);
    c.three_well = t;
  }
  if (j.contains("numerics")) parse_numerics(j["numerics"], c.numerics);
  if (j.contains("sweep")) {
    reject_unknown(j["sweep"], "sweep", {"delta_lambda", "w_plus"});
    if (j["sweep"].contains("delta_lambda"))
      c.sweep.delta_lambda = j["sweep"]["delta_lambda"].get<std::vector<double>>();
    if (j["sweep"].contains("w_plus"))
      c.sweep.w_plus = j["sweep"]["w_plus"].get<std::vector<double>>();
  }
  if (j.contains("backends")) c.backends = j["backends"].get<std::vector<std::string>>();
  if (c.backends.empty()) c.backends = {"reduced"};
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
  if (const char* root = std::getenv("RATEFP_OUT_ROOT"))
    c.output_dir = std::filesystem::path(root) / c.output_dir;
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_text(text);
}

}  // namespace ratefp

// Copyright 2026 The GeoFed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "geofed/experiment.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "geofed/accountant.h"
#include "geofed/rng.h"
#include "geofed/status.h"

namespace geofed {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
// Spread of the random initial point around the canonical point.
constexpr double kInitSpread = 0.5;

[[noreturn]] void Invalid(const std::string& msg) {
  throw Error(ErrorCode::kValidationError, msg);
}

void CheckKeys(const Json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) Invalid(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.contains(item.key())) {
      Invalid("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double GetNumber(const Json& obj, const char* key, double fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) Invalid(where + "." + key + " must be a number");
  return v.get<double>();
}

long long GetInt(const Json& obj, const char* key, long long fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) Invalid(where + "." + key + " must be an integer");
  return v.get<long long>();
}

std::string GetString(const Json& obj, const char* key,
                      const std::string& fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_string()) Invalid(where + "." + key + " must be a string");
  return v.get<std::string>();
}

// A clip threshold: a number, "auto" (problem default) or "none".
void GetTau(const Json& obj, const char* key, double& value, bool& is_auto,
            const std::string& where) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (v.is_number()) {
    value = v.get<double>();
    is_auto = false;
  } else if (v == "auto") {
    is_auto = true;
  } else if (v == "none") {
    value = kInf;
    is_auto = false;
  } else {
    Invalid(where + "." + key + " must be a number, \"auto\" or \"none\"");
  }
}

std::vector<double> GetVector(const Json& v, const std::string& where) {
  if (!v.is_array()) Invalid(where + " must be an array of numbers");
  std::vector<double> out;
  for (const Json& e : v) {
    if (!e.is_number()) Invalid(where + " must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void AppendNumber(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "nan";
    return;
  }
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

Json NumberOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(); }

Json PointJson(const ManifoldPoint& p) { return Json(p.Flatten()); }

ManifoldPoint InitialPoint(const Manifold& m, bool random, uint64_t seed) {
  const ManifoldPoint canonical = CanonicalPoint(m);
  if (!random) return canonical;
  RngStream rng = RngStream(seed).Fork(StreamTag::kInit);
  if (m.kind() == ManifoldKind::kSphere) {
    Eigen::VectorXd v(m.AmbientRows());
    for (double& c : v) c = rng.NextNormal();
    return ManifoldPoint::Normalized(m, v);
  }
  std::vector<double> coeffs(m.Dimension());
  for (double& c : coeffs) c = kInitSpread * rng.NextNormal();
  return Exp(canonical, CombineFrame(canonical, coeffs));
}

struct Stats {
  double mean = 0.0;
  double std = 0.0;
};

Stats MeanStd(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= v.size();
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / (v.size() - 1));
  }
  return s;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kInternal, "write to " + path.string() + " failed");
}

}  // namespace

int DefaultThreadCount() {
  if (const char* env = std::getenv("GEOFED_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig ParseRunConfig(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError,
                std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(root, "config",
            {"description", "problem", "data", "hsp", "init", "federation",
             "trainer", "privacy", "repeats", "output_dir",
             "record_wall_time"});
  RunConfig cfg;
  cfg.source_json = json_text;
  if (!root.contains("problem")) Invalid("config.problem is required");
  try {
    cfg.problem = ParseProblemKind(GetString(root, "problem", "", "config"));
  } catch (const Error& e) {
    Invalid(e.what());
  }

  // ---- data
  const Json data = root.value("data", Json::object());
  CheckKeys(data, "data",
            {"source", "agents", "per_agent", "dim", "eigengap", "seed",
             "diameter_bound", "feature_dim", "noise", "map_scale", "path"});
  const std::string source = GetString(data, "source", "generate", "data");
  const int agents = static_cast<int>(GetInt(data, "agents", 1, "data"));
  const int per_agent = static_cast<int>(GetInt(data, "per_agent", 1, "data"));
  const uint64_t data_seed = GetInt(data, "seed", 0, "data");
  if (source == "csv") {
    cfg.csv_path = GetString(data, "path", "", "data");
    if (cfg.csv_path.empty()) Invalid("data.path is required for csv data");
    cfg.csv_agents = agents;
    cfg.csv_dim = static_cast<int>(GetInt(data, "dim", 0, "data"));
    cfg.csv_feature_dim = static_cast<int>(GetInt(data, "feature_dim", 0, "data"));
    if (cfg.csv_dim < 1) Invalid("data.dim is required for csv data");
  } else if (source == "generate") {
    switch (cfg.problem) {
      case ProblemKind::kPca:
        cfg.sphere = {agents, per_agent,
                      static_cast<int>(GetInt(data, "dim", 6, "data")),
                      GetNumber(data, "eigengap", 1e-3, "data"), data_seed};
        break;
      case ProblemKind::kFrechetSpd:
        cfg.spd = {agents, per_agent,
                   static_cast<int>(GetInt(data, "dim", 2, "data")),
                   GetNumber(data, "diameter_bound", 1.0, "data"), data_seed};
        break;
      case ProblemKind::kHsp:
        cfg.hsp = {agents,
                   per_agent,
                   static_cast<int>(GetInt(data, "feature_dim", 3, "data")),
                   static_cast<int>(GetInt(data, "dim", 2, "data")),
                   GetNumber(data, "noise", 0.0, "data"),
                   GetNumber(data, "map_scale", 0.3, "data"),
                   data_seed};
        break;
    }
  } else {
    Invalid("data.source must be \"generate\" or \"csv\"");
  }

  // ---- hsp query
  const Json hsp = root.value("hsp", Json::object());
  CheckKeys(hsp, "hsp", {"gamma", "bandwidth", "query", "truth"});
  cfg.hsp_gamma = GetNumber(hsp, "gamma", cfg.hsp_gamma, "hsp");
  cfg.hsp_bandwidth = GetNumber(hsp, "bandwidth", cfg.hsp_bandwidth, "hsp");
  if (hsp.contains("query")) cfg.hsp_query = GetVector(hsp["query"], "hsp.query");
  if (hsp.contains("truth")) cfg.hsp_truth = GetVector(hsp["truth"], "hsp.truth");
  if (cfg.problem == ProblemKind::kHsp && !cfg.csv_path.empty() &&
      !cfg.hsp_query) {
    Invalid("hsp.query is required with csv data");
  }

  const std::string init = GetString(root, "init", "random", "config");
  if (init != "random" && init != "canonical") {
    Invalid("config.init must be \"random\" or \"canonical\"");
  }
  cfg.random_init = init == "random";

  // ---- federation
  FederationConfig& fed = cfg.federation;
  const Json f = root.value("federation", Json::object());
  CheckKeys(f, "federation", {"rounds", "sampled", "output", "seed"});
  fed.rounds = static_cast<int>(GetInt(f, "rounds", 1, "federation"));
  if (f.contains("sampled") && f["sampled"] != "all") {
    cfg.sampled = static_cast<int>(GetInt(f, "sampled", 0, "federation"));
    if (cfg.sampled < 1) Invalid("federation.sampled must be >= 1 or \"all\"");
  }
  fed.seed = GetInt(f, "seed", 0, "federation");
  try {
    fed.output = ParseOutputOption(GetString(f, "output", "last", "federation"));
  } catch (const Error& e) {
    Invalid(e.what());
  }

  // ---- trainer
  const Json t = root.value("trainer", Json::object());
  CheckKeys(t, "trainer",
            {"kind", "local_steps", "batch", "batch_fraction", "inner_steps",
             "tau", "tau0", "tau1", "alpha", "local_output"});
  try {
    fed.trainer = ParseTrainerKind(GetString(t, "kind", "dp_rsgd", "trainer"));
    fed.local_output =
        ParseOutputOption(GetString(t, "local_output", "last", "trainer"));
  } catch (const Error& e) {
    Invalid(e.what());
  }
  fed.local_steps = static_cast<int>(GetInt(t, "local_steps", 1, "trainer"));
  if (t.contains("batch") && t["batch"] != "full") {
    fed.batch = static_cast<int>(GetInt(t, "batch", 0, "trainer"));
    if (fed.batch < 1) Invalid("trainer.batch must be >= 1 or \"full\"");
  }
  fed.batch_fraction = GetNumber(t, "batch_fraction", 0.0, "trainer");
  if (t.contains("inner_steps") && t["inner_steps"] == "auto") {
    cfg.inner_auto = true;
  } else {
    fed.inner_steps = static_cast<int>(GetInt(t, "inner_steps", 1, "trainer"));
  }
  GetTau(t, "tau", fed.tau, cfg.tau_auto, "trainer");
  GetTau(t, "tau0", fed.tau0, cfg.tau0_auto, "trainer");
  GetTau(t, "tau1", fed.tau1, cfg.tau1_auto, "trainer");
  if (t.contains("alpha")) {
    const Json& a = t["alpha"];
    if (a.is_number()) {
      cfg.alpha.kind = AlphaSpec::Kind::kValue;
      cfg.alpha.value = a.get<double>();
    } else if (a.is_object() && a.contains("rule")) {
      CheckKeys(a, "trainer.alpha", {"rule", "beta"});
      cfg.alpha.kind = AlphaSpec::Kind::kRule;
      try {
        cfg.alpha.rule = ParseStepRule(GetString(a, "rule", "", "trainer.alpha"));
      } catch (const Error& e) {
        Invalid(e.what());
      }
      cfg.alpha.beta = GetNumber(a, "beta", 0.0, "trainer.alpha");
    } else if (a.is_object()) {
      CheckKeys(a, "trainer.alpha", {"a", "b"});
      cfg.alpha.kind = AlphaSpec::Kind::kSquareSummable;
      cfg.alpha.a = GetNumber(a, "a", 0.0, "trainer.alpha");
      cfg.alpha.b = GetNumber(a, "b", 1.0, "trainer.alpha");
    } else {
      Invalid("trainer.alpha must be a number, {\"rule\": ...} or {\"a\", \"b\"}");
    }
  } else {
    cfg.alpha.kind = AlphaSpec::Kind::kRule;
    cfg.alpha.rule = StepRule::kConvex;
  }

  // ---- privacy
  const Json p = root.value("privacy", Json::object());
  CheckKeys(p, "privacy",
            {"epsilon", "delta", "delta_hat", "scale_const", "sigma"});
  fed.delta_hat = GetNumber(p, "delta_hat", 1e-3, "privacy");
  if (p.contains("epsilon")) {
    if (p.contains("sigma")) Invalid("privacy: give epsilon/delta or sigma, not both");
    if (!p.contains("delta")) Invalid("privacy.delta is required with epsilon");
    cfg.dp = true;
    cfg.privacy = {GetNumber(p, "epsilon", 0.0, "privacy"),
                   GetNumber(p, "delta", 0.0, "privacy")};
    cfg.scale_const = GetNumber(p, "scale_const", 1.0, "privacy");
    try {
      cfg.privacy.Validate();
    } catch (const Error& e) {
      Invalid(e.what());
    }
  } else {
    cfg.fixed_sigma = GetNumber(p, "sigma", 0.0, "privacy");
  }

  cfg.repeats = static_cast<int>(GetInt(root, "repeats", 1, "config"));
  if (cfg.repeats < 1) Invalid("config.repeats must be >= 1");
  cfg.output_dir = GetString(root, "output_dir", cfg.output_dir, "config");
  if (root.contains("record_wall_time")) {
    if (!root["record_wall_time"].is_boolean()) {
      Invalid("config.record_wall_time must be a boolean");
    }
    fed.record_wall_time = root["record_wall_time"].get<bool>();
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Invalid("cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return ParseRunConfig(text.str());
}

std::string RenderTraceCsv(const RunTrace& trace) {
  std::string out = "round,cost,grad_norm,dist_to_opt,ms\n";
  for (const TraceRecord& r : trace.records) {
    out += std::to_string(r.round);
    for (double v : {r.cost, r.grad_norm, r.dist_to_opt, r.ms}) {
      out.push_back(',');
      AppendNumber(out, v);
    }
    out.push_back('\n');
  }
  return out;
}

RunReport ExecuteRun(const RunConfig& config, const RunOptions& options) {
  // ---- data and problem
  std::vector<AgentShard> shards;
  std::optional<ManifoldPoint> truth;
  Eigen::VectorXd query;
  int problem_param = 0;
  if (!config.csv_path.empty()) {
    CsvSchema schema{config.problem, config.csv_dim, config.csv_feature_dim};
    shards = LoadCsv(config.csv_path, schema, config.csv_agents);
    problem_param = config.csv_dim;
  } else {
    switch (config.problem) {
      case ProblemKind::kPca:
        shards = GenSphereData(config.sphere);
        problem_param = config.sphere.ambient_dim;
        break;
      case ProblemKind::kFrechetSpd:
        shards = GenSpdData(config.spd);
        problem_param = config.spd.dim;
        break;
      case ProblemKind::kHsp: {
        HspDataset ds = GenHspData(config.hsp);
        shards = std::move(ds.shards);
        query = ds.query;
        truth = ds.truth;
        problem_param = config.hsp.target_dim;
        break;
      }
    }
  }
  const Problem problem = Problem::ForKind(config.problem, problem_param);
  if (config.problem == ProblemKind::kHsp) {
    if (config.hsp_query) {
      query = Eigen::Map<const Eigen::VectorXd>(config.hsp_query->data(),
                                                config.hsp_query->size());
      truth.reset();
    }
    if (config.hsp_truth) {
      Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
          config.hsp_truth->data(), config.hsp_truth->size());
      truth = ManifoldPoint::Create(problem.manifold(), y);
    }
    AssignHspWeights(shards, query, config.hsp_gamma, config.hsp_bandwidth);
  }
  problem.CheckShards(shards);

  const int n_agents = static_cast<int>(shards.size());
  const ManifoldPoint x0 = InitialPoint(problem.manifold(), config.random_init,
                                        config.federation.seed);
  const ManifoldPoint oracle = OracleSolution(problem, shards);
  const double oracle_cost = CostAndGrad(problem, oracle, shards).cost;
  const ProblemConstants constants = ComputeConstants(problem, shards, x0);

  // ---- resolve the federation settings
  FederationConfig fed = config.federation;
  fed.sampled = config.sampled == 0 ? n_agents : config.sampled;
  if (config.tau_auto) fed.tau = constants.tau;
  if (config.tau0_auto) fed.tau0 = constants.tau;
  if (config.tau1_auto) fed.tau1 = constants.tau;
  if (config.inner_auto) {
    fed.inner_steps = std::max(
        1, RecommendHyperparameters(StepRule::kVarianceReduced, constants,
                                    n_agents)
               .inner_steps);
  }
  switch (config.alpha.kind) {
    case AlphaSpec::Kind::kValue:
      fed.alpha = StepSchedule::Constant(config.alpha.value);
      break;
    case AlphaSpec::Kind::kRule:
      fed.alpha = StepSchedule::Constant(
          RecommendHyperparameters(config.alpha.rule, constants, n_agents,
                                   fed.local_steps, config.alpha.beta)
              .alpha);
      break;
    case AlphaSpec::Kind::kSquareSummable:
      fed.alpha = StepSchedule::SquareSummable(config.alpha.a, config.alpha.b);
      break;
  }
  const bool dp = config.dp && !options.no_dp;
  if (options.no_dp) {
    fed.tau = fed.tau0 = fed.tau1 = kInf;
    fed.noise = NoiseSpec::Fixed(0.0);
  } else if (config.dp) {
    fed.noise = NoiseSpec::Calibrated(config.privacy, config.scale_const);
  } else {
    fed.noise = NoiseSpec::Fixed(config.fixed_sigma);
  }
  fed.threads = options.threads > 0 ? options.threads : DefaultThreadCount();
  fed.Validate(n_agents);

  RunReport report{problem, std::move(shards), x0, oracle, oracle_cost,
                   constants, fed, truth, {}, {}};

  // ---- repeats
  for (int r = 0; r < config.repeats; ++r) {
    FederationConfig run_cfg = fed;
    run_cfg.seed =
        RngStream(fed.seed).Fork(StreamTag::kRepeat, r).NextU64();
    FederationResult res =
        RunPriRFed(problem, report.shards, x0, run_cfg, oracle);
    const double to_truth = truth ? Dist(res.output, *truth) : kNaN;
    report.repeats.push_back({std::move(res), to_truth});
  }

  // ---- summary
  Json summary;
  Json echo;
  try {
    echo = Json::parse(config.source_json, nullptr, true, true);
  } catch (const Json::parse_error&) {
    echo = Json();
  }
  summary["config"] = echo;
  summary["dp"] = dp;
  summary["repeats"] = config.repeats;

  Json resolved;
  resolved["problem"] = ProblemKindName(problem.kind());
  resolved["manifold"] = problem.manifold().Name();
  resolved["agents"] = n_agents;
  Json sizes = Json::array();
  for (const AgentShard& s : report.shards) sizes.push_back(s.size());
  resolved["samples_per_agent"] = sizes;
  resolved["sampled"] = fed.sampled;
  resolved["rounds"] = fed.rounds;
  resolved["trainer"] = TrainerKindName(fed.trainer);
  resolved["local_steps"] = fed.local_steps;
  resolved["inner_steps"] = fed.inner_steps;
  resolved["batch"] = fed.batch_fraction > 0.0 ? Json(fed.batch_fraction)
                      : fed.batch == 0       ? Json("full")
                                             : Json(fed.batch);
  resolved["tau"] = NumberOrNull(fed.tau);
  resolved["tau0"] = NumberOrNull(fed.tau0);
  resolved["tau1"] = NumberOrNull(fed.tau1);
  if (fed.alpha.kind == StepSchedule::Kind::kConstant) {
    resolved["alpha"] = fed.alpha.a;
  } else {
    resolved["alpha"] = {{"a", fed.alpha.a}, {"b", fed.alpha.b}};
  }
  resolved["sigmas"] = report.repeats.front().result.sigmas;
  resolved["constants"] = {{"L_f", constants.lipschitz},
                           {"L_g", constants.smoothness},
                           {"zeta", constants.zeta},
                           {"M", constants.diameter},
                           {"kappa_min", constants.kappa_min},
                           {"kappa_max", constants.kappa_max},
                           {"tau", constants.tau}};
  resolved["x0"] = PointJson(x0);
  summary["resolved"] = resolved;

  if (dp) {
    const Schedule& s = report.repeats.front().result.schedule;
    const BudgetReport b = PriRFedBudget(config.privacy, s);
    summary["privacy"] = {{"epsilon", config.privacy.epsilon},
                          {"delta", config.privacy.delta},
                          {"agents", s.n_agents},
                          {"sampled", s.sampled},
                          {"rounds", s.rounds},
                          {"delta_hat", s.delta_hat},
                          {"eps_round", b.eps_round},
                          {"delta_round", b.delta_round},
                          {"eps_total", b.eps_total},
                          {"delta_total", b.delta_total},
                          {"bound", BoundName(b.which_bound)}};
  } else {
    summary["privacy"] = Json();
  }

  summary["oracle"] = {{"cost", oracle_cost}, {"point", PointJson(oracle)}};
  if (truth) summary["truth"] = PointJson(*truth);

  std::vector<double> costs, grads, dists, truths;
  Json outputs = Json::array();
  for (const RepeatOutcome& rep : report.repeats) {
    const CostGrad out_cg = CostAndGrad(problem, rep.result.output, report.shards);
    costs.push_back(out_cg.cost);
    grads.push_back(Norm(out_cg.grad));
    dists.push_back(problem.DistanceToOptimum(rep.result.output, oracle));
    truths.push_back(rep.dist_to_truth);
    outputs.push_back(PointJson(rep.result.output));
  }
  const Stats cs = MeanStd(costs);
  const Stats gs = MeanStd(grads);
  Json final_block;
  final_block["cost_mean"] = cs.mean;
  final_block["cost_std"] = cs.std;
  final_block["grad_norm_mean"] = gs.mean;
  final_block["grad_norm_std"] = gs.std;
  final_block["cost_gap_mean"] = cs.mean - oracle_cost;
  final_block["dist_to_opt"] = dists;
  if (truth) final_block["dist_to_truth"] = truths;
  final_block["outputs"] = outputs;
  summary["final"] = final_block;
  report.summary_json = summary.dump(2) + "\n";

  if (options.write_outputs) {
    namespace fs = std::filesystem;
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    const std::size_t rounds = report.repeats.front().result.trace.records.size();
    for (int r = 0; r < config.repeats; ++r) {
      char name[32];
      std::snprintf(name, sizeof(name), "run_%03d", r);
      fs::create_directories(dir / name);
      WriteFile(dir / name / "trace.csv",
                RenderTraceCsv(report.repeats[r].result.trace));
    }
    std::string mean_csv =
        "round,cost,grad_norm,dist_to_opt,ms,cost_std,grad_norm_std,"
        "dist_to_opt_std\n";
    for (std::size_t k = 0; k < rounds; ++k) {
      std::vector<double> c, g, d, ms;
      for (const RepeatOutcome& rep : report.repeats) {
        const TraceRecord& rec = rep.result.trace.records[k];
        c.push_back(rec.cost);
        g.push_back(rec.grad_norm);
        d.push_back(rec.dist_to_opt);
        ms.push_back(rec.ms);
      }
      const Stats sc = MeanStd(c), sg = MeanStd(g), sd = MeanStd(d),
                  sm = MeanStd(ms);
      mean_csv += std::to_string(k);
      for (double v : {sc.mean, sg.mean, sd.mean, sm.mean, sc.std, sg.std,
                       sd.std}) {
        mean_csv.push_back(',');
        AppendNumber(mean_csv, v);
      }
      mean_csv.push_back('\n');
    }
    WriteFile(dir / "trace_mean.csv", mean_csv);
    WriteFile(dir / "summary.json", report.summary_json);
  }
  return report;
}

}  // namespace geofed

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

#include "geofed/cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "geofed/accountant.h"
#include "geofed/data.h"
#include "geofed/experiment.h"
#include "geofed/status.h"

namespace geofed::cli {
namespace {

using Json = nlohmann::ordered_json;

struct AccountArgs {
  double eps = 0.0;
  double delta = 0.0;
  int agents = 0;
  int sampled = 0;
  int rounds = 0;
  double delta_hat = 1e-3;
  std::string config;
  bool table1 = false;
  bool json = false;
  std::string csv;
};

struct GenArgs {
  int agents = 1;
  int per_agent = 1;
  int dim = 0;
  int feature_dim = 3;
  double eigengap = 1e-3;
  double diameter = 1.0;
  double noise = 0.0;
  double map_scale = 0.3;
  uint64_t seed = 0;
  std::string out;
};

struct RunArgs {
  std::string config;
  bool no_dp = false;
  std::string output_dir;
  int repeats = 0;
  std::optional<uint64_t> seed;
  int threads = 0;
};

int AccountCommand(const AccountArgs& a, CLI::App& sub, std::ostream& out,
                   std::ostream& err) {
  if (a.table1) {
    const std::vector<Schedule> schedules = Table1Schedules();
    const std::vector<BudgetRow> rows =
        BudgetTable(Table1LocalPrivacy(), schedules);
    const std::string csv = RenderBudgetCsv(rows);
    out << RenderBudgetText(rows) << '\n' << csv;
    if (!a.csv.empty()) {
      std::ofstream f(a.csv);
      f << csv;
      if (!f) {
        err << "error: cannot write " << a.csv << '\n';
        return kExitFailure;
      }
    }
    return kExitOk;
  }

  LocalPrivacy local{a.eps, a.delta};
  Schedule sched{a.agents, a.sampled, a.rounds, a.delta_hat};
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) {
      err << "error: cannot read " << a.config << '\n';
      return kExitFailure;
    }
    Json j;
    try {
      j = Json::parse(in, nullptr, true, true);
      local = {j.at("epsilon").get<double>(), j.at("delta").get<double>()};
      sched = {j.at("agents").get<int>(), j.at("sampled").get<int>(),
               j.at("rounds").get<int>(), j.value("delta_hat", 1e-3)};
    } catch (const Json::exception& e) {
      err << "error: account config: " << e.what() << '\n';
      return kExitUsage;
    }
  } else {
    std::vector<std::string> missing;
    for (const char* name : {"--eps", "--delta", "--agents", "--sampled",
                             "--rounds"}) {
      if (sub.count(name) == 0) missing.emplace_back(name);
    }
    if (!missing.empty()) {
      err << "error: missing";
      for (const std::string& m : missing) err << ' ' << m;
      err << "\n\n" << sub.help();
      return kExitUsage;
    }
  }

  BudgetReport report;
  try {
    report = PriRFedBudget(local, sched);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n\n" << sub.help();
    return kExitUsage;
  }
  if (a.json) {
    Json j = {{"epsilon", local.epsilon},     {"delta", local.delta},
              {"agents", sched.n_agents},     {"sampled", sched.sampled},
              {"rounds", sched.rounds},       {"delta_hat", sched.delta_hat},
              {"rho", sched.SamplingRate()},  {"eps_round", report.eps_round},
              {"delta_round", report.delta_round},
              {"eps_total", report.eps_total},
              {"delta_total", report.delta_total},
              {"bound", BoundName(report.which_bound)}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "local      epsilon=" << local.epsilon << " delta=" << local.delta
      << '\n'
      << "schedule   N=" << sched.n_agents << " s=" << sched.sampled
      << " rho=" << FormatSci3(sched.SamplingRate()) << " T=" << sched.rounds
      << " delta_hat=" << FormatSci3(sched.delta_hat) << '\n'
      << "per-round  epsilon=" << FormatSci3(report.eps_round)
      << " delta=" << FormatSci3(report.delta_round) << '\n'
      << "total      epsilon'=" << FormatSci3(report.eps_total)
      << " delta'=" << FormatSci3(report.delta_total) << " ("
      << BoundName(report.which_bound) << " composition)\n";
  return kExitOk;
}

void WriteHspSidecar(const std::string& path, const HspDataset& ds) {
  Json j;
  j["query"] = std::vector<double>(ds.query.data(),
                                   ds.query.data() + ds.query.size());
  j["truth"] = ds.truth.Flatten();
  std::vector<std::vector<double>> map;
  for (Eigen::Index r = 0; r < ds.map.rows(); ++r) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < ds.map.cols(); ++c) row.push_back(ds.map(r, c));
    map.push_back(row);
  }
  j["map"] = map;
  std::ofstream f(path);
  f << j.dump(2) << '\n';
  if (!f) throw Error(ErrorCode::kInternal, "cannot write " + path);
}

int GenCommand(const std::string& kind, const GenArgs& g, std::ostream& out) {
  std::vector<AgentShard> shards;
  if (kind == "pca") {
    shards = GenSphereData({g.agents, g.per_agent, g.dim, g.eigengap, g.seed});
  } else if (kind == "spd") {
    shards = GenSpdData({g.agents, g.per_agent, g.dim, g.diameter, g.seed});
  } else {
    HspDataset ds = GenHspData({g.agents, g.per_agent, g.feature_dim, g.dim,
                                g.noise, g.map_scale, g.seed});
    WriteHspSidecar(g.out + ".query.json", ds);
    shards = std::move(ds.shards);
  }
  SaveCsv(g.out, shards);
  int rows = 0;
  for (const AgentShard& s : shards) rows += s.size();
  out << "wrote " << rows << " samples for " << shards.size() << " agents to "
      << g.out << '\n';
  return kExitOk;
}

int RunCommand(const RunArgs& r, std::ostream& out) {
  RunConfig config = LoadRunConfig(r.config);
  if (!r.output_dir.empty()) config.output_dir = r.output_dir;
  if (r.repeats > 0) config.repeats = r.repeats;
  if (r.seed) config.federation.seed = *r.seed;
  RunOptions options;
  options.no_dp = r.no_dp;
  options.threads = r.threads;
  const RunReport report = ExecuteRun(config, options);
  const Json summary = Json::parse(report.summary_json);
  const Json& fin = summary["final"];
  char line[256];
  std::snprintf(line, sizeof(line),
                "%s: %d repeat(s), final cost %.6g +- %.3g (oracle %.6g), "
                "grad norm %.3g +- %.3g\n",
                ProblemKindName(report.problem.kind()).c_str(), config.repeats,
                fin["cost_mean"].get<double>(), fin["cost_std"].get<double>(),
                report.oracle_cost, fin["grad_norm_mean"].get<double>(),
                fin["grad_norm_std"].get<double>());
  out << line;
  if (!summary["privacy"].is_null()) {
    const Json& p = summary["privacy"];
    out << "privacy: epsilon'=" << FormatSci3(p["eps_total"].get<double>())
        << " delta'=" << FormatSci3(p["delta_total"].get<double>()) << '\n';
  }
  out << "outputs in " << config.output_dir << '\n';
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Differentially private federated optimization on manifolds",
               "geofed"};
  app.require_subcommand(1);

  AccountArgs acc;
  CLI::App* account =
      app.add_subcommand("account", "End-to-end (epsilon, delta) of a schedule");
  account->add_option("--eps", acc.eps, "Local epsilon per training run");
  account->add_option("--delta", acc.delta, "Local delta per training run");
  account->add_option("--agents", acc.agents, "Number of agents N");
  account->add_option("--sampled", acc.sampled, "Agents sampled per round s");
  account->add_option("--rounds", acc.rounds, "Number of rounds T");
  account->add_option("--delta-hat", acc.delta_hat,
                      "Slack of the advanced composition bound")
      ->capture_default_str();
  account->add_option("--config", acc.config, "JSON file with the same keys");
  account->add_flag("--table1", acc.table1,
                    "Reproduce the 48-cell reference budget table");
  account->add_option("--csv", acc.csv, "Also write the table as CSV");
  account->add_flag("--json", acc.json, "Print the report as JSON");

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen->require_subcommand(1);
  GenArgs ga;
  std::string gen_kind;
  for (const char* kind : {"pca", "spd", "hsp"}) {
    CLI::App* g = gen->add_subcommand(kind, std::string(kind) + " samples");
    g->add_option("--agents", ga.agents, "Number of agents")->required();
    g->add_option("--per-agent", ga.per_agent, "Samples per agent")->required();
    g->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
    g->add_option("-o,--output", ga.out, "Output CSV")->required();
    if (std::string(kind) == "pca") {
      g->add_option("--dim", ga.dim, "Ambient dimension d+1")->required();
      g->add_option("--eigengap", ga.eigengap, "Eigengap nu")
          ->capture_default_str();
    } else if (std::string(kind) == "spd") {
      g->add_option("--dim", ga.dim, "Matrix size n")->required();
      g->add_option("--diameter", ga.diameter, "Diameter bound D_W")
          ->capture_default_str();
    } else {
      ga.dim = 2;
      g->add_option("--dim", ga.dim, "Hyperboloid dimension d")
          ->capture_default_str();
      g->add_option("--feature-dim", ga.feature_dim, "Feature dimension r")
          ->capture_default_str();
      g->add_option("--noise", ga.noise, "Tangent noise on targets")
          ->capture_default_str();
      g->add_option("--map-scale", ga.map_scale, "Scale of the random map")
          ->capture_default_str();
    }
    g->callback([&gen_kind, kind] { gen_kind = kind; });
  }

  RunArgs ra;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", ra.config, "JSON config")->required();
  run->add_flag("--no-dp", ra.no_dp, "Zero the noise and disable clipping");
  run->add_option("--output-dir", ra.output_dir, "Override output_dir");
  run->add_option("--repeats", ra.repeats, "Override repeats");
  run->add_option("--seed", ra.seed, "Override federation.seed");
  run->add_option("--threads", ra.threads,
                  "Worker threads (default: GEOFED_THREADS or all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (account->parsed()) return AccountCommand(acc, *account, out, err);
    if (gen->parsed()) return GenCommand(gen_kind, ga, out);
    if (run->parsed()) return RunCommand(ra, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

int Main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Run(args, std::cout, std::cerr);
}

}  // namespace geofed::cli

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

#include "geofed/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "geofed/mechanism.h"
#include "geofed/rng.h"
#include "geofed/status.h"

namespace geofed {
namespace {

constexpr int kWishartMinTrials = 100000;
constexpr double kWishartMinAcceptance = 0.01;

Eigen::MatrixXd GaussianMatrix(int rows, int cols, double scale,
                               RngStream& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = scale * rng.NextNormal();
  }
  return m;
}

// Column-orthonormal rows x cols matrix, Haar distributed: Q of a Gaussian
// matrix with the signs of diag(R) folded in.
Eigen::MatrixXd RandomOrthonormal(int rows, int cols, RngStream& rng) {
  const Eigen::MatrixXd g = GaussianMatrix(rows, cols, 1.0, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int c = 0; c < cols; ++c) {
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

// diag(1, 1 - 1.1 nu, ..., 1 - 1.4 nu, |y_k| / (d+1)).
Eigen::VectorXd DrawSingularValues(const SphereGenSpec& spec, RngStream& rng) {
  const int n = spec.ambient_dim;
  Eigen::VectorXd sigma(n);
  sigma(0) = 1.0;
  for (int k = 1; k <= 4; ++k) sigma(k) = 1.0 - (1.0 + 0.1 * k) * spec.eigengap;
  for (int k = 5; k < n; ++k) sigma(k) = std::abs(rng.NextNormal()) / n;
  return sigma;
}

bool ParseDouble(std::string_view field, double& out) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
    field.remove_prefix(1);
  }
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                            field.back() == '\r')) {
    field.remove_suffix(1);
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size() &&
         std::isfinite(out);
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    fields.push_back(line.substr(begin, comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

Sample MakeSample(const CsvSchema& schema, std::span<const double> v,
                  int line_no) {
  auto fail = [line_no](const std::string& msg) {
    return Error(ErrorCode::kValidationError,
                 "line " + std::to_string(line_no) + ": " + msg);
  };
  switch (schema.kind) {
    case ProblemKind::kPca:
      return PcaSample{Eigen::Map<const Eigen::VectorXd>(v.data(), v.size())};
    case ProblemKind::kFrechetSpd: {
      const int n = schema.dim;
      Eigen::MatrixXd z(n, n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) z(r, c) = v[r * n + c];
      }
      try {
        return SpdSample{ManifoldPoint::Create(Manifold::Spd(n), z)};
      } catch (const Error& e) {
        throw fail(e.what());
      }
    }
    case ProblemKind::kHsp: {
      const int r = schema.feature_dim;
      const int d = schema.dim;
      Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(v.data(), r);
      Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(v.data() + r, d + 1);
      try {
        return HspSample{std::move(w),
                         ManifoldPoint::Create(Manifold::Hyperboloid(d), y),
                         0.0};
      } catch (const Error& e) {
        throw fail(e.what());
      }
    }
  }
  throw Error(ErrorCode::kInternal, "unknown problem kind");
}

void AppendDouble(std::string& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

Eigen::VectorXd SphereSingularValues(const SphereGenSpec& spec, int agent) {
  RngStream rng = RngStream(spec.seed).Fork(StreamTag::kData, agent);
  return DrawSingularValues(spec, rng);
}

std::vector<AgentShard> GenSphereData(const SphereGenSpec& spec) {
  const int n = spec.ambient_dim;
  if (spec.n_agents < 1) throw Error(ErrorCode::kGenError, "need N >= 1");
  if (n < 6) {
    throw Error(ErrorCode::kGenError,
                "ambient dimension must be >= 6, got " + std::to_string(n));
  }
  if (spec.per_agent < n) {
    throw Error(ErrorCode::kGenError,
                "per-agent count " + std::to_string(spec.per_agent) +
                    " cannot realize " + std::to_string(n) +
                    " singular values");
  }
  if (!(spec.eigengap > 0.0 && spec.eigengap < 1.0 / 1.4)) {
    throw Error(ErrorCode::kGenError, "eigengap must lie in (0, 1/1.4)");
  }
  std::vector<AgentShard> shards;
  for (int i = 0; i < spec.n_agents; ++i) {
    RngStream rng = RngStream(spec.seed).Fork(StreamTag::kData, i);
    const Eigen::VectorXd sigma = DrawSingularValues(spec, rng);
    const Eigen::MatrixXd u = RandomOrthonormal(spec.per_agent, n, rng);
    const Eigen::MatrixXd v = RandomOrthonormal(n, n, rng);
    const Eigen::MatrixXd z = u * sigma.asDiagonal() * v;
    AgentShard shard{i, {}};
    shard.data.reserve(spec.per_agent);
    for (int j = 0; j < spec.per_agent; ++j) {
      shard.data.emplace_back(PcaSample{z.row(j).transpose()});
    }
    shards.push_back(std::move(shard));
  }
  return shards;
}

std::vector<AgentShard> GenSpdData(const SpdGenSpec& spec) {
  const int n = spec.dim;
  if (spec.n_agents < 1 || spec.per_agent < 1 || n < 1) {
    throw Error(ErrorCode::kGenError, "agents, per-agent and dim must be >= 1");
  }
  if (!(spec.diameter_bound > 0.0)) {
    throw Error(ErrorCode::kGenError, "diameter bound must be positive");
  }
  const Manifold m = Manifold::Spd(n);
  const double radius = spec.diameter_bound / 2.0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  long long trials = 0;
  long long accepted = 0;
  std::vector<AgentShard> shards;
  for (int i = 0; i < spec.n_agents; ++i) {
    RngStream rng = RngStream(spec.seed).Fork(StreamTag::kData, i);
    AgentShard shard{i, {}};
    while (shard.size() < spec.per_agent) {
      ++trials;
      // n outer products of N(0, I/n) vectors.
      const Eigen::MatrixXd g = GaussianMatrix(n, n, scale, rng);
      const Eigen::MatrixXd z = 0.5 * (g * g.transpose() +
                                       (g * g.transpose()).transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          z, Eigen::EigenvaluesOnly);
      const Eigen::VectorXd& lambda = es.eigenvalues();
      bool ok = lambda.minCoeff() > 0.0;
      if (ok) {
        double d2 = 0.0;
        for (double l : lambda) d2 += std::log(l) * std::log(l);
        ok = std::sqrt(d2) <= radius;
      }
      if (ok) {
        try {
          shard.data.emplace_back(SpdSample{ManifoldPoint::Create(m, z)});
          ++accepted;
        } catch (const Error&) {
          // Numerically borderline; treat as a rejection.
        }
      }
      if (trials >= kWishartMinTrials &&
          accepted < kWishartMinAcceptance * trials) {
        throw Error(ErrorCode::kGenError,
                    "Wishart acceptance rate " +
                        std::to_string(static_cast<double>(accepted) / trials) +
                        " below 1%; increase the diameter bound");
      }
    }
    shards.push_back(std::move(shard));
  }
  return shards;
}

ManifoldPoint HspTarget(const Eigen::MatrixXd& map, const Eigen::VectorXd& w) {
  const Manifold m = Manifold::Hyperboloid(static_cast<int>(map.rows()));
  const ManifoldPoint origin = CanonicalPoint(m);
  const Eigen::VectorXd coeffs = map * w;
  return Exp(origin, CombineFrame(origin, std::span<const double>(
                                              coeffs.data(), coeffs.size())));
}

HspDataset GenHspData(const HspGenSpec& spec) {
  if (spec.n_agents < 1 || spec.per_agent < 1 || spec.feature_dim < 1 ||
      spec.target_dim < 1) {
    throw Error(ErrorCode::kGenError, "HSP dimensions and counts must be >= 1");
  }
  if (!(spec.noise >= 0.0) || !(spec.map_scale > 0.0)) {
    throw Error(ErrorCode::kGenError, "invalid HSP noise or map scale");
  }
  const int r = spec.feature_dim;
  RngStream init = RngStream(spec.seed).Fork(StreamTag::kInit);
  const Eigen::MatrixXd map =
      GaussianMatrix(spec.target_dim, r, spec.map_scale, init);
  Eigen::VectorXd query(r);
  for (int k = 0; k < r; ++k) query(k) = init.NextUniform() - 0.5;

  std::vector<AgentShard> shards;
  for (int i = 0; i < spec.n_agents; ++i) {
    RngStream rng = RngStream(spec.seed).Fork(StreamTag::kData, i);
    AgentShard shard{i, {}};
    for (int j = 0; j < spec.per_agent; ++j) {
      Eigen::VectorXd w(r);
      for (int k = 0; k < r; ++k) w(k) = 2.0 * rng.NextUniform() - 1.0;
      ManifoldPoint y = HspTarget(map, w);
      if (spec.noise > 0.0) {
        y = Exp(y, SampleTangentGaussian(y, NoiseScale(spec.noise), rng));
      }
      shard.data.emplace_back(HspSample{std::move(w), std::move(y), 0.0});
    }
    shards.push_back(std::move(shard));
  }
  ManifoldPoint truth = HspTarget(map, query);
  return {std::move(shards), std::move(query), std::move(truth), map};
}

int CsvSchema::Arity() const {
  switch (kind) {
    case ProblemKind::kPca: return dim;
    case ProblemKind::kFrechetSpd: return dim * dim;
    case ProblemKind::kHsp: return feature_dim + dim + 1;
  }
  return 0;
}

std::vector<AgentShard> ParseCsv(std::istream& in, const CsvSchema& schema,
                                 int n_agents) {
  const int arity = schema.Arity();
  if (arity < 1 || (schema.kind == ProblemKind::kHsp && schema.feature_dim < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid CSV schema dimensions");
  }
  std::map<long long, std::vector<Sample>> by_agent;
  std::vector<Sample> unassigned;
  int mode = -1;  // 0 = round-robin, 1 = agent_id column
  std::string line;
  int line_no = 0;
  bool seen_data = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const std::size_t hash = view.find('#');
    if (hash != std::string_view::npos) view = view.substr(0, hash);
    if (view.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::vector<std::string_view> fields = SplitFields(view);
    double first = 0.0;
    if (!seen_data && !ParseDouble(fields[0], first)) {
      seen_data = true;  // header line
      continue;
    }
    seen_data = true;
    const int count = static_cast<int>(fields.size());
    const int row_mode = count == arity ? 0 : count == arity + 1 ? 1 : -1;
    if (row_mode < 0) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(arity) + " values (or " +
                      std::to_string(arity + 1) + " with agent_id), got " +
                      std::to_string(count));
    }
    if (mode >= 0 && row_mode != mode) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) +
                      ": inconsistent agent_id column");
    }
    mode = row_mode;
    values.assign(count, 0.0);
    for (int k = 0; k < count; ++k) {
      if (!ParseDouble(fields[k], values[k])) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": field " +
                        std::to_string(k + 1) + " is not a number");
      }
    }
    std::span<const double> payload(values);
    if (mode == 1) {
      const double id = values[0];
      if (id != std::floor(id) || id < 0) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) +
                        ": agent_id must be a nonnegative integer");
      }
      by_agent[static_cast<long long>(id)].push_back(
          MakeSample(schema, payload.subspan(1), line_no));
    } else {
      unassigned.push_back(MakeSample(schema, payload, line_no));
    }
  }
  if (mode < 0) throw Error(ErrorCode::kParseError, "no data rows");

  std::vector<AgentShard> shards;
  if (mode == 1) {
    for (auto& [id, samples] : by_agent) {
      shards.push_back({static_cast<int>(id), std::move(samples)});
    }
    return shards;
  }
  if (n_agents < 1 || n_agents > static_cast<int>(unassigned.size())) {
    throw Error(ErrorCode::kSplitError,
                "cannot deal " + std::to_string(unassigned.size()) +
                    " rows over " + std::to_string(n_agents) + " agents");
  }
  shards.resize(n_agents);
  for (int i = 0; i < n_agents; ++i) shards[i].agent_id = i;
  for (std::size_t k = 0; k < unassigned.size(); ++k) {
    shards[k % n_agents].data.push_back(std::move(unassigned[k]));
  }
  return shards;
}

std::vector<AgentShard> LoadCsv(const std::string& path,
                                const CsvSchema& schema, int n_agents) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  return ParseCsv(in, schema, n_agents);
}

void WriteCsv(std::ostream& out, std::span<const AgentShard> shards) {
  std::string row;
  for (const AgentShard& shard : shards) {
    for (const Sample& s : shard.data) {
      row = std::to_string(shard.agent_id);
      auto emit = [&row](const Eigen::MatrixXd& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(',');
            AppendDouble(row, m(r, c));
          }
        }
      };
      if (const auto* p = std::get_if<PcaSample>(&s)) {
        emit(p->z);
      } else if (const auto* z = std::get_if<SpdSample>(&s)) {
        emit(z->z.coords());
      } else {
        const HspSample& h = std::get<HspSample>(s);
        emit(h.w);
        emit(h.y.coords());
      }
      row.push_back('\n');
      out << row;
    }
  }
}

void SaveCsv(const std::string& path, std::span<const AgentShard> shards) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  WriteCsv(out, shards);
  if (!out) throw Error(ErrorCode::kInternal, "write to " + path + " failed");
}

std::vector<AgentShard> SplitShards(std::vector<Sample> samples, int n_agents,
                                    const SplitPolicy& policy) {
  const int total = static_cast<int>(samples.size());
  if (n_agents < 1 || n_agents > total) {
    throw Error(ErrorCode::kSplitError,
                "cannot split " + std::to_string(total) + " samples over " +
                    std::to_string(n_agents) + " agents");
  }
  std::vector<int> sizes(n_agents);
  if (policy.kind == SplitPolicy::Kind::kEqual) {
    if (total % n_agents != 0) {
      throw Error(ErrorCode::kSplitError,
                  std::to_string(total) + " samples do not split equally over " +
                      std::to_string(n_agents) + " agents");
    }
    std::fill(sizes.begin(), sizes.end(), total / n_agents);
  } else {
    const std::vector<double>& p = policy.proportions;
    if (static_cast<int>(p.size()) != n_agents) {
      throw Error(ErrorCode::kSplitError, "one proportion per agent required");
    }
    double psum = 0.0;
    for (double v : p) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::kSplitError, "proportions must be positive");
      }
      psum += v;
    }
    // Largest remainder: floor every quota, then hand out the leftovers to
    // the largest fractional parts (ties to the lower index).
    std::vector<std::pair<double, int>> remainders;
    int assigned = 0;
    for (int i = 0; i < n_agents; ++i) {
      const double quota = total * p[i] / psum;
      sizes[i] = static_cast<int>(std::floor(quota));
      assigned += sizes[i];
      remainders.emplace_back(quota - sizes[i], i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int k = 0; k < total - assigned; ++k) ++sizes[remainders[k].second];
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) {
      throw Error(ErrorCode::kSplitError, "a proportional shard would be empty");
    }
  }
  std::vector<AgentShard> shards(n_agents);
  int next = 0;
  for (int i = 0; i < n_agents; ++i) {
    shards[i].agent_id = i;
    for (int k = 0; k < sizes[i]; ++k) {
      shards[i].data.push_back(std::move(samples[next++]));
    }
  }
  return shards;
}

}  // namespace geofed

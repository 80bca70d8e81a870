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

#include "geofed/accountant.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <utility>

#include "geofed/status.h"

namespace geofed {

void LocalPrivacy::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "local epsilon must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "local delta must lie in (0, 1)");
  }
}

void Schedule::Validate() const {
  if (n_agents < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one agent");
  }
  if (sampled < 1 || sampled > n_agents) {
    throw Error(ErrorCode::kInvalidRate,
                "sampled agents must lie in [1, N], got s=" +
                    std::to_string(sampled) + " N=" + std::to_string(n_agents));
  }
  if (rounds < 1) throw Error(ErrorCode::kInvalidArgument, "need T >= 1");
  if (!(delta_hat > 0.0 && delta_hat < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta_hat must lie in (0, 1)");
  }
}

EpsilonDelta AmplifySubsample(double epsilon, double delta, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw Error(ErrorCode::kInvalidRate,
                "sampling rate must lie in (0, 1], got " + std::to_string(rho));
  }
  if (!(epsilon >= 0.0) || !(delta >= 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid (epsilon, delta)");
  }
  if (rho == 1.0) return {epsilon, delta};
  return {std::log1p(rho * std::expm1(epsilon)), rho * delta};
}

EpsilonDelta ComposeSequential(std::span<const EpsilonDelta> budgets) {
  if (budgets.empty()) {
    throw Error(ErrorCode::kEmptyComposition, "nothing to compose");
  }
  EpsilonDelta total;
  for (const EpsilonDelta& b : budgets) {
    if (!(b.epsilon >= 0.0) || !(b.delta >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "negative budget entry");
    }
    total.epsilon += b.epsilon;
    total.delta += b.delta;
  }
  return total;
}

EpsilonDelta ComposeAdvanced(double epsilon, double delta, int k,
                             double delta_hat) {
  if (!(delta_hat > 0.0 && delta_hat < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta_hat must lie in (0, 1)");
  }
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "need k >= 1");
  if (!(epsilon >= 0.0) || !(delta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid (epsilon, delta)");
  }
  return {std::sqrt(2.0 * k * std::log(1.0 / delta_hat)) * epsilon +
              k * epsilon * std::expm1(epsilon),
          delta_hat + k * delta};
}

EpsilonDelta GroupPrivacy(double epsilon, double delta, int c) {
  if (c < 1) throw Error(ErrorCode::kInvalidArgument, "need c >= 1");
  return {c * epsilon, c * std::exp((c - 1) * epsilon) * delta};
}

BudgetReport PriRFedBudget(const LocalPrivacy& local, const Schedule& sched) {
  local.Validate();
  sched.Validate();
  const double rho = sched.SamplingRate();
  // Each sampled agent sees its own shard through a 1-stable selection, the s
  // selected trainers compose sequentially, then the agent subsample
  // amplifies the round.
  const EpsilonDelta per_agent = GroupPrivacy(local.epsilon, local.delta, 1);
  const std::vector<EpsilonDelta> agents(sched.sampled, per_agent);
  const EpsilonDelta round_before = ComposeSequential(agents);
  const EpsilonDelta round =
      AmplifySubsample(round_before.epsilon, round_before.delta, rho);

  BudgetReport report;
  report.eps_round = round.epsilon;
  report.delta_round = round.delta;
  const double sequential = sched.rounds * round.epsilon;
  const EpsilonDelta advanced = ComposeAdvanced(round.epsilon, round.delta,
                                                sched.rounds, sched.delta_hat);
  if (sequential <= advanced.epsilon) {
    report.eps_total = sequential;
    report.which_bound = CompositionBound::kSequential;
  } else {
    report.eps_total = advanced.epsilon;
    report.which_bound = CompositionBound::kAdvanced;
  }
  // delta' = delta_hat + T delta~ for either arm of the minimum.
  report.delta_total = advanced.delta;
  return report;
}

std::vector<BudgetRow> BudgetTable(const LocalPrivacy& local,
                                   std::span<const Schedule> schedules) {
  if (schedules.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no schedules");
  }
  std::vector<BudgetRow> rows;
  rows.reserve(schedules.size());
  for (const Schedule& s : schedules) {
    rows.push_back({s, PriRFedBudget(local, s)});
  }
  return rows;
}

std::vector<Schedule> Table1Schedules() {
  constexpr std::pair<int, int> kPairs[] = {{100, 1}, {100, 5}, {200, 1},
                                            {500, 5}, {300, 5}, {300, 10},
                                            {400, 5}, {400, 10}};
  constexpr int kRounds[] = {50, 100, 200, 300, 400, 500};
  std::vector<Schedule> out;
  for (const auto& [n, s] : kPairs) {
    for (int t : kRounds) out.push_back({n, s, t, 1e-3});
  }
  return out;
}

LocalPrivacy Table1LocalPrivacy() { return {0.15, 1e-4}; }

ThreeFigures RoundThreeFigures(double value) {
  if (value == 0.0 || !std::isfinite(value)) return {value, 0};
  const bool negative = value < 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.11e", std::abs(value));
  // buf = "d.ddddddddddde[+-]xx": twelve significant digits.
  long long digits = buf[0] - '0';
  for (int i = 2; i < 13; ++i) digits = digits * 10 + (buf[i] - '0');
  int exponent = std::atoi(buf + 14);
  long long kept = (digits + 500000000LL) / 1000000000LL;  // half-up
  if (kept >= 1000) {
    kept /= 10;
    ++exponent;
  }
  const double mantissa = static_cast<double>(kept) / 100.0;
  return {negative ? -mantissa : mantissa, exponent};
}

std::string FormatSci3(double value) {
  const ThreeFigures r = RoundThreeFigures(value);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2fe%+03d", r.mantissa, r.exponent);
  return buf;
}

std::string FormatSubscript3(double value) {
  const ThreeFigures r = RoundThreeFigures(value);
  char buf[32];
  if (r.exponent == 0) {
    std::snprintf(buf, sizeof(buf), "%.2f", r.mantissa);
  } else {
    std::snprintf(buf, sizeof(buf), "%.2f_{%d}", r.mantissa, r.exponent);
  }
  return buf;
}

std::string BoundName(CompositionBound bound) {
  return bound == CompositionBound::kSequential ? "sequential" : "advanced";
}

std::string RenderBudgetCsv(std::span<const BudgetRow> rows) {
  std::ostringstream out;
  out << "N,s,rho,T,eps_round,delta_round,eps_total,delta_total,bound\n";
  for (const BudgetRow& row : rows) {
    const Schedule& s = row.schedule;
    out << s.n_agents << ',' << s.sampled << ','
        << FormatSci3(s.SamplingRate()) << ',' << s.rounds << ','
        << FormatSci3(row.report.eps_round) << ','
        << FormatSci3(row.report.delta_round) << ','
        << FormatSci3(row.report.eps_total) << ','
        << FormatSci3(row.report.delta_total) << ','
        << BoundName(row.report.which_bound) << '\n';
  }
  return out.str();
}

std::string RenderBudgetText(std::span<const BudgetRow> rows) {
  // Group by (N, s) in first-appearance order; columns are the distinct T.
  std::vector<std::pair<int, int>> groups;
  std::vector<int> rounds;
  for (const BudgetRow& row : rows) {
    const std::pair<int, int> key{row.schedule.n_agents, row.schedule.sampled};
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) {
      groups.push_back(key);
    }
    if (std::find(rounds.begin(), rounds.end(), row.schedule.rounds) ==
        rounds.end()) {
      rounds.push_back(row.schedule.rounds);
    }
  }
  constexpr int kCell = 11;
  std::ostringstream out;
  out << std::left << std::setw(6) << "N" << std::setw(5) << "s"
      << std::setw(kCell) << "rho";
  for (int t : rounds) {
    out << std::setw(2 * kCell) << ("T=" + std::to_string(t));
  }
  out << '\n' << std::setw(6 + 5 + kCell) << "";
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    out << std::setw(kCell) << "eps'" << std::setw(kCell) << "delta'";
  }
  out << '\n';
  for (const auto& [n, s] : groups) {
    out << std::setw(6) << n << std::setw(5) << s << std::setw(kCell)
        << FormatSubscript3(static_cast<double>(s) / n);
    for (int t : rounds) {
      const BudgetRow* match = nullptr;
      for (const BudgetRow& row : rows) {
        if (row.schedule.n_agents == n && row.schedule.sampled == s &&
            row.schedule.rounds == t) {
          match = &row;
          break;
        }
      }
      if (match == nullptr) {
        out << std::setw(2 * kCell) << "-";
      } else {
        out << std::setw(kCell) << FormatSubscript3(match->report.eps_total)
            << std::setw(kCell) << FormatSubscript3(match->report.delta_total);
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace geofed

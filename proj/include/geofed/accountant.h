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

// End-to-end (epsilon, delta) accounting for federated schedules: s of N
// agents sampled without replacement per round, each running an
// (eps, delta)-DP local trainer, composed over T rounds.

#ifndef GEOFED_ACCOUNTANT_H_
#define GEOFED_ACCOUNTANT_H_

#include <span>
#include <string>
#include <vector>

namespace geofed {

struct EpsilonDelta {
  double epsilon = 0.0;
  double delta = 0.0;
};

struct LocalPrivacy {
  double epsilon = 0.0;
  double delta = 0.0;

  void Validate() const;
};

struct Schedule {
  int n_agents = 1;
  int sampled = 1;
  int rounds = 1;
  double delta_hat = 1e-3;

  double SamplingRate() const {
    return static_cast<double>(sampled) / n_agents;
  }
  void Validate() const;
};

enum class CompositionBound { kSequential, kAdvanced };

struct BudgetReport {
  double eps_round = 0.0;    // per-round epsilon after amplification
  double delta_round = 0.0;  // per-round delta
  double eps_total = 0.0;
  double delta_total = 0.0;
  CompositionBound which_bound = CompositionBound::kSequential;
};

// (log(1 + rho (e^eps - 1)), rho delta). Throws kInvalidRate unless
// 0 < rho <= 1.
EpsilonDelta AmplifySubsample(double epsilon, double delta, double rho);

// Componentwise sums. Throws kEmptyComposition on an empty list.
EpsilonDelta ComposeSequential(std::span<const EpsilonDelta> budgets);

// (sqrt(2k ln(1/delta_hat)) eps + k eps (e^eps - 1), delta_hat + k delta).
EpsilonDelta ComposeAdvanced(double epsilon, double delta, int k,
                             double delta_hat);

// Group privacy for a c-stable transformation: (c eps, c e^{(c-1) eps} delta).
EpsilonDelta GroupPrivacy(double epsilon, double delta, int c);

BudgetReport PriRFedBudget(const LocalPrivacy& local, const Schedule& sched);

struct BudgetRow {
  Schedule schedule;
  BudgetReport report;
};

std::vector<BudgetRow> BudgetTable(const LocalPrivacy& local,
                                   std::span<const Schedule> schedules);

// The 48 schedules (8 (N, s) pairs x T in {50, ..., 500}) with
// delta_hat = 1e-3, and the matching local guarantee (0.15, 1e-4).
std::vector<Schedule> Table1Schedules();
LocalPrivacy Table1LocalPrivacy();

// "a.bc" rounded half-up to three significant figures, returned as
// mantissa and decimal exponent. Binary representation noise below 1e-12
// relative is removed before rounding.
struct ThreeFigures {
  double mantissa;  // in [1, 10)
  int exponent;
};
ThreeFigures RoundThreeFigures(double value);

// "4.26e-02"-style rendering of RoundThreeFigures.
std::string FormatSci3(double value);
// Subscript-exponent notation: "4.26_{-2}", or "1.58" when the exponent is zero.
std::string FormatSubscript3(double value);

std::string BoundName(CompositionBound bound);

// CSV with header N,s,rho,T,eps_round,delta_round,eps_total,delta_total,bound.
std::string RenderBudgetCsv(std::span<const BudgetRow> rows);
// One line per (N, s) pair with an (eps', delta') column pair per T.
std::string RenderBudgetText(std::span<const BudgetRow> rows);

}  // namespace geofed

#endif  // GEOFED_ACCOUNTANT_H_

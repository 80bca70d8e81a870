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

// Python bindings: geometry, privacy accounting and experiment runs.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "geofed/accountant.h"
#include "geofed/experiment.h"
#include "geofed/manifold.h"
#include "geofed/mechanism.h"
#include "geofed/status.h"

namespace py = pybind11;

namespace geofed {
namespace {

bool IsVectorManifold(const Manifold& m) { return m.kind() != ManifoldKind::kSpd; }

// Vector manifolds travel as 1-D arrays, SPD as n x n matrices.
Eigen::MatrixXd ToCoords(const Manifold& m, const Eigen::MatrixXd& a) {
  if (IsVectorManifold(m) && a.rows() == 1 && a.cols() == m.AmbientRows()) {
    return a.transpose();
  }
  return a;
}

py::object FromCoords(const Manifold& m, const Eigen::MatrixXd& c) {
  if (IsVectorManifold(m)) return py::cast(Eigen::VectorXd(c.col(0)));
  return py::cast(c);
}

ManifoldPoint Point(const Manifold& m, const Eigen::MatrixXd& x) {
  return ManifoldPoint::Create(m, ToCoords(m, x));
}

TangentVector Tangent(const ManifoldPoint& x, const Eigen::MatrixXd& v) {
  return TangentVector::Create(x, ToCoords(x.manifold(), v));
}

py::dict BudgetDict(const Schedule& s, const BudgetReport& r) {
  py::dict d;
  d["agents"] = s.n_agents;
  d["sampled"] = s.sampled;
  d["rounds"] = s.rounds;
  d["delta_hat"] = s.delta_hat;
  d["eps_round"] = r.eps_round;
  d["delta_round"] = r.delta_round;
  d["eps_total"] = r.eps_total;
  d["delta_total"] = r.delta_total;
  d["bound"] = BoundName(r.which_bound);
  return d;
}

py::dict TraceDict(const RunTrace& trace) {
  std::vector<int> round;
  std::vector<double> cost, grad, dist, ms;
  for (const TraceRecord& r : trace.records) {
    round.push_back(r.round);
    cost.push_back(r.cost);
    grad.push_back(r.grad_norm);
    dist.push_back(r.dist_to_opt);
    ms.push_back(r.ms);
  }
  py::dict d;
  d["round"] = round;
  d["cost"] = cost;
  d["grad_norm"] = grad;
  d["dist_to_opt"] = dist;
  d["ms"] = ms;
  return d;
}

}  // namespace
}  // namespace geofed

PYBIND11_MODULE(_geofed, mod) {
  using namespace geofed;
  mod.doc() = "Differentially private federated optimization on manifolds";

  py::register_exception<Error>(mod, "GeofedError", PyExc_ValueError);

  py::class_<Manifold>(mod, "Manifold")
      .def_static("sphere", &Manifold::Sphere, py::arg("d"))
      .def_static("spd", &Manifold::Spd, py::arg("n"))
      .def_static("hyperboloid", &Manifold::Hyperboloid, py::arg("d"))
      .def_property_readonly("dimension", &Manifold::Dimension)
      .def_property_readonly("name", &Manifold::Name)
      .def("canonical_point",
           [](const Manifold& m) {
             return FromCoords(m, CanonicalPoint(m).coords());
           })
      .def(
          "exp",
          [](const Manifold& m, const Eigen::MatrixXd& x,
             const Eigen::MatrixXd& v) {
            const ManifoldPoint p = Point(m, x);
            return FromCoords(m, Exp(p, Tangent(p, v)).coords());
          },
          py::arg("x"), py::arg("v"))
      .def(
          "log",
          [](const Manifold& m, const Eigen::MatrixXd& x,
             const Eigen::MatrixXd& y) {
            return FromCoords(m, Log(Point(m, x), Point(m, y)).coords());
          },
          py::arg("x"), py::arg("y"))
      .def(
          "dist",
          [](const Manifold& m, const Eigen::MatrixXd& x,
             const Eigen::MatrixXd& y) { return Dist(Point(m, x), Point(m, y)); },
          py::arg("x"), py::arg("y"))
      .def(
          "inner",
          [](const Manifold& m, const Eigen::MatrixXd& x,
             const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
            const ManifoldPoint p = Point(m, x);
            return Inner(Tangent(p, u), Tangent(p, v));
          },
          py::arg("x"), py::arg("u"), py::arg("v"))
      .def(
          "transport",
          [](const Manifold& m, const Eigen::MatrixXd& x,
             const Eigen::MatrixXd& y, const Eigen::MatrixXd& v) {
            const ManifoldPoint p = Point(m, x);
            return FromCoords(m, Transport(p, Point(m, y), Tangent(p, v)).coords());
          },
          py::arg("x"), py::arg("y"), py::arg("v"))
      .def(
          "project_tangent",
          [](const Manifold& m, const Eigen::MatrixXd& x,
             const Eigen::MatrixXd& w) {
            return FromCoords(m, ProjectTangent(Point(m, x), ToCoords(m, w)).coords());
          },
          py::arg("x"), py::arg("w"))
      .def("__repr__", [](const Manifold& m) { return "Manifold." + m.Name(); });

  mod.def(
      "budget",
      [](double epsilon, double delta, int agents, int sampled, int rounds,
         double delta_hat) {
        const Schedule s{agents, sampled, rounds, delta_hat};
        return BudgetDict(s, PriRFedBudget({epsilon, delta}, s));
      },
      py::arg("epsilon"), py::arg("delta"), py::arg("agents"),
      py::arg("sampled"), py::arg("rounds"), py::arg("delta_hat") = 1e-3,
      "End-to-end (epsilon', delta') of a federated schedule.");

  mod.def(
      "budget_table",
      [] {
        const std::vector<Schedule> schedules = Table1Schedules();
        py::list rows;
        for (const BudgetRow& r : BudgetTable(Table1LocalPrivacy(), schedules)) {
          rows.append(BudgetDict(r.schedule, r.report));
        }
        return rows;
      },
      "The 48-schedule reference budget table.");

  mod.def("format_sci3", &FormatSci3, py::arg("value"));

  mod.def(
      "calibrate_sigma",
      [](const std::string& trainer, double epsilon, double delta, double tau,
         int n_samples, int steps, int inner_steps, double scale_const) {
        const CalibrationInput in{epsilon, delta,      tau,        n_samples,
                                  steps,   inner_steps, scale_const};
        if (trainer == "dp_rsgd") return CalibrateSigmaRsgd(in).sigma();
        if (trainer == "dp_rsvrg") return CalibrateSigmaRsvrg(in).sigma();
        throw Error(ErrorCode::kInvalidArgument,
                    "trainer must be 'dp_rsgd' or 'dp_rsvrg'");
      },
      py::arg("trainer"), py::arg("epsilon"), py::arg("delta"), py::arg("tau"),
      py::arg("n_samples"), py::arg("steps"), py::arg("inner_steps") = 1,
      py::arg("scale_const") = 1.0);

  mod.def(
      "_run_json",
      [](const std::string& config_json, bool no_dp, int threads,
         bool write_outputs) {
        const RunConfig cfg = ParseRunConfig(config_json);
        RunOptions opt;
        opt.no_dp = no_dp;
        opt.threads = threads;
        opt.write_outputs = write_outputs;
        std::optional<RunReport> report;
        {
          py::gil_scoped_release release;
          report.emplace(ExecuteRun(cfg, opt));
        }
        py::list traces;
        for (const RepeatOutcome& r : report->repeats) {
          traces.append(TraceDict(r.result.trace));
        }
        return py::make_tuple(report->summary_json, traces);
      },
      py::arg("config_json"), py::arg("no_dp") = false, py::arg("threads") = 0,
      py::arg("write_outputs") = false);
}

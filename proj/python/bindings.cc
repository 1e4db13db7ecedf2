// Copyright 2026 The SubDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "subdp/audit_suite.h"
#include "subdp/auditor.h"
#include "subdp/errors.h"
#include "subdp/exact.h"
#include "subdp/graph.h"
#include "subdp/graph_estimators.h"
#include "subdp/io.h"
#include "subdp/noise.h"
#include "subdp/report.h"
#include "subdp/sketches.h"

namespace py = pybind11;

namespace subdp {
namespace {

py::object ToPython(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

template <typename Sampler>
py::array_t<double> Draw(size_t n, uint64_t seed, uint64_t stream,
                         Sampler sample) {
  py::array_t<double> out(n);
  auto view = out.mutable_unchecked<1>();
  RandomSource rng(seed, stream);
  for (size_t i = 0; i < n; ++i) view(i) = sample(rng);
  return out;
}

PrivatizeOptions Options(double divisor, bool force) {
  PrivatizeOptions opts = WithAccuracyDivisor(divisor);
  opts.force = force;
  return opts;
}

// Owns the data a session answers from.
class PyRankSession {
 public:
  PyRankSession(std::vector<double> data, double rho, double epsilon,
                double beta, int k, uint64_t seed)
      : data_(std::make_unique<std::vector<double>>(std::move(data))),
        inner_(PrivateRankSession(*data_, rho, PrivacyBudget(epsilon), beta, k,
                                  RandomSource(seed))) {}

  double Ask(double q) { return inner_.session.Ask(q); }
  int remaining() const { return inner_.session.remaining(); }
  int capacity() const { return inner_.capacity; }
  double error_radius() const { return inner_.error_radius; }
  double noise_scale() const { return inner_.session.noise_spec().scale; }

 private:
  std::unique_ptr<std::vector<double>> data_;
  RankSession inner_;
};

}  // namespace
}  // namespace subdp

PYBIND11_MODULE(_core, m) {
  using namespace subdp;
  m.doc() = "Private sublinear estimators with data-dependent noise.";
  m.attr("__version__") = SUBDP_VERSION;

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidParameter>(m, "InvalidParameter",
                                           PyExc_ValueError);
  py::register_exception<RegimeViolation>(m, "RegimeViolation", error.ptr());
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", error.ptr());
  py::register_exception<OracleFailure>(m, "OracleFailure", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  m.def(
      "laplace_scale",
      [](double delta1, double delta2, double epsilon, int k) {
        return LaplaceScale({delta1, delta2, k}, PrivacyBudget(epsilon)).scale;
      },
      py::arg("delta1"), py::arg("delta2"), py::arg("epsilon"),
      py::arg("k") = 1);
  m.def(
      "zspareto_scale",
      [](double alpha, double delta1, double delta2, double epsilon) {
        return ZSParetoScale(alpha, {delta1, delta2, 1}, PrivacyBudget(epsilon))
            .scale;
      },
      py::arg("alpha"), py::arg("delta1"), py::arg("delta2"),
      py::arg("epsilon"));
  m.def(
      "sample_laplace",
      [](double scale, size_t n, uint64_t seed, uint64_t stream) {
        const LaplaceSpec spec{scale};
        ValidateSpec(spec);
        return Draw(n, seed, stream,
                    [&](RandomSource& r) { return SampleLaplace(spec, r); });
      },
      py::arg("scale"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sample_zspareto",
      [](double alpha, double scale, size_t n, uint64_t seed,
         uint64_t stream) {
        const ZSParetoSpec spec{alpha, scale};
        ValidateSpec(spec);
        return Draw(n, seed, stream,
                    [&](RandomSource& r) { return SampleZSPareto(spec, r); });
      },
      py::arg("alpha"), py::arg("scale"), py::arg("n"), py::arg("seed"),
      py::arg("stream") = 0);
  m.def(
      "zspareto_pdf",
      [](double alpha, double scale, double y) {
        return ZSParetoPdf({alpha, scale}, y);
      },
      py::arg("alpha"), py::arg("scale"), py::arg("y"));
  m.def(
      "zspareto_cdf",
      [](double alpha, double scale, double y) {
        return ZSParetoCdf({alpha, scale}, y);
      },
      py::arg("alpha"), py::arg("scale"), py::arg("y"));
  m.def("boost_run_count", &BoostRunCount, py::arg("beta"));

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, const std::vector<Edge>&>(), py::arg("n"),
           py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("degree", &Graph::Degree, py::arg("v"))
      .def("average_degree", &Graph::AverageDegree)
      .def("edges", &Graph::Edges)
      .def_static("empty", &Graph::Empty, py::arg("n"))
      .def_static("complete", &Graph::Complete, py::arg("n"))
      .def_static("path", &Graph::Path, py::arg("n"))
      .def_static("cycle", &Graph::Cycle, py::arg("n"))
      .def_static("disjoint_edges", &Graph::DisjointEdges, py::arg("pairs"))
      .def_static(
          "gnp",
          [](int n, double p, uint64_t seed) {
            RandomSource rng(seed);
            return Graph::Gnp(n, p, rng);
          },
          py::arg("n"), py::arg("p"), py::arg("seed"))
      .def_static("load", &LoadGraph, py::arg("path"))
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) +
               ", m=" + std::to_string(g.m()) + ")";
      });

  m.def("component_count", &ComponentCount, py::arg("graph"));
  m.def("maximum_matching_size", &MaximumMatchingSize, py::arg("graph"));

  m.def(
      "private_cc",
      [](const Graph& g, double rho, double epsilon, double beta,
         uint64_t seed, bool force) {
        RandomSource rng(seed);
        return ToPython(ToJson(PrivateCc(g, rho, PrivacyBudget(epsilon), beta,
                                         rng,
                                         Options(kCcAccuracyDivisor, force))));
      },
      py::arg("graph"), py::arg("rho"), py::arg("epsilon"),
      py::arg("beta") = 1.0 / 3.0, py::arg("seed") = 1,
      py::arg("force") = false);
  m.def(
      "private_matching",
      [](const Graph& g, double rho, double epsilon, double beta,
         uint64_t seed, bool force, int level) {
        RandomSource rng(seed);
        MatchingOptions mo;
        mo.level = level;
        return ToPython(ToJson(PrivateMatching(
            g, rho, PrivacyBudget(epsilon), beta, rng,
            Options(kMatchingAccuracyDivisor, force), mo)));
      },
      py::arg("graph"), py::arg("rho"), py::arg("epsilon"),
      py::arg("beta") = 1.0 / 3.0, py::arg("seed") = 1,
      py::arg("force") = false, py::arg("level") = 1);
  m.def(
      "private_avg_degree",
      [](const Graph& g, double rho, double epsilon, double beta,
         uint64_t seed, bool force, double m_min) {
        RandomSource rng(seed);
        AvgDegreeOptions ao;
        ao.force = force;
        ao.m_min = m_min;
        return ToPython(ToJson(
            PrivateAvgDegree(g, rho, PrivacyBudget(epsilon), beta, rng, ao)));
      },
      py::arg("graph"), py::arg("rho"), py::arg("epsilon"),
      py::arg("beta") = 1.0 / 3.0, py::arg("seed") = 1,
      py::arg("force") = false, py::arg("m_min") = 1.0);

  m.def(
      "exact_f2",
      [](const std::vector<std::pair<uint64_t, int64_t>>& updates,
         uint64_t universe) {
        F2Stream s;
        s.universe = universe;
        for (const auto& [i, d] : updates) s.updates.push_back({i, d});
        return ExactF2(s);
      },
      py::arg("updates"), py::arg("universe"));
  m.def(
      "private_f2",
      [](const std::vector<std::pair<uint64_t, int64_t>>& updates,
         uint64_t universe, double rho, double epsilon, double beta,
         uint64_t seed, bool force, int64_t max_delta) {
        F2Stream s;
        s.universe = universe;
        s.max_delta = max_delta;
        for (const auto& [i, d] : updates) s.updates.push_back({i, d});
        RandomSource rng(seed);
        return ToPython(ToJson(PrivateF2(s, rho, PrivacyBudget(epsilon), beta,
                                         rng,
                                         Options(kF2AccuracyDivisor, force))));
      },
      py::arg("updates"), py::arg("universe"), py::arg("rho"),
      py::arg("epsilon"), py::arg("beta") = 1.0 / 3.0, py::arg("seed") = 1,
      py::arg("force") = false, py::arg("max_delta") = 1);

  py::class_<PyRankSession>(m, "RankSession")
      .def(py::init<std::vector<double>, double, double, double, int,
                    uint64_t>(),
           py::arg("data"), py::arg("rho"), py::arg("epsilon"),
           py::arg("beta") = 1.0 / 3.0, py::arg("k") = 1,
           py::arg("seed") = 1)
      .def("ask", &PyRankSession::Ask, py::arg("q"))
      .def_property_readonly("remaining", &PyRankSession::remaining)
      .def_property_readonly("capacity", &PyRankSession::capacity)
      .def_property_readonly("error_radius", &PyRankSession::error_radius)
      .def_property_readonly("noise_scale", &PyRankSession::noise_scale);
  m.def("exact_rank", &ExactRank, py::arg("data"), py::arg("q"));

  m.def("designated_audits", [] {
    py::list out;
    for (const AuditScenario& s : DesignatedAudits()) {
      py::dict d;
      d["name"] = s.name;
      d["relation"] = s.relation;
      d["description"] = s.description;
      d["expect_pass"] = s.expect_pass;
      out.append(d);
    }
    return out;
  });
  m.def(
      "audit",
      [](const std::string& name, int64_t trials, uint64_t seed, int bins) {
        AuditOptions opts;
        opts.trials = trials;
        opts.seed = seed;
        opts.bins = bins;
        AuditReport r;
        {
          py::gil_scoped_release release;
          r = RunDesignatedAudit(name, opts);
        }
        return ToPython(ToJson(r));
      },
      py::arg("name"), py::arg("trials") = 100'000, py::arg("seed") = 1,
      py::arg("bins") = 40);
  m.def(
      "verify_integral_bound",
      [](const std::vector<double>& alphas, const std::vector<double>& eps,
         const std::vector<double>& xs, double tolerance) {
        Json rows = Json::array();
        for (const IntegralCase& c :
             VerifyIntegralBound(alphas, eps, xs, tolerance)) {
          rows.push_back(ToJson(c));
        }
        return ToPython(rows);
      },
      py::arg("alphas"), py::arg("epsilons"), py::arg("xs"),
      py::arg("tolerance") = 1e-6);
}

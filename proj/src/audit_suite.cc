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

#include "subdp/audit_suite.h"

#include <functional>

#include "subdp/errors.h"
#include "subdp/graph.h"
#include "subdp/graph_estimators.h"
#include "subdp/sketches.h"

namespace subdp {
namespace {

using Output = std::vector<double>;

template <typename Input>
AuditReport Run(const NeighborPair<Input>& pair,
                std::function<double(const Input&, RandomSource&)> mech,
                const AuditOptions& opts) {
  std::function<Output(const Input&, RandomSource&)> wrapped =
      [&mech](const Input& in, RandomSource& rng) {
        return Output{mech(in, rng)};
      };
  return AuditEpsilon(wrapped, pair, opts);
}

F2Stream UnitStream(std::vector<uint64_t> indices, uint64_t universe) {
  F2Stream s;
  s.universe = universe;
  for (uint64_t i : indices) s.updates.push_back({i, 1});
  return s;
}

}  // namespace

std::vector<AuditScenario> DesignatedAudits() {
  return {
      {"cc", "edge", "private_cc: 20 isolated vertices vs one added edge",
       true},
      {"f2", "update", "private_f2: 5 unit updates vs last update moved", true},
      {"matching", "node", "private_matching: K4 vs K3", true},
      {"rank", "element",
       "private rank session, k=2 threshold strategy: 0..19 vs one element "
       "changed",
       true},
      {"avgdeg", "edge", "private_avg_degree: K4 vs K4 minus an edge", true},
      {"laplace", "update", "count + Laplace(1/epsilon): 0 vs 1", true},
      {"control", "edge", "unnoised cc estimate on the cc pair", false},
  };
}

AuditReport RunDesignatedAudit(const std::string& name,
                               const AuditOptions& opts) {
  const PrivacyBudget budget(opts.epsilon_target);
  constexpr double kBeta = 1.0 / 3.0;
  if (name == "cc" || name == "control") {
    const Graph a = Graph::Empty(20);
    const NeighborPair<Graph> pair{a, a.WithEdge(0, 1), "edge"};
    if (name == "control") {
      return Run<Graph>(
          pair,
          [](const Graph& g, RandomSource& rng) {
            return CcEstimate(g, 0.5, rng);
          },
          opts);
    }
    return Run<Graph>(
        pair,
        [&budget](const Graph& g, RandomSource& rng) {
          return PrivateCc(g, 0.5, budget, kBeta, rng).value;
        },
        opts);
  }
  if (name == "f2") {
    const NeighborPair<F2Stream> pair{UnitStream({0, 1, 2, 3, 4}, 20),
                                      UnitStream({0, 1, 2, 3, 0}, 20),
                                      "update"};
    return Run<F2Stream>(
        pair,
        [&budget](const F2Stream& s, RandomSource& rng) {
          return PrivateF2(s, 0.5, budget, kBeta, rng).value;
        },
        opts);
  }
  if (name == "matching") {
    const Graph a = Graph::Complete(4);
    const NeighborPair<Graph> pair{a, a.WithoutVertex(3), "node"};
    return Run<Graph>(
        pair,
        [&budget](const Graph& g, RandomSource& rng) {
          return PrivateMatching(g, 0.5, budget, kBeta, rng).value;
        },
        opts);
  }
  if (name == "avgdeg") {
    const Graph a = Graph::Complete(4);
    const NeighborPair<Graph> pair{a, a.WithoutEdge(0, 1), "edge"};
    return Run<Graph>(
        pair,
        [&budget](const Graph& g, RandomSource& rng) {
          return PrivateAvgDegree(g, 0.5, budget, kBeta, rng).value;
        },
        opts);
  }
  if (name == "laplace") {
    const NeighborPair<double> pair{0.0, 1.0, "update"};
    const LaplaceSpec noise{1.0 / budget.epsilon()};
    return Run<double>(
        pair,
        [noise](const double& x, RandomSource& rng) {
          return x + SampleLaplace(noise, rng);
        },
        opts);
  }
  if (name == "rank") {
    std::vector<double> a;
    for (int i = 0; i < 20; ++i) a.push_back(i);
    std::vector<double> b = a;
    b[3] = 17.5;
    const NeighborPair<std::vector<double>> pair{a, b, "element"};
    std::function<QuerySession<double>(const std::vector<double>&,
                                       RandomSource&)>
        factory = [&budget](const std::vector<double>& data,
                            RandomSource& rng) {
          return PrivateRankSession(data, 0.5, budget, 0.1, 2, rng).session;
        };
    std::function<double(const std::vector<double>&)> strategy =
        [](const std::vector<double>& answers) {
          if (answers.empty()) return 9.5;
          return answers.back() >= 10.0 ? 14.5 : 4.5;
        };
    return AdaptiveAdversaryAudit(factory, strategy, pair, 2, opts);
  }
  throw InvalidParameter(ErrorCode::kInvalidArgument,
                         "unknown audit scenario: " + name);
}

}  // namespace subdp

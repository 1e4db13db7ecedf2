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


#include "subdp/graph_estimators.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "subdp/exact.h"
#include "subdp/graph.h"

namespace subdp {
namespace {

// Maximum matching by dynamic programming over vertex subsets.
int BruteForceMatching(const Graph& g) {
  const int n = g.n();
  std::vector<int> best(1 << n, 0);
  for (int mask = 1; mask < (1 << n); ++mask) {
    const int v = __builtin_ctz(mask);
    const int rest = mask & ~(1 << v);
    int b = best[rest];
    for (int u : g.Neighbors(v)) {
      if (rest & (1 << u)) b = std::max(b, 1 + best[rest & ~(1 << u)]);
    }
    best[mask] = b;
  }
  return best[(1 << n) - 1];
}

Graph FromMask(int n, int mask) {
  std::vector<Edge> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if (mask & (1 << bit)) edges.push_back({u, v});
    }
  }
  return Graph(n, edges);
}

TEST(GraphTest, Construction) {
  const Graph g(4, {{0, 1}, {2, 1}, {3, 0}});
  EXPECT_EQ(g.n(), 4);
  EXPECT_EQ(g.m(), 3);
  EXPECT_TRUE(g.HasEdge(1, 2));
  EXPECT_FALSE(g.HasEdge(2, 3));
  EXPECT_EQ(g.Degree(0), 2);
  EXPECT_DOUBLE_EQ(g.AverageDegree(), 1.5);
  EXPECT_EQ(g.Edges(), (std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}}));
  EXPECT_THROW(Graph(3, {{0, 0}}), InvalidParameter);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InvalidParameter);
  EXPECT_THROW(Graph(3, {{0, 3}}), InvalidParameter);
}

TEST(GraphTest, Neighbors) {
  const Graph k4 = Graph::Complete(4);
  EXPECT_EQ(k4.m(), 6);
  const Graph k3 = k4.WithoutVertex(3);
  EXPECT_EQ(k3.n(), 3);
  EXPECT_EQ(k3.m(), 3);
  EXPECT_EQ(k4.WithoutEdge(0, 1).m(), 5);
  EXPECT_EQ(Graph::Empty(5).WithEdge(0, 4).m(), 1);
  EXPECT_THROW(k4.WithEdge(0, 1), InvalidParameter);
  EXPECT_EQ(Graph::Star(5).Degree(0), 5);
  EXPECT_EQ(Graph::Cycle(6).m(), 6);
  EXPECT_EQ(Graph::DisjointEdges(3).m(), 3);
}

TEST(ExactTest, Components) {
  EXPECT_EQ(ComponentCount(Graph::Empty(7)), 7);
  EXPECT_EQ(ComponentCount(Graph::Path(7)), 1);
  EXPECT_EQ(ComponentCount(Graph::DisjointEdges(4)), 4);
  EXPECT_EQ(ComponentCount(Graph(5, {{0, 1}, {3, 4}})), 3);
}

TEST(ExactTest, BlossomMatchesBruteForce) {
  RandomSource rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + rng.Below(12);
    const double p = rng.Uniform();
    const Graph g = Graph::Gnp(n, p, rng);
    ASSERT_EQ(MaximumMatchingSize(g), BruteForceMatching(g)) << trial;
  }
  EXPECT_EQ(MaximumMatchingSize(Graph::Cycle(5)), 2);
  EXPECT_EQ(MaximumMatchingSize(Graph::Complete(7)), 3);
  EXPECT_EQ(MaximumMatchingSize(Graph::Star(9)), 1);
}

TEST(ExactTest, Rank) {
  const std::vector<double> d = {3, 1, 2, 2};
  EXPECT_EQ(ExactRank(d, 2.0), 3);
  EXPECT_EQ(ExactRank(d, 0.5), 0);
  EXPECT_EQ(ExactRank(d, 10.0), 4);
}

TEST(CcEstimateTest, PathIsOneComponent) {
  RandomSource rng(1);
  EXPECT_DOUBLE_EQ(CcEstimate(Graph::Path(10), 0.1, rng), 1.0);
}

TEST(CcEstimateTest, EdgelessIsExact) {
  for (double rho : {0.05, 0.5, 1.0}) {
    RandomSource rng(2);
    EXPECT_DOUBLE_EQ(CcEstimate(Graph::Empty(300), rho, rng), 300.0);
  }
}

TEST(CcEstimateTest, RmseWithinRhoN) {
  RandomSource gen(3);
  const Graph g = Graph::Gnp(2000, 1.0 / 2000, gen);
  const double truth = ComponentCount(g);
  const double rho = 0.1;
  double sq = 0.0;
  const int seeds = 500;
  for (int s = 0; s < seeds; ++s) {
    RandomSource rng(s);
    const double e = CcEstimate(g, rho, rng) - truth;
    sq += e * e;
  }
  EXPECT_LE(std::sqrt(sq / seeds), rho * g.n());
}

TEST(PrivateCcTest, Coverage) {
  RandomSource gen(4);
  const Graph g = Graph::Gnp(500, 0.01, gen);
  const double truth = ComponentCount(g);
  const double rho = 0.2;
  const double beta = 1.0 / 3.0;
  int ok = 0;
  for (int i = 0; i < 300; ++i) {
    RandomSource rng(i);
    const PrivateEstimate e = PrivateCc(g, rho, PrivacyBudget(1.0), beta, rng);
    ok += std::abs(e.value - truth) <= rho * g.n();
  }
  EXPECT_GE(ok, (1.0 - beta) * 300);
}

TEST(PrivateCcTest, RegimeAndDeterminism) {
  RandomSource rng(5);
  EXPECT_THROW(PrivateCc(Graph::Empty(3), 0.1, PrivacyBudget(1.0), 0.3, rng),
               RegimeViolation);
  RandomSource a(6);
  RandomSource b(6);
  const Graph g = Graph::Empty(100);
  EXPECT_EQ(PrivateCc(g, 0.5, PrivacyBudget(1.0), 0.3, a).value,
            PrivateCc(g, 0.5, PrivacyBudget(1.0), 0.3, b).value);
}

// Every level-0 answer set is a maximal matching; level 1 stays a matching,
// dominates level 0 and reaches 2/3 of the maximum.
TEST(MatchingOracleTest, ExhaustiveSmallGraphs) {
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      const Graph g = FromMask(n, mask);
      const int best = BruteForceMatching(g);
      for (uint64_t seed = 0; seed < 4; ++seed) {
        MatchingOracle o0(g, seed, 0);
        MatchingOracle o1(g, seed, 1);
        int matched0 = 0;
        int matched1 = 0;
        for (int v = 0; v < n; ++v) {
          const int mate = o0.GreedyMate(v);
          ASSERT_EQ(mate != -1, o0.IsMatched(v));
          if (mate != -1) {
            ASSERT_TRUE(g.HasEdge(v, mate));
            ASSERT_EQ(o0.GreedyMate(mate), v);
            ASSERT_TRUE(o0.EdgeInGreedy(v, mate));
          }
          matched0 += mate != -1;
          matched1 += o1.IsMatched(v);
          if (mate != -1) ASSERT_TRUE(o1.IsMatched(v));
        }
        for (const Edge& e : g.Edges()) {
          ASSERT_TRUE(o0.IsMatched(e.first) || o0.IsMatched(e.second));
        }
        ASSERT_EQ(matched0 % 2, 0);
        ASSERT_EQ(matched1 % 2, 0);
        ASSERT_LE(matched1 / 2, best);
        ASSERT_GE(3 * (matched1 / 2), 2 * best);
      }
    }
  }
}

TEST(MatchingOracleTest, RandomGraphs) {
  RandomSource rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = Graph::Gnp(12, rng.Uniform() * 0.5, rng);
    const int best = BruteForceMatching(g);
    MatchingOracle o1(g, trial, 1);
    int matched = 0;
    for (int v = 0; v < g.n(); ++v) matched += o1.IsMatched(v);
    ASSERT_EQ(matched % 2, 0);
    ASSERT_GE(3 * (matched / 2), 2 * best);
    ASSERT_LE(matched / 2, best);
  }
}

TEST(MatchingOracleTest, Basics) {
  const Graph complete = Graph::Complete(2);
  MatchingOracle k2(complete, 1, 0);
  EXPECT_TRUE(k2.IsMatched(0));
  EXPECT_TRUE(k2.IsMatched(1));
  const Graph empty = Graph::Empty(3);
  MatchingOracle iso(empty, 1, 1);
  EXPECT_FALSE(iso.IsMatched(2));
  EXPECT_THROW(iso.IsMatched(3), InvalidParameter);
  EXPECT_THROW(iso.GreedyMate(-1), InvalidParameter);
  EXPECT_THROW(MatchingOracle(empty, 1, 2), InvalidParameter);
  // P4: level 1 repairs a greedy choice of the middle edge.
  const Graph path = Graph::Path(4);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    MatchingOracle p4(path, seed, 1);
    for (int v = 0; v < 4; ++v) EXPECT_TRUE(p4.IsMatched(v));
  }
}

TEST(MatchingOracleTest, CapThrows) {
  RandomSource rng(8);
  const Graph g = Graph::Gnp(3000, 0.01, rng);
  MatchingOracle o(g, 1, 1, 50);
  bool threw = false;
  for (int v = 0; v < 100 && !threw; ++v) {
    try {
      o.IsMatched(v);
    } catch (const OracleFailure&) {
      threw = true;
    }
  }
  EXPECT_TRUE(threw);
}

TEST(MatchingEstimateTest, PerfectMatchingIsExact) {
  RandomSource rng(9);
  EXPECT_DOUBLE_EQ(MatchingEstimate(Graph::DisjointEdges(50), 0.1, rng), 50.0);
  EXPECT_DOUBLE_EQ(MatchingEstimate(Graph::DisjointEdges(5000), 0.1, rng),
                   5000.0);
  EXPECT_DOUBLE_EQ(MatchingEstimate(Graph::Empty(40), 0.1, rng), 0.0);
}

TEST(MatchingEstimateTest, DuplicationDoubles) {
  RandomSource gen(10);
  const Graph g = Graph::Gnp(100, 0.03, gen);
  std::vector<Edge> edges = g.Edges();
  for (const Edge& e : g.Edges()) edges.push_back({e.first + 100, e.second + 100});
  const Graph twice(200, edges);
  double a = 0.0;
  double b = 0.0;
  const int seeds = 2000;
  for (int s = 0; s < seeds; ++s) {
    RandomSource r1(s);
    RandomSource r2(s + seeds);
    a += MatchingEstimate(g, 0.2, r1);
    b += MatchingEstimate(twice, 0.2, r2);
  }
  EXPECT_NEAR(b / a, 2.0, 0.05);
}

TEST(PrivateMatchingTest, DisjointEdgesCoverage) {
  const Graph g = Graph::DisjointEdges(100);
  const double rho = 0.1;
  const double beta = 1.0 / 3.0;
  int ok = 0;
  for (int i = 0; i < 300; ++i) {
    RandomSource rng(i);
    const PrivateEstimate e =
        PrivateMatching(g, rho, PrivacyBudget(1.0), beta, rng);
    ok += std::abs(e.value - 100.0) <= rho * g.n();
  }
  EXPECT_GE(ok, (1.0 - beta) * 300);
}

TEST(AvgDegreeEstimateTest, Unbiased) {
  for (const Graph& g : {Graph::Cycle(50), Graph::Complete(20), Graph::Star(30),
                         Graph::Path(40)}) {
    double sum = 0.0;
    const int seeds = 2000;
    for (int s = 0; s < seeds; ++s) {
      RandomSource rng(s);
      sum += AvgDegreeEstimate(g, 1.0, 1.0, rng, 4.0);
    }
    EXPECT_NEAR(sum / seeds, g.AverageDegree(), 0.05 * g.AverageDegree());
  }
}

TEST(AvgDegreeEstimateTest, SampleCount) {
  EXPECT_EQ(AvgDegreeSampleCount(100, 4.0, 0.5, 1.0), 20.0);
  EXPECT_EQ(AvgDegreeSampleCount(1 << 30, 1e-30, 1e-9), 0x1.0p53);
  EXPECT_NEAR(kAvgDegreeSampleConstant, 4.0 * std::pow(320.0, 1.5), 1.0);
}

// Large advice: few samples, still unbiased; the default constant reaches the
// aggregate path.
TEST(AvgDegreeEstimateTest, AggregatePath) {
  RandomSource gen(11);
  const Graph g = Graph::Gnp(300, 0.05, gen);
  double sum = 0.0;
  double sq = 0.0;
  const int seeds = 300;
  for (int s = 0; s < seeds; ++s) {
    RandomSource rng(s);
    const double x = AvgDegreeEstimate(g, g.AverageDegree(), 0.1, rng);
    sum += x;
    sq += (x - g.AverageDegree()) * (x - g.AverageDegree());
  }
  EXPECT_NEAR(sum / seeds, g.AverageDegree(), 0.01 * g.AverageDegree());
  EXPECT_LE(std::sqrt(sq / seeds), 0.1 * g.AverageDegree());
}

AdvisedEstimator<double> Exact() {
  AdvisedEstimator<double> b;
  b.evaluate = [](const double& g, double, double, RandomSource&) { return g; };
  b.sensitivity = 0.01;
  return b;
}

TEST(AdviceSearchTest, Iterations) {
  AdviceSearchConfig cfg;
  cfg.upper = 1000.0;
  cfg.lower = 1.0;
  EXPECT_EQ(cfg.Iterations(), 10);
  cfg.upper = 1024.0;
  EXPECT_EQ(cfg.Iterations(), 11);
  cfg.lower = 2000.0;
  EXPECT_THROW(cfg.Validate(), InvalidParameter);
}

TEST(AdviceSearchTest, WalkAndFloor) {
  AdviceSearchConfig cfg;
  cfg.upper = 1024.0;
  cfg.lower = 1.0;
  cfg.rho = 0.1;
  int at_top = 0;
  int floors = 0;
  for (int i = 0; i < 200; ++i) {
    RandomSource rng(i);
    const AdviceSearchResult top = AdviceRemovalSearch(Exact(), 5000.0, cfg, rng);
    at_top += top.iterations == 1 && top.advice == 1024.0;
    RandomSource rng2(i);
    const AdviceSearchResult zero = AdviceRemovalSearch(Exact(), 0.0, cfg, rng2);
    floors += zero.floor_reached;
    EXPECT_EQ(zero.epsilon_spent, cfg.epsilon);
    if (zero.floor_reached) {
      EXPECT_EQ(zero.advice, cfg.lower);
      EXPECT_EQ(zero.iterations, cfg.Iterations());
    }
  }
  EXPECT_GE(at_top, 190);
  EXPECT_GE(floors, 50);
}

TEST(AdviceSearchTest, Deterministic) {
  AdviceSearchConfig cfg;
  cfg.upper = 500.0;
  RandomSource a(3);
  RandomSource b(3);
  const auto x = AdviceRemovalSearch(Exact(), 40.0, cfg, a);
  const auto y = AdviceRemovalSearch(Exact(), 40.0, cfg, b);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.advice, y.advice);
}

// The search does not stop too early: y~/160 <= g in most runs, over a range
// of true values.
TEST(AdviceSearchTest, StopsNearScale) {
  AdvisedEstimator<double> b;
  b.evaluate = [](const double& g, double y, double rho, RandomSource& rng) {
    return g + SampleLaplace({rho * y}, rng);
  };
  b.sensitivity = 0.01;
  AdviceSearchConfig cfg;
  cfg.upper = 1000.0;
  cfg.lower = 1.0;
  cfg.rho = 0.1;
  for (double g : {2.0, 30.0, 900.0}) {
    int good = 0;
    int close = 0;
    for (int i = 0; i < 2000; ++i) {
      RandomSource rng(i);
      const AdviceSearchResult r = AdviceRemovalSearch(b, g, cfg, rng);
      good += r.advice / 160.0 <= g;
      close += std::abs(r.value - g) <= cfg.rho * g;
    }
    EXPECT_GE(good, 1500) << g;
    EXPECT_GE(close, 1334) << g;
  }
}

TEST(PrivateAvgDegreeTest, RelativeCoverage) {
  RandomSource gen(12);
  const Graph g = Graph::Gnp(1000, 0.02, gen);
  const double rho = 0.2;
  const double beta = 1.0 / 3.0;
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    RandomSource rng(i);
    const PrivateEstimate e =
        PrivateAvgDegree(g, rho, PrivacyBudget(1.0), beta, rng);
    ok += std::abs(e.value - g.AverageDegree()) <= rho * g.AverageDegree();
    EXPECT_EQ(e.meta.runs, 3);
  }
  EXPECT_GE(ok, 67);
}

TEST(PrivateAvgDegreeTest, Regime) {
  RandomSource rng(13);
  // 2/10 > 0.1 * 1.8.
  EXPECT_THROW(
      PrivateAvgDegree(Graph::Path(10), 0.1, PrivacyBudget(1.0), 0.3, rng),
      RegimeViolation);
  AvgDegreeOptions opts;
  opts.force = true;
  const PrivateEstimate e =
      PrivateAvgDegree(Graph::Path(10), 0.1, PrivacyBudget(1.0), 0.3, rng, opts);
  EXPECT_TRUE(e.meta.forced);
  EXPECT_THROW(
      PrivateAvgDegree(Graph::Empty(10), 0.1, PrivacyBudget(1.0), 0.3, rng),
      InvalidParameter);
}

}  // namespace
}  // namespace subdp

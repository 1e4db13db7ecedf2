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

// Sublinear graph estimators and their private versions: number of connected
// components (edge-DP), maximum matching size (node-DP) and average degree
// (edge-DP) via a private geometric search over the advice parameter.

#ifndef SUBDP_GRAPH_ESTIMATORS_H_
#define SUBDP_GRAPH_ESTIMATORS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "subdp/graph.h"
#include "subdp/noise.h"
#include "subdp/privatizer.h"
#include "subdp/random.h"

namespace subdp {

// ---------------------------------------------------------------------------
// Connected components.

// Samples ceil(4 / rho^2) vertices with replacement; a vertex contributes
// 1 / min(|C(v)|, ceil(2 / rho)), found by truncated BFS. Returns n / s times
// the sum. RMSE at most rho * n.
double CcEstimate(const Graph& g, double rho, RandomSource& rng);

ApproxEstimator<Graph> CcEstimator();

inline constexpr double kCcAccuracyDivisor = 8.0;

PrivateEstimate PrivateCc(const Graph& g, double rho,
                          const PrivacyBudget& budget, double beta,
                          RandomSource& rng,
                          PrivatizeOptions opts = WithAccuracyDivisor(kCcAccuracyDivisor));

// ---------------------------------------------------------------------------
// Maximum matching.

inline constexpr int64_t kDefaultOracleCap = 1'000'000;

// Local oracle for one fixed random matching. Level 0 is the greedy maximal
// matching in order of random edge ranks. Level 1 additionally applies a
// maximal set of vertex-disjoint length-3 augmenting paths chosen greedily in
// random order. Queries are answered by local simulation with memoization;
// a query that resolves more than `cap` items throws OracleFailure.
// The graph must outlive the oracle.
class MatchingOracle {
 public:
  MatchingOracle(const Graph& g, uint64_t seed, int level = 0,
                 int64_t cap = kDefaultOracleCap);
  MatchingOracle(Graph&&, uint64_t, int = 0, int64_t = 0) = delete;
  ~MatchingOracle();
  MatchingOracle(MatchingOracle&&) noexcept;

  bool IsMatched(int v);
  // Greedy matching partner of v, or -1. Level 0 matching only.
  int GreedyMate(int v);
  bool EdgeInGreedy(int u, int v);

  int level() const { return level_; }
  // Items resolved by the most recent query.
  int64_t last_query_cost() const { return last_cost_; }

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
  int level_;
  int64_t last_cost_ = 0;
};

struct MatchingOptions {
  int level = 1;
  int64_t cap = kDefaultOracleCap;
};

// Samples ceil(2 / rho^2) vertices and returns n / (2s) times the number of
// matched ones.
double MatchingEstimate(const Graph& g, double rho, RandomSource& rng,
                        const MatchingOptions& opts = {});

// Declared diameter 1.02 * rho * n: the sampling term plus an allowance of
// rho * n / 2 for the oracle's distance to the maximum matching.
ApproxEstimator<Graph> MatchingEstimator(const MatchingOptions& opts = {});

inline constexpr double kMatchingAccuracyDivisor = 8.0;

PrivateEstimate PrivateMatching(
    const Graph& g, double rho, const PrivacyBudget& budget, double beta,
    RandomSource& rng,
    PrivatizeOptions opts = WithAccuracyDivisor(kMatchingAccuracyDivisor),
    const MatchingOptions& matching = {});

// ---------------------------------------------------------------------------
// Average degree.

// An estimator that takes an advice value y besides the accuracy.
template <typename Input>
struct AdvisedEstimator {
  std::function<double(const Input&, double y, double rho, RandomSource&)>
      evaluate;
  double sensitivity = 0.0;
};

template <typename Input>
AdvisedEstimator<Input> MedianAmplify(AdvisedEstimator<Input> est) {
  auto evaluate = std::move(est.evaluate);
  est.evaluate = [evaluate](const Input& in, double y, double rho,
                            RandomSource& rng) {
    std::vector<double> runs(kMedianRuns);
    for (double& r : runs) {
      RandomSource child = rng.Fork();
      r = evaluate(in, y, rho, child);
    }
    return internal::Median(std::move(runs));
  };
  return est;
}

// 4 * 320^1.5: the estimator meets E|A - g| <= rho * y whenever y >= g / 320.
inline constexpr double kAvgDegreeSampleConstant = 22898.0;

// Degree-ordered random-neighbor estimator. Each of
// r = ceil(c * sqrt(n) / (rho^2 sqrt(y))) samples picks a vertex v and a
// random neighbor u and contributes 2 d(v) when v precedes u in
// (degree, id) order. Unbiased; y is advice in average-degree units.
double AvgDegreeEstimate(const Graph& g, double y, double rho,
                         RandomSource& rng,
                         double c = kAvgDegreeSampleConstant);

// Samples the estimator would draw.
double AvgDegreeSampleCount(int n, double y, double rho,
                            double c = kAvgDegreeSampleConstant);

AdvisedEstimator<Graph> AvgDegreeEstimator(
    double c = kAvgDegreeSampleConstant);

struct AdviceSearchConfig {
  double upper = 1.0;  // M >= sup g
  double lower = 1.0;  // m_lo <= inf g
  double c1 = 0.5;
  double c2 = 0.5;
  double epsilon = 1.0;
  double rho = 0.1;

  void Validate() const;
  // floor(log2(M / m_lo)) + 1.
  int Iterations() const;
};

struct AdviceSearchResult {
  double value = 0.0;
  double advice = 0.0;  // final y~
  int iterations = 0;   // loop steps performed
  bool floor_reached = false;
  double loop_noise_scale = 0.0;  // at the final y~
  double final_noise_scale = 0.0;
  double epsilon_spent = 0.0;
};

// Halving search: y~ = M, M/2, ...; stop at the first noisy
// B(x, y~, eps / (330 * 3^c2 * J)) that reaches y~; then release
// B(x, y~ / 160, rho * eps) + ZSPareto_3 noise. Half the budget goes to the
// loop, split evenly over the J possible steps, half to the final release.
template <typename Input>
AdviceSearchResult AdviceRemovalSearch(const AdvisedEstimator<Input>& b,
                                       const Input& input,
                                       const AdviceSearchConfig& cfg,
                                       RandomSource& rng);

inline constexpr double kAvgDegreeAccuracyDivisor = 4.0;

struct AvgDegreeOptions {
  double m_min = 1.0;  // declared lower bound on the edge count
  double c = kAvgDegreeSampleConstant;
  double accuracy_divisor = kAvgDegreeAccuracyDivisor;
  bool force = false;
};

// Relative error at most rho with probability 1 - beta: the median of
// BoostRunCount(beta) searches, each at epsilon / t.
PrivateEstimate PrivateAvgDegree(const Graph& g, double rho,
                                 const PrivacyBudget& budget, double beta,
                                 RandomSource& rng,
                                 const AvgDegreeOptions& opts = {});

// ---------------------------------------------------------------------------

template <typename Input>
AdviceSearchResult AdviceRemovalSearch(const AdvisedEstimator<Input>& b,
                                       const Input& input,
                                       const AdviceSearchConfig& cfg,
                                       RandomSource& rng) {
  cfg.Validate();
  const int iterations = cfg.Iterations();
  const double eps = cfg.epsilon;
  const double root3c2 = std::pow(3.0, cfg.c2);
  const double moment3 = std::cbrt(10.0);
  const PrivacyBudget loop_budget(eps / (2.0 * iterations));
  const PrivacyBudget final_budget(eps / 2.0);
  const double rho_loop = eps / (330.0 * root3c2 * iterations);

  AdviceSearchResult out;
  out.epsilon_spent = eps;
  double advice = cfg.upper;
  bool triggered = false;
  for (int j = 0; j < iterations; ++j) {
    RandomSource step = rng.Fork();
    const double raw = b.evaluate(input, advice, rho_loop, step);
    const ZSParetoSpec noise{
        3.0, std::max(advice / (3.0 * root3c2),
                      ZSParetoScale(3.0,
                                    {b.sensitivity, moment3 * rho_loop * advice,
                                     1},
                                    loop_budget)
                          .scale)};
    out.loop_noise_scale = noise.scale;
    ++out.iterations;
    if (raw + SampleZSPareto(noise, step) >= advice) {
      triggered = true;
      break;
    }
    advice /= 2.0;
  }
  if (!triggered) {
    advice = cfg.lower;
    out.floor_reached = true;
  }
  out.advice = advice;
  RandomSource final_rng = rng.Fork();
  const double rho_final = cfg.rho * eps;
  const double raw = b.evaluate(input, advice / 160.0, rho_final, final_rng);
  const ZSParetoSpec noise{
      3.0,
      std::max(cfg.rho * advice,
               ZSParetoScale(3.0,
                             {b.sensitivity,
                              moment3 * rho_final * advice / 160.0, 1},
                             final_budget)
                   .scale)};
  out.final_noise_scale = noise.scale;
  out.value = raw + SampleZSPareto(noise, final_rng);
  return out;
}

}  // namespace subdp

#endif  // SUBDP_GRAPH_ESTIMATORS_H_

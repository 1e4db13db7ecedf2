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

// Numerical checks of the noise lemmas and histogram-based empirical epsilon
// audits on neighboring inputs. An audit can refute a privacy claim but never
// certify one.

#ifndef SUBDP_AUDITOR_H_
#define SUBDP_AUDITOR_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subdp/noise.h"
#include "subdp/privatizer.h"
#include "subdp/random.h"

namespace subdp {

template <typename Input>
struct NeighborPair {
  Input a;
  Input b;
  std::string relation;  // edge, node, update or element
};

struct AuditOptions {
  int64_t trials = 100'000;
  int bins = 40;
  double epsilon_target = 1.0;
  double slack = 0.0;
  // Family-wise miscoverage of the Wilson intervals (Bonferroni-split over
  // all cells and both datasets).
  double alpha = 1e-3;
  // Cells with fewer pooled samples are folded into one remainder cell.
  int64_t min_cell = 100;
  uint64_t seed = 1;
};

struct AuditCell {
  std::string label;
  int64_t count_a = 0;
  int64_t count_b = 0;
  double log_ratio = 0.0;    // plug-in log(p_a / p_b)
  double lower_bound = 0.0;  // smallest |log ratio| consistent with the CIs
};

struct AuditReport {
  double epsilon_target = 0.0;
  double epsilon_measured = 0.0;
  double slack = 0.0;
  double z = 0.0;
  int64_t trials = 0;
  int bins = 0;  // cells actually compared
  int dims = 1;
  uint64_t seed = 0;
  std::vector<AuditCell> cells;
  bool pass = false;
};

// Histogram audit of two samples with `dims` coordinates per trial (row
// major). Bins come from pooled quantiles per coordinate; with two
// coordinates a product grid of ceil(sqrt(bins)) per axis is used.
AuditReport AuditSamples(const std::vector<double>& a,
                         const std::vector<double>& b, int dims,
                         const AuditOptions& opts);

// Runs `mechanism` opts.trials times on each side of the pair. Trial i uses
// RandomSource(opts.seed, i) on both sides.
template <typename Input>
AuditReport AuditEpsilon(
    const std::function<std::vector<double>(const Input&, RandomSource&)>&
        mechanism,
    const NeighborPair<Input>& pair, const AuditOptions& opts) {
  std::vector<double> a;
  std::vector<double> b;
  int dims = 0;
  for (int64_t i = 0; i < opts.trials; ++i) {
    RandomSource ra(opts.seed, static_cast<uint64_t>(i));
    RandomSource rb(opts.seed, static_cast<uint64_t>(i));
    const std::vector<double> xa = mechanism(pair.a, ra);
    const std::vector<double> xb = mechanism(pair.b, rb);
    dims = static_cast<int>(xa.size());
    a.insert(a.end(), xa.begin(), xa.end());
    b.insert(b.end(), xb.begin(), xb.end());
  }
  return AuditSamples(a, b, dims, opts);
}

// Joint audit of the k answers of a session whose queries are chosen by
// `strategy` from the previous answers.
template <typename Input>
AuditReport AdaptiveAdversaryAudit(
    const std::function<QuerySession<double>(const Input&, RandomSource&)>&
        session_factory,
    const std::function<double(const std::vector<double>&)>& strategy,
    const NeighborPair<Input>& pair, int k, const AuditOptions& opts) {
  std::function<std::vector<double>(const Input&, RandomSource&)> mechanism =
      [&](const Input& input, RandomSource& rng) {
        QuerySession<double> session = session_factory(input, rng);
        std::vector<double> answers;
        for (int i = 0; i < k; ++i) answers.push_back(session.Ask(strategy(answers)));
        return answers;
      };
  return AuditEpsilon(mechanism, pair, opts);
}

struct CheckRecord {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;  // statistical allowance applied
  bool pass = false;
};

struct LemmaCheck {
  std::string name;
  std::vector<CheckRecord> records;
  bool pass = true;

  void Add(CheckRecord r) {
    pass = pass && r.pass;
    records.push_back(std::move(r));
  }
};

using Sampler = std::function<double(RandomSource&)>;

// E[exp(-|X|)] >= 2^-D / (1 + D) and E[exp(|X|)] <= 2^D / (1 - D) for X with
// diameter at most D <= 1/2, within 3 standard errors.
LemmaCheck VerifyExpExpectationBounds(const Sampler& sampler, double diameter,
                                      int64_t trials, RandomSource& rng);

struct IntegralCase {
  double alpha = 0.0;
  double epsilon = 0.0;
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double error_estimate = 0.0;
  bool pass = false;
};

// Left side of the Pareto integral lemma,
// int_0^1 min((1+x)^a, |1 - (1-2^(-1/a)) eps / ((1+x)(1-u)^(1/a))|^(-a)) du.
// `error` receives the quadrature error estimate.
double ParetoIntegralLhs(double alpha, double epsilon, double x,
                         double* error = nullptr);

// Checks lhs <= 1 + (2a - 1) / (a - 1) * eps + tolerance on the grid.
std::vector<IntegralCase> VerifyIntegralBound(
    const std::vector<double>& alpha_grid,
    const std::vector<double>& eps_grid, const std::vector<double>& x_grid,
    double tolerance = 1e-6);

// Empirical diameter of the sum of independent draws versus
// 3 * sum(certified diameters) * (1 + relative_slack).
LemmaCheck VerifySubexpSum(const std::vector<Sampler>& samplers,
                           const std::vector<double>& diameters,
                           int64_t trials, RandomSource& rng,
                           double relative_slack = 0.1);

// Mean of medians of 2k - 1 draws <= 2 C(2k - 1, k) times the mean of single
// draws, within 3 standard errors.
LemmaCheck VerifyMedianExpectation(const Sampler& sampler, int k,
                                   int64_t trials, RandomSource& rng);

double MedianExpectationFactor(int k);

struct DensityRatioOptions {
  int grid_points = 200;
  double grid_halfwidth = 20.0;  // in units of the noise scale
  int64_t draws = 1'000'000;
};

// f_{X+Y}(y) / f_Y(y) via f_{X+Y}(y) = E[f_Y(y - X)] over Monte-Carlo draws
// of X, compared against exp(-(1 + ln 2) e) and exp(3 ln 2 e) with
// e = diameter / scale for Laplace noise.
LemmaCheck VerifyDensityRatio(const LaplaceSpec& noise,
                              const Sampler& contaminant, double diameter,
                              RandomSource& rng,
                              const DensityRatioOptions& opts = {});

// Pareto version: e = diameter / ((1 - 2^(-1/a)) s), where diameter bounds
// the alpha-norm of X; bounds exp(-(1 - 2^(-1/a)) a e) and
// exp((2a - 1) / (a - 1) e).
LemmaCheck VerifyDensityRatio(const ZSParetoSpec& noise,
                              const Sampler& contaminant, double diameter,
                              RandomSource& rng,
                              const DensityRatioOptions& opts = {});

}  // namespace subdp

#endif  // SUBDP_AUDITOR_H_

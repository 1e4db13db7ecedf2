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

// Wrappers that turn a randomized approximation algorithm with a declared
// error model into an epsilon-DP estimator.
//
// An estimator A approximates a target g with global sensitivity delta1.
// Its error A - g is either subexponential with diameter delta2 (Laplace
// noise) or has an alpha-th moment bounded by delta2^alpha (zero-symmetric
// Pareto noise).

#ifndef SUBDP_PRIVATIZER_H_
#define SUBDP_PRIVATIZER_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "subdp/errors.h"
#include "subdp/noise.h"
#include "subdp/random.h"

namespace subdp {

enum class ErrorKind { kSubexponential, kMomentBound };

struct ErrorModel {
  ErrorKind kind = ErrorKind::kSubexponential;
  double delta2 = 0.0;  // diameter, or alpha-norm bound
  double alpha = 3.0;   // MomentBound only

  static ErrorModel Subexponential(double delta2) {
    return {ErrorKind::kSubexponential, delta2, 0.0};
  }
  static ErrorModel MomentBound(double alpha, double delta2) {
    return {ErrorKind::kMomentBound, delta2, alpha};
  }

  void Validate() const {
    if (!(delta2 >= 0.0) || !std::isfinite(delta2)) {
      throw InvalidParameter(ErrorCode::kNegativeSensitivity,
                             "error model delta2 must be nonnegative");
    }
    if (kind == ErrorKind::kMomentBound) ParetoConstant(alpha);
  }
};

// `evaluate` runs the algorithm at accuracy rho. `error_scale(input, rho)` is
// the declared error scale at that accuracy (diameter or alpha-norm). When it
// is empty the static model.delta2 is used and no regime check is possible.
template <typename Input>
struct ApproxEstimator {
  std::function<double(const Input&, double, RandomSource&)> evaluate;
  std::function<double(const Input&, double)> error_scale;
  double sensitivity = 0.0;
  ErrorModel model;

  double ErrorScale(const Input& input, double rho) const {
    return error_scale ? error_scale(input, rho) : model.delta2;
  }
};

enum class MechanismKind { kLaplace, kZSPareto };

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kLaplace;
  double scale = 0.0;
  double constant = 0.0;  // c of the scale formula
  double epsilon = 0.0;   // budget of one noisy run
  int k = 1;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double alpha = 0.0;  // ZSPareto only
};

inline const char* MechanismName(MechanismKind kind) {
  return kind == MechanismKind::kLaplace ? "laplace" : "zspareto";
}

struct RunMeta {
  int runs = 1;                 // noisy releases combined into the value
  double rho = 0.0;             // requested target accuracy
  double rho_run = 0.0;         // accuracy the estimator actually ran at
  double epsilon_per_run = 0.0;
  bool forced = false;          // regime check overridden
  bool floor_reached = false;   // advice search ended without a trigger
  std::vector<double> run_values;
};

struct PrivateEstimate {
  double value = 0.0;
  MechanismSpec mechanism;
  double epsilon_spent = 0.0;
  RunMeta meta;
};

struct PrivatizeOptions {
  bool force = false;
  // The estimator runs at accuracy epsilon * rho / accuracy_divisor so that
  // the added noise is a fraction of the target error rho * f(x).
  double accuracy_divisor = 8.0;
  NoiseConstants constants;
};

inline PrivatizeOptions WithAccuracyDivisor(double divisor) {
  PrivatizeOptions opts;
  opts.accuracy_divisor = divisor;
  return opts;
}

namespace internal {

inline void CheckAccuracy(double rho) {
  if (!(rho > 0.0) || !(rho <= 1.0)) {
    throw InvalidParameter(ErrorCode::kInvalidAccuracy,
                           "rho must lie in (0, 1]");
  }
}

inline void CheckBeta(double beta) {
  if (!(beta > 0.0) || !(beta < 0.5)) {
    throw InvalidParameter(ErrorCode::kInvalidFailureProbability,
                           "beta must lie in (0, 1/2)");
  }
}

// Median of an odd-sized or even-sized sample (midpoint for even sizes).
inline double Median(std::vector<double> values) {
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    const double lower =
        *std::max_element(values.begin(), values.begin() + mid);
    m = 0.5 * (m + lower);
  }
  return m;
}

template <typename Input>
bool CheckRegime(const ApproxEstimator<Input>& est, const Input& input,
                 double rho, double epsilon, bool force) {
  if (!est.error_scale) return false;
  const double budget_scale = epsilon * est.error_scale(input, rho);
  if (est.sensitivity <= budget_scale) return false;
  if (force) return true;
  throw RegimeViolation("sensitivity " + std::to_string(est.sensitivity) +
                        " exceeds epsilon * error scale " +
                        std::to_string(budget_scale) +
                        "; the private answer would be dominated by noise");
}

template <typename Input>
PrivateEstimate NoisyRun(const ApproxEstimator<Input>& est, const Input& input,
                         double rho, const PrivacyBudget& budget,
                         RandomSource& rng, const PrivatizeOptions& opts) {
  est.model.Validate();
  const double rho_run = budget.epsilon() * rho / opts.accuracy_divisor;
  RandomSource run_rng = rng.Fork();
  RandomSource noise_rng = rng.Fork();
  const double raw = est.evaluate(input, rho_run, run_rng);
  const SensitivitySpec sens{est.sensitivity, est.ErrorScale(input, rho_run),
                             1};
  PrivateEstimate out;
  out.mechanism.epsilon = budget.epsilon();
  out.mechanism.delta1 = sens.delta1;
  out.mechanism.delta2 = sens.delta2;
  if (est.model.kind == ErrorKind::kSubexponential) {
    const LaplaceSpec spec = LaplaceScale(sens, budget, opts.constants);
    out.mechanism.kind = MechanismKind::kLaplace;
    out.mechanism.scale = spec.scale;
    out.mechanism.constant = opts.constants.Laplace(1);
    out.value = raw + SampleLaplace(spec, noise_rng);
  } else {
    const ZSParetoSpec spec = ZSParetoScale(est.model.alpha, sens, budget);
    out.mechanism.kind = MechanismKind::kZSPareto;
    out.mechanism.scale = spec.scale;
    out.mechanism.constant = ParetoConstant(est.model.alpha);
    out.mechanism.alpha = est.model.alpha;
    out.value = raw + SampleZSPareto(spec, noise_rng);
  }
  out.epsilon_spent = budget.epsilon();
  out.meta.rho = rho;
  out.meta.rho_run = rho_run;
  out.meta.epsilon_per_run = budget.epsilon();
  return out;
}

}  // namespace internal

// One evaluation plus one noise draw. Throws RegimeViolation when
// sensitivity > epsilon * error_scale(input, rho) unless opts.force is set.
template <typename Input>
PrivateEstimate PrivatizeOnce(const ApproxEstimator<Input>& est,
                              const Input& input, double rho,
                              const PrivacyBudget& budget, RandomSource& rng,
                              const PrivatizeOptions& opts = {}) {
  internal::CheckAccuracy(rho);
  const bool forced =
      internal::CheckRegime(est, input, rho, budget.epsilon(), opts.force);
  PrivateEstimate out = internal::NoisyRun(est, input, rho, budget, rng, opts);
  out.meta.forced = forced;
  return out;
}

// Third-moment factor of a median of five runs whose error has
// E|X|^alpha <= sigma^alpha: (E|med|^3)^(1/3) <= factor * sigma.
inline double MedianAmplifyFactor(double alpha) {
  if (!(alpha > 1.0)) {
    throw InvalidParameter(ErrorCode::kShapeOutOfDomain,
                           "median amplification needs a moment bound with "
                           "alpha > 1");
  }
  const double cube = std::max(
      10.0, std::pow(10.0, 1.0 / alpha) * alpha / (alpha - 1.0));
  return std::cbrt(cube);
}

inline constexpr int kMedianRuns = 5;

// Runs `est` five times on independent streams and returns the median. The
// result declares a third-moment bound scaled by MedianAmplifyFactor.
template <typename Input>
ApproxEstimator<Input> MedianAmplify(ApproxEstimator<Input> est) {
  const double alpha = est.model.kind == ErrorKind::kMomentBound
                           ? est.model.alpha
                           : 3.0;  // subexponential errors have all moments
  const double factor = MedianAmplifyFactor(alpha);
  ApproxEstimator<Input> out;
  out.sensitivity = est.sensitivity;
  out.model = ErrorModel::MomentBound(3.0, factor * est.model.delta2);
  auto base = std::move(est);
  if (base.error_scale) {
    out.error_scale = [scale = base.error_scale, factor](const Input& in,
                                                         double rho) {
      return factor * scale(in, rho);
    };
  }
  out.evaluate = [evaluate = std::move(base.evaluate)](
                     const Input& in, double rho, RandomSource& rng) {
    std::vector<double> runs(kMedianRuns);
    for (double& r : runs) {
      RandomSource child = rng.Fork();
      r = evaluate(in, rho, child);
    }
    return internal::Median(std::move(runs));
  };
  return out;
}

// t = 2 * ceil(ln(1/beta) / ln 3) + 1.
inline int BoostRunCount(double beta) {
  internal::CheckBeta(beta);
  const double ratio = std::log(1.0 / beta) / std::log(3.0);
  return 2 * static_cast<int>(std::ceil(ratio - 1e-9)) + 1;
}

// Success probability 1 - beta. Subexponential model: one run at target
// accuracy rho / ln(1/beta). MomentBound model: median of BoostRunCount(beta)
// runs each charged epsilon / t.
template <typename Input>
PrivateEstimate BoostConfidence(const ApproxEstimator<Input>& est,
                                const Input& input, double rho,
                                const PrivacyBudget& budget, double beta,
                                RandomSource& rng,
                                const PrivatizeOptions& opts = {}) {
  internal::CheckAccuracy(rho);
  internal::CheckBeta(beta);
  const bool forced =
      internal::CheckRegime(est, input, rho, budget.epsilon(), opts.force);
  if (est.model.kind == ErrorKind::kSubexponential) {
    const double log_beta = std::max(1.0, std::log(1.0 / beta));
    PrivateEstimate out = internal::NoisyRun(est, input, rho / log_beta,
                                             budget, rng, opts);
    out.meta.rho = rho;
    out.meta.forced = forced;
    out.meta.run_values = {out.value};
    return out;
  }
  const int t = BoostRunCount(beta);
  const PrivacyBudget share = budget.Share(t);
  std::vector<double> values;
  values.reserve(t);
  PrivateEstimate first;
  for (int i = 0; i < t; ++i) {
    PrivateEstimate run = internal::NoisyRun(est, input, rho, share, rng, opts);
    values.push_back(run.value);
    if (i == 0) first = run;
  }
  PrivateEstimate out = first;
  out.value = internal::Median(values);
  out.epsilon_spent = budget.epsilon();
  out.meta.runs = t;
  out.meta.forced = forced;
  out.meta.run_values = std::move(values);
  return out;
}

// k noisy answers from one randomized structure. The structure is built once
// from a private stream; every answer adds fresh Laplace noise whose scale is
// fixed at open time. The (k+1)-th query is refused.
template <typename Query>
class QuerySession {
 public:
  using Answerer = std::function<double(const Query&)>;

  QuerySession(Answerer answer, LaplaceSpec noise, int k_max,
               RandomSource noise_rng)
      : answer_(std::move(answer)),
        noise_(noise),
        k_max_(k_max),
        noise_rng_(noise_rng) {}

  double Ask(const Query& q) {
    if (queries_made_ >= k_max_) {
      throw BudgetExhausted("session answered all " + std::to_string(k_max_) +
                            " queries");
    }
    ++queries_made_;
    const double raw = answer_(q);
    return raw + SampleLaplace(noise_, noise_rng_);
  }

  int k_max() const { return k_max_; }
  int queries_made() const { return queries_made_; }
  int remaining() const { return k_max_ - queries_made_; }
  const LaplaceSpec& noise_spec() const { return noise_; }

 private:
  Answerer answer_;
  LaplaceSpec noise_;
  int k_max_;
  int queries_made_ = 0;
  RandomSource noise_rng_;
};

// `builder(rng)` builds the structure from the shared stream and returns a
// callable answering one query.
template <typename Query, typename Builder>
QuerySession<Query> OpenSession(Builder&& builder, const SensitivitySpec& sens,
                                const PrivacyBudget& budget,
                                const RandomSource& rng,
                                const NoiseConstants& constants = {}) {
  const LaplaceSpec noise = LaplaceScale(sens, budget, constants);
  RandomSource shared = rng.Split(0);
  typename QuerySession<Query>::Answerer answer = builder(shared);
  return QuerySession<Query>(std::move(answer), noise, sens.k, rng.Split(1));
}

}  // namespace subdp

#endif  // SUBDP_PRIVATIZER_H_

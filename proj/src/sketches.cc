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

#include "subdp/sketches.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>
#include <utility>

#include "subdp/errors.h"

namespace subdp {

void F2Stream::Validate() const {
  if (universe == 0) {
    throw InvalidParameter(ErrorCode::kOutOfUniverse,
                           "universe must be nonempty");
  }
  if (max_delta < 1) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "max_delta must be positive");
  }
  for (const StreamUpdate& u : updates) {
    if (u.index >= universe) {
      throw InvalidParameter(ErrorCode::kOutOfUniverse,
                             "stream index " + std::to_string(u.index) +
                                 " outside universe");
    }
    if (std::llabs(u.delta) > max_delta) {
      throw InvalidParameter(ErrorCode::kInvalidArgument,
                             "update magnitude exceeds max_delta");
    }
  }
}

double ExactF2(const F2Stream& stream) {
  std::unordered_map<uint64_t, int64_t> x;
  for (const StreamUpdate& u : stream.updates) x[u.index] += u.delta;
  double f2 = 0.0;
  for (const auto& [i, v] : x) f2 += static_cast<double>(v) * v;
  return f2;
}

double F2Sensitivity(const F2Stream& stream) {
  const double d = static_cast<double>(stream.max_delta);
  const double others =
      stream.updates.empty() ? 0.0 : static_cast<double>(stream.updates.size() - 1);
  return 2.0 * d * d * others + d * d;
}

double F2Scale(const F2Stream& stream) {
  const double mass = static_cast<double>(stream.updates.size()) *
                      static_cast<double>(stream.max_delta);
  const double r = std::max(static_cast<double>(stream.universe), mass);
  return r * r;
}

ApproxEstimator<F2Stream> AmsF2Estimator() {
  ApproxEstimator<F2Stream> est;
  est.evaluate = [](const F2Stream& s, double rho, RandomSource& rng) {
    AmsSketch sketch = AmsSketch::ForAccuracy(s.universe, rho, 1, rng.Fork());
    for (const StreamUpdate& u : s.updates) sketch.Update(u);
    return sketch.EstimateF2();
  };
  est.error_scale = [](const F2Stream& s, double rho) {
    return rho * F2Scale(s);
  };
  est.model = ErrorModel::MomentBound(2.0, 0.0);
  return est;
}

PrivateEstimate PrivateF2(const F2Stream& stream, double rho,
                          const PrivacyBudget& budget, double beta,
                          RandomSource& rng, PrivatizeOptions opts) {
  stream.Validate();
  ApproxEstimator<F2Stream> est = MedianAmplify(AmsF2Estimator());
  est.sensitivity = F2Sensitivity(stream);
  return BoostConfidence(est, stream, rho, budget, beta, rng, opts);
}

RankSession PrivateRankSession(const std::vector<double>& data, double rho,
                               const PrivacyBudget& budget, double beta, int k,
                               const RandomSource& rng,
                               const RankSessionOptions& opts) {
  internal::CheckAccuracy(rho);
  internal::CheckBeta(beta);
  if (k < 1) {
    throw InvalidParameter(ErrorCode::kInvalidQueryCount,
                           "rank session needs k >= 1");
  }
  if (data.empty()) {
    throw InvalidParameter(ErrorCode::kEmptyInput, "rank data is empty");
  }
  const double n = static_cast<double>(data.size());
  const double log_kb = std::log(k / beta);
  const double rho_prime = rho * budget.epsilon() / (k * log_kb);
  const double cap = std::ceil(opts.capacity_factor / rho_prime);
  const int capacity = static_cast<int>(
      std::clamp(cap, 2.0, static_cast<double>(data.size() + 1)));

  const SensitivitySpec sens{1.0, opts.diameter_constant * rho_prime * n, k};
  auto builder = [&data, capacity](RandomSource& shared) {
    auto sketch = std::make_shared<KllSketch>(capacity, shared);
    for (double x : data) sketch->Update(x);
    return [sketch](const double& q) {
      return static_cast<double>(sketch->Rank(q));
    };
  };
  QuerySession<double> session =
      OpenSession<double>(builder, sens, budget, rng, opts.constants);
  // Union bound over k answers, each the sum of a sketch error and a noise
  // draw, each part given failure probability beta / (2k).
  const double b = session.noise_spec().scale;
  const double radius =
      b * std::log(2.0 * k / beta) + sens.delta2 * std::log(4.0 * k / beta);
  RankSession out{std::move(session), rho_prime, capacity, sens, radius,
                  radius / (rho * n)};
  return out;
}

}  // namespace subdp

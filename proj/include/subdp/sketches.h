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

// Private wrappers over the streaming sketches: an F2 estimate for update
// streams and a multi-query rank session over one shared KLL sketch.

#ifndef SUBDP_SKETCHES_H_
#define SUBDP_SKETCHES_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "subdp/ams.h"
#include "subdp/kll.h"
#include "subdp/noise.h"
#include "subdp/privatizer.h"

namespace subdp {

// Neighboring streams differ in one update. Every |delta| is at most
// max_delta.
struct F2Stream {
  std::vector<StreamUpdate> updates;
  uint64_t universe = 0;
  int64_t max_delta = 1;

  void Validate() const;
};

double ExactF2(const F2Stream& stream);

// Replacing one update (l, D) by (l', D') changes F2 by at most
// 2 * Dmax^2 * (L - 1) + Dmax^2 for a stream of length L.
double F2Sensitivity(const F2Stream& stream);

// Reference magnitude for the additive error: max(n, L * Dmax)^2, which
// dominates F2 and equals n^2 for streams that fit in the universe.
double F2Scale(const F2Stream& stream);

// One single-row AMS sketch. Declared error: RMSE <= rho * F2Scale.
ApproxEstimator<F2Stream> AmsF2Estimator();

inline constexpr double kF2AccuracyDivisor = 32.0;

// Additive error at most rho * F2Scale with probability 1 - beta.
PrivateEstimate PrivateF2(const F2Stream& stream, double rho,
                          const PrivacyBudget& budget, double beta,
                          RandomSource& rng,
                          PrivatizeOptions opts = WithAccuracyDivisor(kF2AccuracyDivisor));

struct RankSessionOptions {
  // KLL capacity = ceil(capacity_factor / rho').
  double capacity_factor = 2.0;
  // Declared subexponential diameter of the KLL rank error, in units of
  // rho' * n.
  double diameter_constant = 1.0;
  NoiseConstants constants;
};

struct RankSession {
  QuerySession<double> session;
  double rho_prime = 0.0;
  int capacity = 0;
  SensitivitySpec sensitivity;
  // Each answer is within error_radius of the true rank with probability
  // 1 - beta jointly over the k answers, given the declared diameter.
  double error_radius = 0.0;
  // error_radius / (rho * n).
  double radius_constant = 0.0;
};

// Builds one KLL sketch at rho' = rho * epsilon / (k ln(k / beta)) and opens a
// k-query Laplace session with delta1 = 1 and delta2 = C * rho' * n.
RankSession PrivateRankSession(const std::vector<double>& data, double rho,
                               const PrivacyBudget& budget, double beta, int k,
                               const RandomSource& rng,
                               const RankSessionOptions& opts = {});

}  // namespace subdp

#endif  // SUBDP_SKETCHES_H_

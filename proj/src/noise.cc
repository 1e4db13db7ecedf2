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

#include "subdp/noise.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "subdp/errors.h"

namespace subdp {

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameter(ErrorCode::kNonPositiveEpsilon,
                           "epsilon must be positive and finite");
  }
  if (epsilon > kEpsilonCap) {
    throw RegimeViolation("epsilon " + std::to_string(epsilon) +
                          " exceeds the library cap of 1");
  }
}

PrivacyBudget PrivacyBudget::Share(int parts) const {
  if (parts < 1) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "budget must be split into at least one part");
  }
  return PrivacyBudget(epsilon_ / parts);
}

void SensitivitySpec::Validate() const {
  if (!(delta1 >= 0.0) || !(delta2 >= 0.0) || !std::isfinite(delta1) ||
      !std::isfinite(delta2)) {
    throw InvalidParameter(ErrorCode::kNegativeSensitivity,
                           "delta1 and delta2 must be finite and nonnegative");
  }
  if (delta1 + delta2 <= 0.0) {
    throw InvalidParameter(ErrorCode::kZeroSensitivity,
                           "delta1 + delta2 must be positive");
  }
  if (k < 1) {
    throw InvalidParameter(ErrorCode::kInvalidQueryCount,
                           "query count k must be at least 1");
  }
}

double ParetoConstant(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw InvalidParameter(ErrorCode::kShapeOutOfDomain,
                           "Pareto shape alpha must exceed 1");
  }
  return alpha + 2.0 + 1.0 / (alpha - 1.0);
}

LaplaceSpec LaplaceScale(const SensitivitySpec& sens,
                         const PrivacyBudget& budget,
                         const NoiseConstants& constants) {
  sens.Validate();
  const double c = constants.Laplace(sens.k);
  return LaplaceSpec{c * (sens.delta1 + sens.delta2) * sens.k /
                     budget.epsilon()};
}

ZSParetoSpec ZSParetoScale(double alpha, const SensitivitySpec& sens,
                           const PrivacyBudget& budget) {
  const double c = ParetoConstant(alpha);
  sens.Validate();
  return ZSParetoSpec{alpha, c * (sens.delta1 + sens.delta2) /
                                 budget.epsilon()};
}

void ValidateSpec(const LaplaceSpec& spec) {
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
    throw InvalidParameter(ErrorCode::kInvalidScale,
                           "Laplace scale must be positive");
  }
}

void ValidateSpec(const ZSParetoSpec& spec) {
  ParetoConstant(spec.alpha);
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
    throw InvalidParameter(ErrorCode::kInvalidScale,
                           "Pareto scale must be positive");
  }
}

double SampleLaplace(const LaplaceSpec& spec, RandomSource& rng) {
  const double magnitude = -spec.scale * std::log(rng.Uniform());
  return rng.Coin() ? magnitude : -magnitude;
}

double ZSParetoMagnitude(const ZSParetoSpec& spec, double u) {
  return spec.scale *
         std::expm1(-std::log1p(-u) / (spec.alpha - 1.0));
}

double SampleZSPareto(const ZSParetoSpec& spec, RandomSource& rng) {
  const double magnitude = ZSParetoMagnitude(spec, rng.Uniform());
  return rng.Coin() ? magnitude : -magnitude;
}

double LaplacePdf(const LaplaceSpec& spec, double y) {
  return std::exp(-std::abs(y) / spec.scale) / (2.0 * spec.scale);
}

double LaplaceCdf(const LaplaceSpec& spec, double y) {
  const double half_tail = 0.5 * std::exp(-std::abs(y) / spec.scale);
  return y < 0 ? half_tail : 1.0 - half_tail;
}

double ZSParetoPdf(const ZSParetoSpec& spec, double y) {
  return (spec.alpha - 1.0) / (2.0 * spec.scale) *
         std::pow(std::abs(y) / spec.scale + 1.0, -spec.alpha);
}

double ZSParetoCdf(const ZSParetoSpec& spec, double y) {
  const double half_tail =
      0.5 * std::pow(std::abs(y) / spec.scale + 1.0, 1.0 - spec.alpha);
  return y < 0 ? half_tail : 1.0 - half_tail;
}

double SubexpSumBound(std::span<const double> diameters) {
  if (diameters.empty()) {
    throw InvalidParameter(ErrorCode::kEmptyInput,
                           "diameter sequence must be nonempty");
  }
  double sum = 0.0;
  for (double d : diameters) {
    if (!(d >= 0.0)) {
      throw InvalidParameter(ErrorCode::kInvalidArgument,
                             "diameters must be nonnegative");
    }
    sum += d;
  }
  return 3.0 * sum;
}

double ShiftDiameter(double diameter, double c) {
  if (!(diameter >= 0.0) || !(c >= 0.0)) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "diameter and shift must be nonnegative");
  }
  return diameter + c / std::numbers::ln2;
}

double FitSubexpDiameter(std::span<const double> samples, int grid_points) {
  if (samples.size() < kMinDiameterSamples) {
    throw InvalidParameter(ErrorCode::kTooFewSamples,
                           "diameter fit needs at least 1000 samples");
  }
  if (grid_points < 2) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "diameter fit needs at least two grid points");
  }
  std::vector<double> magnitudes(samples.size());
  std::transform(samples.begin(), samples.end(), magnitudes.begin(),
                 [](double x) { return std::abs(x); });
  std::sort(magnitudes.begin(), magnitudes.end());
  const double top = magnitudes.back();
  if (!(top > 0.0)) return 0.0;

  const double n = static_cast<double>(magnitudes.size());
  struct TailPoint {
    double t;
    double p;
  };
  std::vector<TailPoint> tail;
  tail.reserve(grid_points);
  for (int j = 1; j < grid_points; ++j) {
    const double t =
        j == grid_points - 1 ? top : top * j / (grid_points - 1);
    const auto first = std::lower_bound(magnitudes.begin(), magnitudes.end(), t);
    const double p = static_cast<double>(magnitudes.end() - first) / n;
    if (p > 0.0) tail.push_back({t, p});
  }
  auto feasible = [&](double d) {
    for (const TailPoint& point : tail) {
      if (point.p > 2.0 * std::exp(-point.t / d)) return false;
    }
    return true;
  };
  // Every tail probability is at most 1 <= 2 exp(-t ln2 / top).
  double lo = 0.0;
  double hi = top / std::numbers::ln2;
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace subdp

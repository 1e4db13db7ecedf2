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

// Additive noise distributions and the scale formulas that make an estimator
// with concentrated error differentially private.
//
// Two mechanisms are provided:
//  * Laplace noise, for estimators whose error has bounded subexponential
//    diameter. The scale is c * (delta1 + delta2) * k / epsilon with
//    c = 1 + 4 ln 2 for a single query and c = 3 + 12 ln 2 for k > 1 queries
//    answered from shared randomness.
//  * Zero-symmetric Pareto noise, for estimators with only an alpha-th moment
//    bound. Density (alpha - 1) / (2 s) * (|y| / s + 1)^(-alpha), scale
//    s = (alpha + 2 + 1 / (alpha - 1)) * (delta1 + delta2) / epsilon.
//
// The subexponential diameter of X is the smallest d with
// P[|X| >= t] <= 2 exp(-t / d) for all t > 0.

#ifndef SUBDP_NOISE_H_
#define SUBDP_NOISE_H_

#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "subdp/random.h"

namespace subdp {

// Every budget the library accepts satisfies 0 < epsilon <= kEpsilonCap.
inline constexpr double kEpsilonCap = 1.0;

class PrivacyBudget {
 public:
  // Throws InvalidParameter for nonpositive or non-finite epsilon and
  // RegimeViolation above kEpsilonCap.
  explicit PrivacyBudget(double epsilon);

  double epsilon() const { return epsilon_; }

  // The budget of one of `parts` equal shares.
  PrivacyBudget Share(int parts) const;

 private:
  double epsilon_;
};

struct SensitivitySpec {
  double delta1 = 0.0;  // global sensitivity of the target function
  double delta2 = 0.0;  // error scale: diameter or alpha-norm bound
  int k = 1;            // number of queries sharing randomness

  void Validate() const;
};

struct LaplaceSpec {
  double scale = 1.0;
};

struct ZSParetoSpec {
  double alpha = 3.0;
  double scale = 1.0;
};

// Multiplicative constants of the scale formulas. The defaults are the
// proven ones; tighter values are unproven.
struct NoiseConstants {
  double laplace_single = 1.0 + 4.0 * std::numbers::ln2;
  double laplace_multi = 3.0 + 12.0 * std::numbers::ln2;

  double Laplace(int k) const { return k == 1 ? laplace_single : laplace_multi; }
};

// c(alpha) = alpha + 2 + 1 / (alpha - 1).
double ParetoConstant(double alpha);

LaplaceSpec LaplaceScale(const SensitivitySpec& sens,
                         const PrivacyBudget& budget,
                         const NoiseConstants& constants = {});

ZSParetoSpec ZSParetoScale(double alpha, const SensitivitySpec& sens,
                           const PrivacyBudget& budget);

void ValidateSpec(const LaplaceSpec& spec);
void ValidateSpec(const ZSParetoSpec& spec);

double SampleLaplace(const LaplaceSpec& spec, RandomSource& rng);
double SampleZSPareto(const ZSParetoSpec& spec, RandomSource& rng);

// Inverse of P[|Y| <= t] = 1 - ((s + t) / s)^(1 - alpha) at u in [0, 1).
double ZSParetoMagnitude(const ZSParetoSpec& spec, double u);

double LaplacePdf(const LaplaceSpec& spec, double y);
double LaplaceCdf(const LaplaceSpec& spec, double y);
double ZSParetoPdf(const ZSParetoSpec& spec, double y);
double ZSParetoCdf(const ZSParetoSpec& spec, double y);

// Diameter bound for a sum: 3 * sum(diameters). Throws on empty input.
double SubexpSumBound(std::span<const double> diameters);

// Diameter bound for X + c: diameter + c / ln 2.
double ShiftDiameter(double diameter, double c);

inline constexpr int kDiameterGridPoints = 256;
inline constexpr size_t kMinDiameterSamples = 1000;

// Empirical subexponential diameter: the smallest d such that the empirical
// tail P^[|X| >= t] <= 2 exp(-t / d) at every point of a uniform grid on
// [0, max |x|], located by bisection to relative precision 1e-3. Returns the
// upper end of the final bracket. Requires at least 1000 samples.
double FitSubexpDiameter(std::span<const double> samples,
                         int grid_points = kDiameterGridPoints);

}  // namespace subdp

#endif  // SUBDP_NOISE_H_

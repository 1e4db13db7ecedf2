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

#include "subdp/auditor.h"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subdp/errors.h"

namespace subdp {
namespace {

struct Interval {
  double lo;
  double hi;
};

Interval Wilson(int64_t count, int64_t total, double z) {
  const double n = static_cast<double>(total);
  const double p = count / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Smallest |log(pa / pb)| over pa, pb in the two intervals.
double LogRatioLowerBound(const Interval& a, const Interval& b) {
  if (a.lo > b.hi) return std::log(a.lo / b.hi);
  if (b.lo > a.hi) return std::log(b.lo / a.hi);
  return 0.0;
}

std::vector<double> AxisEdges(std::vector<double> pooled, int cells) {
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> edges;
  for (int j = 1; j < cells; ++j) {
    const size_t idx = pooled.size() * j / cells;
    edges.push_back(pooled[std::min(idx, pooled.size() - 1)]);
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

int AxisIndex(const std::vector<double>& edges, double x) {
  return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), x) -
                          edges.begin());
}

std::string AxisLabel(const std::vector<double>& edges, int i) {
  std::ostringstream os;
  os.precision(6);
  os << "[";
  if (i == 0) {
    os << "-inf";
  } else {
    os << edges[i - 1];
  }
  os << ", ";
  if (i == static_cast<int>(edges.size())) {
    os << "inf";
  } else {
    os << edges[i];
  }
  os << ")";
  return os.str();
}

struct MeanSe {
  double mean;
  double se;
};

MeanSe Summarize(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / (v.size() - 1) : 0.0;
  return {mean, std::sqrt(var / v.size())};
}

template <typename Pdf>
LemmaCheck DensityRatio(const std::string& name, Pdf pdf, double scale,
                        const Sampler& contaminant, double lower,
                        double upper, RandomSource& rng,
                        const DensityRatioOptions& opts) {
  std::vector<double> xs(opts.draws);
  for (double& x : xs) x = contaminant(rng);
  LemmaCheck check;
  check.name = name;
  CheckRecord low{"min ratio", 1e300, lower, 0.0, true};
  CheckRecord high{"max ratio", -1e300, upper, 0.0, true};
  const int points = opts.grid_points;
  for (int j = 0; j < points; ++j) {
    const double y = scale * opts.grid_halfwidth *
                     (points == 1 ? 0.0 : 2.0 * j / (points - 1) - 1.0);
    double sum = 0.0;
    double sum2 = 0.0;
    for (double x : xs) {
      const double f = pdf(y - x);
      sum += f;
      sum2 += f * f;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean) * n / (n - 1.0);
    const double base = pdf(y);
    const double ratio = mean / base;
    const double tol = 3.0 * std::sqrt(var / n) / base;
    low.pass = low.pass && ratio >= lower - tol;
    high.pass = high.pass && ratio <= upper + tol;
    if (ratio < low.value) {
      low.value = ratio;
      low.tolerance = tol;
      low.label = "min ratio at y=" + std::to_string(y);
    }
    if (ratio > high.value) {
      high.value = ratio;
      high.tolerance = tol;
      high.label = "max ratio at y=" + std::to_string(y);
    }
  }
  check.Add(low);
  check.Add(high);
  return check;
}

}  // namespace

AuditReport AuditSamples(const std::vector<double>& a,
                         const std::vector<double>& b, int dims,
                         const AuditOptions& opts) {
  if (dims < 1 || dims > 2) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "histogram audits support 1 or 2 output "
                           "coordinates");
  }
  if (a.size() != b.size() || a.empty() || a.size() % dims != 0) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "audit samples must be nonempty and of equal size");
  }
  const int64_t trials = static_cast<int64_t>(a.size() / dims);
  const int per_axis =
      dims == 1 ? opts.bins
                : static_cast<int>(std::ceil(std::sqrt(opts.bins)));
  std::vector<std::vector<double>> edges(dims);
  for (int d = 0; d < dims; ++d) {
    std::vector<double> pooled;
    pooled.reserve(2 * trials);
    for (int64_t i = 0; i < trials; ++i) {
      pooled.push_back(a[i * dims + d]);
      pooled.push_back(b[i * dims + d]);
    }
    edges[d] = AxisEdges(std::move(pooled), per_axis);
  }
  const int stride = static_cast<int>(edges[0].size()) + 1;
  const int total_cells =
      stride * (dims == 2 ? static_cast<int>(edges[1].size()) + 1 : 1);
  std::vector<int64_t> count_a(total_cells, 0);
  std::vector<int64_t> count_b(total_cells, 0);
  auto cell_of = [&](const std::vector<double>& v, int64_t i) {
    int c = AxisIndex(edges[0], v[i * dims]);
    if (dims == 2) c += stride * AxisIndex(edges[1], v[i * dims + 1]);
    return c;
  };
  for (int64_t i = 0; i < trials; ++i) {
    ++count_a[cell_of(a, i)];
    ++count_b[cell_of(b, i)];
  }

  AuditReport report;
  report.epsilon_target = opts.epsilon_target;
  report.slack = opts.slack;
  report.trials = trials;
  report.dims = dims;
  report.seed = opts.seed;
  AuditCell rest{"rest", 0, 0, 0.0, 0.0};
  for (int c = 0; c < total_cells; ++c) {
    if (count_a[c] + count_b[c] == 0) continue;
    if (count_a[c] + count_b[c] < opts.min_cell) {
      rest.count_a += count_a[c];
      rest.count_b += count_b[c];
      continue;
    }
    std::string label = AxisLabel(edges[0], c % stride);
    if (dims == 2) label += " x " + AxisLabel(edges[1], c / stride);
    report.cells.push_back({label, count_a[c], count_b[c], 0.0, 0.0});
  }
  if (rest.count_a + rest.count_b > 0) report.cells.push_back(rest);

  const double cells = static_cast<double>(report.cells.size());
  report.z = boost::math::quantile(boost::math::normal(),
                                   1.0 - opts.alpha / (4.0 * cells));
  report.bins = static_cast<int>(report.cells.size());
  double measured = 0.0;
  for (AuditCell& cell : report.cells) {
    cell.log_ratio = std::log((cell.count_a + 0.5) / (cell.count_b + 0.5));
    cell.lower_bound = LogRatioLowerBound(Wilson(cell.count_a, trials, report.z),
                                          Wilson(cell.count_b, trials, report.z));
    measured = std::max(measured, cell.lower_bound);
  }
  report.epsilon_measured = measured;
  report.pass = measured <= opts.epsilon_target + opts.slack;
  return report;
}

LemmaCheck VerifyExpExpectationBounds(const Sampler& sampler, double diameter,
                                      int64_t trials, RandomSource& rng) {
  if (!(diameter >= 0.0) || diameter > 0.5) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "the bounds need a diameter in [0, 1/2]");
  }
  if (trials < 2) {
    throw InvalidParameter(ErrorCode::kTooFewSamples, "need at least 2 trials");
  }
  std::vector<double> neg(trials);
  std::vector<double> pos(trials);
  for (int64_t i = 0; i < trials; ++i) {
    const double x = std::abs(sampler(rng));
    neg[i] = std::exp(-x);
    pos[i] = std::exp(x);
  }
  const MeanSe n = Summarize(neg);
  const MeanSe p = Summarize(pos);
  const double lower = std::pow(2.0, -diameter) / (1.0 + diameter);
  const double upper = std::pow(2.0, diameter) / (1.0 - diameter);
  LemmaCheck check;
  check.name = "exp-expectation";
  check.Add({"E[exp(-|X|)] >= 2^-D/(1+D)", n.mean, lower, 3.0 * n.se,
             n.mean + 3.0 * n.se >= lower});
  check.Add({"E[exp(|X|)] <= 2^D/(1-D)", p.mean, upper, 3.0 * p.se,
             p.mean - 3.0 * p.se <= upper});
  return check;
}

double ParetoIntegralLhs(double alpha, double epsilon, double x,
                         double* error) {
  ParetoConstant(alpha);
  if (!(epsilon >= 0.0) || !(x >= 0.0)) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "integral lemma needs epsilon >= 0 and x >= 0");
  }
  // With w = (1 - u)^(1/a), du = a w^(a-1) dw and the integrand becomes
  // a w^(a-1) min((1+x)^a, (w / |w - z|)^a), z = (1 - 2^(-1/a)) eps / (1+x).
  const double cap = std::pow(1.0 + x, alpha);
  const double z = (1.0 - std::pow(2.0, -1.0 / alpha)) * epsilon / (1.0 + x);
  auto f = [=](double w) {
    const double jac = alpha * std::pow(w, alpha - 1.0);
    const double gap = std::abs(w - z);
    if (gap == 0.0) return jac * cap;
    return jac * std::min(cap, std::pow(w / gap, alpha));
  };
  std::vector<double> cuts{0.0, 1.0};
  if (z > 0.0) {
    cuts.push_back(z);
    cuts.push_back((1.0 + x) * z / (2.0 + x));
    if (x > 0.0) cuts.push_back((1.0 + x) * z / x);
  }
  std::sort(cuts.begin(), cuts.end());
  boost::math::quadrature::tanh_sinh<double> quad;
  double total = 0.0;
  double err_total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::clamp(cuts[i], 0.0, 1.0);
    const double hi = std::clamp(cuts[i + 1], 0.0, 1.0);
    if (hi <= lo) continue;
    double err = 0.0;
    total += quad.integrate(f, lo, hi, 1e-12, &err);
    err_total += err;
  }
  if (error != nullptr) *error = err_total;
  return total;
}

std::vector<IntegralCase> VerifyIntegralBound(
    const std::vector<double>& alpha_grid,
    const std::vector<double>& eps_grid, const std::vector<double>& x_grid,
    double tolerance) {
  std::vector<IntegralCase> out;
  for (double alpha : alpha_grid) {
    for (double eps : eps_grid) {
      if (eps < 0.0 || eps > 1.0) {
        throw InvalidParameter(ErrorCode::kInvalidArgument,
                               "integral lemma needs 0 <= epsilon <= 1");
      }
      for (double x : x_grid) {
        IntegralCase c{alpha, eps, x, 0.0, 0.0, 0.0, false};
        c.lhs = ParetoIntegralLhs(alpha, eps, x, &c.error_estimate);
        c.rhs = 1.0 + (2.0 * alpha - 1.0) / (alpha - 1.0) * eps;
        c.pass = c.lhs <= c.rhs + tolerance;
        out.push_back(c);
      }
    }
  }
  return out;
}

LemmaCheck VerifySubexpSum(const std::vector<Sampler>& samplers,
                           const std::vector<double>& diameters,
                           int64_t trials, RandomSource& rng,
                           double relative_slack) {
  if (samplers.empty() || samplers.size() != diameters.size() ||
      samplers.size() > 10) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "need 1 to 10 samplers with one diameter each");
  }
  std::vector<double> sums(trials, 0.0);
  for (double& s : sums) {
    for (const Sampler& sampler : samplers) s += sampler(rng);
  }
  const double fit = FitSubexpDiameter(sums);
  const double bound = SubexpSumBound(diameters);
  LemmaCheck check;
  check.name = "subexp-sum";
  check.Add({"fitted diameter of the sum <= 3 * sum(diameters)", fit, bound,
             relative_slack * bound, fit <= bound * (1.0 + relative_slack)});
  return check;
}

double MedianExpectationFactor(int k) {
  if (k < 1) {
    throw InvalidParameter(ErrorCode::kInvalidArgument, "k must be positive");
  }
  // 2 * C(2k - 1, k)
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (k - 1 + i) / i;
  return 2.0 * c;
}

LemmaCheck VerifyMedianExpectation(const Sampler& sampler, int k,
                                   int64_t trials, RandomSource& rng) {
  const double factor = MedianExpectationFactor(k);
  const int group = 2 * k - 1;
  std::vector<double> medians(trials);
  std::vector<double> singles;
  singles.reserve(trials * group);
  std::vector<double> buf(group);
  for (int64_t i = 0; i < trials; ++i) {
    for (double& x : buf) {
      x = sampler(rng);
      if (x < 0.0) {
        throw InvalidParameter(ErrorCode::kInvalidArgument,
                               "median lemma needs a nonnegative sampler");
      }
      singles.push_back(x);
    }
    std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end());
    medians[i] = buf[k - 1];
  }
  const MeanSe med = Summarize(medians);
  const MeanSe one = Summarize(singles);
  LemmaCheck check;
  check.name = "median-expectation";
  const double bound = factor * one.mean;
  const double tol = 3.0 * med.se + factor * 3.0 * one.se;
  check.Add({"E[median] <= 2 C(2k-1,k) E[X]", med.mean, bound, tol,
             med.mean <= bound + tol});
  return check;
}

LemmaCheck VerifyDensityRatio(const LaplaceSpec& noise,
                              const Sampler& contaminant, double diameter,
                              RandomSource& rng,
                              const DensityRatioOptions& opts) {
  ValidateSpec(noise);
  const double e = diameter / noise.scale;
  if (e > 0.5) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "Laplace density lemma needs diameter / scale <= "
                           "1/2");
  }
  const double lower = std::exp(-(1.0 + std::numbers::ln2) * e);
  const double upper = std::exp(3.0 * std::numbers::ln2 * e);
  return DensityRatio(
      "density-ratio-laplace",
      [&](double y) { return LaplacePdf(noise, y); }, noise.scale,
      contaminant, lower, upper, rng, opts);
}

LemmaCheck VerifyDensityRatio(const ZSParetoSpec& noise,
                              const Sampler& contaminant, double diameter,
                              RandomSource& rng,
                              const DensityRatioOptions& opts) {
  ValidateSpec(noise);
  const double a = noise.alpha;
  const double shrink = 1.0 - std::pow(2.0, -1.0 / a);
  const double e = diameter / (shrink * noise.scale);
  if (e > 1.0) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "Pareto density lemma needs an effective epsilon "
                           "<= 1");
  }
  const double lower = std::exp(-shrink * a * e);
  const double upper = std::exp((2.0 * a - 1.0) / (a - 1.0) * e);
  return DensityRatio(
      "density-ratio-zspareto",
      [&](double y) { return ZSParetoPdf(noise, y); }, noise.scale,
      contaminant, lower, upper, rng, opts);
}

}  // namespace subdp

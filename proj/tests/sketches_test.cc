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
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "subdp/ams.h"
#include "subdp/exact.h"
#include "subdp/kll.h"

namespace subdp {
namespace {

TEST(AmsSketchTest, SingleUpdate) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    AmsSketch sk(10, 3, 16, RandomSource(seed));
    sk.Update({0, 3});
    EXPECT_EQ(sk.EstimateF2(), 9.0);
  }
}

TEST(AmsSketchTest, Empty) {
  AmsSketch sk(10, 5, 8, RandomSource(1));
  EXPECT_EQ(sk.EstimateF2(), 0.0);
  sk.Update({4, 2});
  sk.Update({4, -2});
  EXPECT_EQ(sk.EstimateF2(), 0.0);
}

TEST(AmsSketchTest, Unbiased) {
  double sum = 0.0;
  const int seeds = 10'000;
  for (int s = 0; s < seeds; ++s) {
    AmsSketch sk(1000, 1, 2, RandomSource(s));
    sk.Update({0, 1});
    sk.Update({1, 2});
    sum += sk.EstimateF2();
  }
  EXPECT_NEAR(sum / seeds, 5.0, 0.1);
}

TEST(AmsSketchTest, RelativeRmse) {
  const double rho = 0.1;
  double sq = 0.0;
  const int seeds = 10'000;
  for (int s = 0; s < seeds; ++s) {
    AmsSketch sk = AmsSketch::ForAccuracy(100, rho, 1, RandomSource(s));
    for (uint64_t i = 0; i < 100; ++i) sk.Update({i, 1});
    const double e = sk.EstimateF2() - 100.0;
    sq += e * e;
  }
  EXPECT_LE(std::sqrt(sq / seeds) / 100.0, rho);
  EXPECT_EQ(AmsSketch::ColumnsFor(0.1), 800);
}

TEST(AmsSketchTest, PermutationInvariant) {
  std::vector<StreamUpdate> ups;
  RandomSource rng(3);
  for (int i = 0; i < 200; ++i) {
    ups.push_back({rng.Below(50), static_cast<int64_t>(rng.Below(7)) - 3});
  }
  AmsSketch a(50, 3, 32, RandomSource(9));
  for (const auto& u : ups) a.Update(u);
  std::shuffle(ups.begin(), ups.end(), rng);
  AmsSketch b(50, 3, 32, RandomSource(9));
  for (const auto& u : ups) b.Update(u);
  EXPECT_EQ(a.EstimateF2(), b.EstimateF2());
  for (int r = 0; r < 3; ++r) {
    for (int64_t c = 0; c < 32; ++c) EXPECT_EQ(a.Counter(r, c), b.Counter(r, c));
  }
}

TEST(AmsSketchTest, MergeEqualsConcatenation) {
  AmsSketch whole(100, 3, 16, RandomSource(4));
  AmsSketch left(100, 3, 16, RandomSource(4));
  AmsSketch right(100, 3, 16, RandomSource(4));
  for (uint64_t i = 0; i < 100; ++i) {
    whole.Update({i, 1});
    (i % 2 ? left : right).Update({i, 1});
  }
  left.Merge(right);
  EXPECT_EQ(left.EstimateF2(), whole.EstimateF2());
  AmsSketch other(100, 3, 16, RandomSource(5));
  EXPECT_THROW(left.Merge(other), InvalidParameter);
}

TEST(AmsSketchTest, SignsAreBalanced) {
  AmsSketch sk(100000, 1, 4, RandomSource(6));
  int sum = 0;
  for (uint64_t i = 0; i < 100000; ++i) {
    const int s = sk.Sign(0, i);
    ASSERT_TRUE(s == 1 || s == -1);
    sum += s;
  }
  EXPECT_LT(std::abs(sum), 2000);
}

TEST(AmsSketchTest, Rejects) {
  EXPECT_THROW(AmsSketch(10, 2, 4, RandomSource(1)), InvalidParameter);
  EXPECT_THROW(AmsSketch(10, 1, 0, RandomSource(1)), InvalidParameter);
  AmsSketch sk(10, 1, 4, RandomSource(1));
  EXPECT_THROW(sk.Update({10, 1}), InvalidParameter);
}

TEST(KllSketchTest, SmallIsExact) {
  KllSketch sk(200, RandomSource(1));
  for (int i = 1; i <= 100; ++i) sk.Update(i);
  EXPECT_EQ(sk.Rank(50.5), 50u);
  EXPECT_EQ(sk.Rank(0.0), 0u);
  EXPECT_EQ(sk.Rank(1000.0), 100u);
}

TEST(KllSketchTest, WeightConservedAndMonotone) {
  for (int k : {2, 8, 50}) {
    KllSketch sk(k, RandomSource(k));
    RandomSource data(k + 1);
    for (int i = 0; i < 20'000; ++i) {
      sk.Update(data.Uniform());
      if (i % 997 == 0) ASSERT_EQ(sk.TotalWeight(), sk.n());
    }
    EXPECT_EQ(sk.TotalWeight(), 20'000u);
    EXPECT_EQ(sk.Rank(2.0), 20'000u);
    uint64_t prev = 0;
    for (double q = 0.0; q <= 1.0; q += 0.01) {
      const uint64_t r = sk.Rank(q);
      EXPECT_GE(r, prev);
      prev = r;
    }
  }
}

TEST(KllSketchTest, SpaceBound) {
  const int k = 64;
  KllSketch sk(k, RandomSource(2));
  for (int i = 0; i < 1'000'000; ++i) sk.Update(i);
  // Geometric capacities sum to under 3k plus two per level.
  EXPECT_LE(sk.StoredItems(), static_cast<size_t>(3 * k + 2 * sk.levels()));
  EXPECT_LE(sk.levels(), 20);
}

TEST(KllSketchTest, ErrorDiameterWithinDeclared) {
  const int n = 10'000;
  const double rho_prime = 0.05;
  const int cap = static_cast<int>(std::ceil(2.0 / rho_prime));
  std::vector<double> errs;
  for (int s = 0; s < 400; ++s) {
    KllSketch sk(cap, RandomSource(s));
    for (int i = 0; i < n; ++i) sk.Update((i * 7919) % n);
    for (double q : {0.25 * n, 0.5 * n, 0.77 * n}) {
      errs.push_back(static_cast<double>(sk.Rank(q)) - (std::floor(q) + 1));
    }
  }
  EXPECT_LE(FitSubexpDiameter(errs), RankSessionOptions{}.diameter_constant *
                                         rho_prime * n);
}

TEST(KllSketchTest, ExactMode) {
  KllSketch sk = KllSketch::Exact(500, RandomSource(3));
  for (int i = 0; i < 500; ++i) sk.Update(499 - i);
  for (int q = 0; q < 500; q += 37) EXPECT_EQ(sk.Rank(q), q + 1u);
  EXPECT_THROW(KllSketch(1, RandomSource(1)), InvalidParameter);
}

F2Stream Stream(std::vector<StreamUpdate> ups, uint64_t universe,
                int64_t max_delta = 1) {
  F2Stream s;
  s.updates = std::move(ups);
  s.universe = universe;
  s.max_delta = max_delta;
  return s;
}

TEST(F2Test, ExactAndSensitivity) {
  EXPECT_EQ(ExactF2(Stream({{0, 3}, {0, -3}}, 5, 3)), 0.0);
  EXPECT_EQ(ExactF2(Stream({{0, 1}, {1, 2}}, 5, 2)), 5.0);
  const F2Stream s = Stream({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}, 20);
  EXPECT_EQ(F2Sensitivity(s), 9.0);
  EXPECT_EQ(F2Scale(s), 400.0);
}

// Brute force over every single-update replacement of a small stream.
TEST(F2Test, SensitivityBoundsNeighbors) {
  RandomSource rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int64_t dmax = 1 + rng.Below(3);
    std::vector<StreamUpdate> ups;
    const int len = 1 + rng.Below(6);
    for (int i = 0; i < len; ++i) {
      ups.push_back({rng.Below(4), static_cast<int64_t>(rng.Below(2 * dmax + 1)) -
                                       dmax});
    }
    const F2Stream s = Stream(ups, 4, dmax);
    const double base = ExactF2(s);
    for (int pos = 0; pos < len; ++pos) {
      for (uint64_t idx = 0; idx < 4; ++idx) {
        for (int64_t d = -dmax; d <= dmax; ++d) {
          F2Stream t = s;
          t.updates[pos] = {idx, d};
          EXPECT_LE(std::abs(ExactF2(t) - base), F2Sensitivity(s));
        }
      }
    }
  }
}

TEST(PrivateF2Test, SingleItemCoverage) {
  const F2Stream s = Stream({{0, 3}}, 100, 3);
  const double rho = 0.5;
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    RandomSource rng(i);
    const PrivateEstimate e =
        PrivateF2(s, rho, PrivacyBudget(1.0), 1.0 / 3.0, rng);
    ok += std::abs(e.value - 9.0) <= rho * 100.0 * 100.0;
  }
  EXPECT_GE(ok, 667);
}

TEST(PrivateF2Test, Schedule) {
  const F2Stream s = Stream({{0, 1}, {3, 1}}, 100);
  RandomSource rng(1);
  const PrivateEstimate e =
      PrivateF2(s, 0.5, PrivacyBudget(1.0), 1.0 / 3.0, rng);
  EXPECT_EQ(e.meta.runs, 3);
  EXPECT_EQ(e.mechanism.kind, MechanismKind::kZSPareto);
  EXPECT_EQ(e.mechanism.alpha, 3.0);
  EXPECT_DOUBLE_EQ(e.meta.rho_run, 1.0 / 3.0 * 0.5 / kF2AccuracyDivisor);
  EXPECT_DOUBLE_EQ(e.mechanism.delta1, 3.0);
}

TEST(PrivateF2Test, Rejects) {
  RandomSource rng(1);
  EXPECT_THROW(PrivateF2(Stream({{100, 1}}, 100), 0.5, PrivacyBudget(1.0),
                         0.3, rng),
               InvalidParameter);
  EXPECT_THROW(PrivateF2(Stream({{1, 2}}, 100), 0.5, PrivacyBudget(1.0), 0.3,
                         rng),
               InvalidParameter);
  // Delta1 = 19 exceeds the amplified error scale 0.05 * 10^2 * 1.85.
  std::vector<StreamUpdate> ups(10, StreamUpdate{0, 1});
  EXPECT_THROW(
      PrivateF2(Stream(ups, 2), 0.05, PrivacyBudget(1.0), 0.3, rng),
      RegimeViolation);
}

TEST(RankSessionTest, Parameters) {
  std::vector<double> data(1000);
  std::iota(data.begin(), data.end(), 0.0);
  const double beta = 0.1;
  const RankSession s =
      PrivateRankSession(data, 0.2, PrivacyBudget(1.0), beta, 4, RandomSource(1));
  const double rho_prime = 0.2 / (4.0 * std::log(40.0));
  EXPECT_DOUBLE_EQ(s.rho_prime, rho_prime);
  EXPECT_EQ(s.capacity, static_cast<int>(std::ceil(2.0 / rho_prime)));
  EXPECT_EQ(s.sensitivity.delta1, 1.0);
  EXPECT_DOUBLE_EQ(s.sensitivity.delta2, rho_prime * 1000.0);
  EXPECT_EQ(s.session.k_max(), 4);
  EXPECT_DOUBLE_EQ(s.session.noise_spec().scale,
                   (3.0 + 12.0 * std::numbers::ln2) * (1.0 + rho_prime * 1000.0) *
                       4.0);
}

TEST(RankSessionTest, CoverageAndRefusal) {
  std::vector<double> data(2000);
  RandomSource gen(7);
  for (double& x : data) x = gen.Uniform();
  const double beta = 1.0 / 3.0;
  int ok = 0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    RankSession s = PrivateRankSession(data, 0.1, PrivacyBudget(1.0), beta, 3,
                                       RandomSource(100 + i));
    bool good = true;
    double q = 0.5;
    for (int j = 0; j < 3; ++j) {
      const double a = s.session.Ask(q);
      good &= std::abs(a - ExactRank(data, q)) <= s.error_radius;
      q = a > 1000.0 ? 0.25 : 0.75;
    }
    ok += good;
    EXPECT_THROW(s.session.Ask(0.5), BudgetExhausted);
  }
  EXPECT_GE(ok, (1.0 - beta) * trials);
}

TEST(RankSessionTest, Deterministic) {
  std::vector<double> data = {5, 1, 4, 2, 3};
  RankSession a =
      PrivateRankSession(data, 0.5, PrivacyBudget(1.0), 0.2, 2, RandomSource(9));
  RankSession b =
      PrivateRankSession(data, 0.5, PrivacyBudget(1.0), 0.2, 2, RandomSource(9));
  EXPECT_EQ(a.session.Ask(2.5), b.session.Ask(2.5));
  EXPECT_EQ(a.session.Ask(4.5), b.session.Ask(4.5));
}

}  // namespace
}  // namespace subdp

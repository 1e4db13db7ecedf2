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

#include "subdp/kll.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subdp/errors.h"

namespace subdp {

KllSketch::KllSketch(int k, RandomSource rng) : k_(k), rng_(rng) {
  if (k < 2) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "KLL capacity must be at least 2");
  }
  levels_.emplace_back();
}

KllSketch KllSketch::Exact(uint64_t n, RandomSource rng) {
  const uint64_t cap = std::max<uint64_t>(n + 1, 2);
  if (cap > static_cast<uint64_t>(std::numeric_limits<int>::max())) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "exact KLL sketch too large");
  }
  return KllSketch(static_cast<int>(cap), rng);
}

size_t KllSketch::Capacity(int level) const {
  const int depth = levels() - 1 - level;
  const double cap = std::ceil(k_ * std::pow(2.0 / 3.0, depth));
  return std::max<size_t>(2, static_cast<size_t>(cap));
}

size_t KllSketch::StoredItems() const {
  size_t total = 0;
  for (const auto& level : levels_) total += level.size();
  return total;
}

uint64_t KllSketch::TotalWeight() const {
  uint64_t total = 0;
  for (int h = 0; h < levels(); ++h) {
    total += static_cast<uint64_t>(levels_[h].size()) << h;
  }
  return total;
}

void KllSketch::Update(double x) {
  levels_[0].push_back(x);
  ++n_;
  size_t total_capacity = 0;
  for (int h = 0; h < levels(); ++h) total_capacity += Capacity(h);
  if (StoredItems() > total_capacity) Compact();
}

void KllSketch::Compact() {
  int h = 0;
  while (levels_[h].size() < Capacity(h)) ++h;
  if (h + 1 == levels()) levels_.emplace_back();
  std::vector<double>& level = levels_[h];
  std::sort(level.begin(), level.end());
  std::vector<double> keep;
  if (level.size() % 2 == 1) {
    keep.push_back(level.back());
    level.pop_back();
  }
  const size_t offset = rng_.Coin() ? 1 : 0;
  std::vector<double>& up = levels_[h + 1];
  for (size_t i = offset; i < level.size(); i += 2) up.push_back(level[i]);
  level.swap(keep);
}

uint64_t KllSketch::Rank(double q) const {
  uint64_t rank = 0;
  for (int h = 0; h < levels(); ++h) {
    for (double x : levels_[h]) {
      if (x <= q) rank += uint64_t{1} << h;
    }
  }
  return rank;
}

}  // namespace subdp

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

#ifndef SUBDP_KLL_H_
#define SUBDP_KLL_H_

#include <cstdint>
#include <vector>

#include "subdp/random.h"

namespace subdp {

// KLL quantile sketch with lazy compaction. Level h holds items of weight
// 2^h; with H levels its capacity is max(2, ceil(k * (2/3)^(H - 1 - h))).
// An insert that pushes the total size past the total capacity compacts the
// lowest full level: its items are sorted and every other one, starting at a
// random offset, is promoted. An odd item out stays behind, so the total
// weight always equals the number of inserted items.
class KllSketch {
 public:
  KllSketch(int k, RandomSource rng);

  // Capacity large enough that no compaction ever happens for n items.
  static KllSketch Exact(uint64_t n, RandomSource rng);

  void Update(double x);

  // Total weight of stored items <= q.
  uint64_t Rank(double q) const;

  uint64_t n() const { return n_; }
  int k() const { return k_; }
  size_t StoredItems() const;
  uint64_t TotalWeight() const;
  int levels() const { return static_cast<int>(levels_.size()); }

 private:
  size_t Capacity(int level) const;
  void Compact();

  int k_;
  uint64_t n_ = 0;
  RandomSource rng_;
  std::vector<std::vector<double>> levels_;
};

}  // namespace subdp

#endif  // SUBDP_KLL_H_

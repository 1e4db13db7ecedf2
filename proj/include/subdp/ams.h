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

#ifndef SUBDP_AMS_H_
#define SUBDP_AMS_H_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "subdp/random.h"

namespace subdp {

struct StreamUpdate {
  uint64_t index = 0;
  int64_t delta = 0;
};

// Count-sketch layout of the AMS F2 sketch. Row r hashes an index to one of
// `cols` buckets with a 2-wise hash and adds sign_r(index) * delta there, the
// sign coming from a 4-wise independent polynomial over GF(2^61 - 1). A row
// estimates F2 by the sum of its squared counters; the sketch reports the
// median over rows.
//
// Counters are stored sparsely so wide rows cost memory proportional to the
// number of touched buckets.
class AmsSketch {
 public:
  AmsSketch(uint64_t universe, int rows, int64_t cols, RandomSource rng);

  // cols = ceil(8 / rho^2), which gives a per-row RMSE of at most rho * F2 / 2.
  static AmsSketch ForAccuracy(uint64_t universe, double rho, int rows,
                               RandomSource rng);
  static int64_t ColumnsFor(double rho);

  void Update(const StreamUpdate& u);
  double EstimateF2() const;
  double RowEstimate(int row) const;

  // Adds the counters of a sketch built with the same parameters and stream.
  void Merge(const AmsSketch& other);

  int64_t Counter(int row, int64_t col) const;
  int Sign(int row, uint64_t index) const;
  int64_t Bucket(int row, uint64_t index) const;

  uint64_t universe() const { return universe_; }
  int rows() const { return rows_; }
  int64_t cols() const { return cols_; }

 private:
  struct RowHash {
    uint64_t sign[4];
    uint64_t bucket[2];
  };

  uint64_t universe_;
  int rows_;
  int64_t cols_;
  uint64_t seed_;
  uint64_t stream_id_;
  std::vector<RowHash> hashes_;
  std::vector<std::unordered_map<int64_t, int64_t>> counters_;
};

}  // namespace subdp

#endif  // SUBDP_AMS_H_

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

#include "subdp/ams.h"

#include <cmath>
#include <string>

#include "subdp/errors.h"
#include "subdp/privatizer.h"

namespace subdp {
namespace {

constexpr uint64_t kPrime = (uint64_t{1} << 61) - 1;

uint64_t MulMod(uint64_t a, uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  uint64_t r = static_cast<uint64_t>(p & kPrime) + static_cast<uint64_t>(p >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

uint64_t AddMod(uint64_t a, uint64_t b) {
  uint64_t r = a + b;
  if (r >= kPrime) r -= kPrime;
  return r;
}

uint64_t Reduce(uint64_t x) {
  uint64_t r = (x & kPrime) + (x >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

}  // namespace

AmsSketch::AmsSketch(uint64_t universe, int rows, int64_t cols,
                     RandomSource rng)
    : universe_(universe),
      rows_(rows),
      cols_(cols),
      seed_(rng.seed()),
      stream_id_(rng.stream_id()) {
  if (universe == 0) {
    throw InvalidParameter(ErrorCode::kOutOfUniverse,
                           "universe must be nonempty");
  }
  if (rows < 1 || rows % 2 == 0) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "AMS row count must be odd and positive");
  }
  if (cols < 1) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "AMS column count must be positive");
  }
  hashes_.resize(rows);
  for (RowHash& h : hashes_) {
    for (uint64_t& a : h.sign) a = rng.Below(kPrime);
    h.bucket[0] = 1 + rng.Below(kPrime - 1);
    h.bucket[1] = rng.Below(kPrime);
  }
  counters_.resize(rows);
}

int64_t AmsSketch::ColumnsFor(double rho) {
  internal::CheckAccuracy(rho);
  return static_cast<int64_t>(std::ceil(8.0 / (rho * rho)));
}

AmsSketch AmsSketch::ForAccuracy(uint64_t universe, double rho, int rows,
                                 RandomSource rng) {
  return AmsSketch(universe, rows, ColumnsFor(rho), rng);
}

int AmsSketch::Sign(int row, uint64_t index) const {
  const RowHash& h = hashes_[row];
  const uint64_t x = Reduce(index);
  uint64_t acc = h.sign[3];
  for (int i = 2; i >= 0; --i) acc = AddMod(MulMod(acc, x), h.sign[i]);
  return (acc & 1) ? 1 : -1;
}

int64_t AmsSketch::Bucket(int row, uint64_t index) const {
  const RowHash& h = hashes_[row];
  const uint64_t v = AddMod(MulMod(h.bucket[0], Reduce(index)), h.bucket[1]);
  return static_cast<int64_t>(v % static_cast<uint64_t>(cols_));
}

void AmsSketch::Update(const StreamUpdate& u) {
  if (u.index >= universe_) {
    throw InvalidParameter(ErrorCode::kOutOfUniverse,
                           "stream index " + std::to_string(u.index) +
                               " outside universe of size " +
                               std::to_string(universe_));
  }
  if (u.delta == 0) return;
  for (int r = 0; r < rows_; ++r) {
    counters_[r][Bucket(r, u.index)] += Sign(r, u.index) * u.delta;
  }
}

double AmsSketch::RowEstimate(int row) const {
  double sum = 0.0;
  for (const auto& [col, c] : counters_[row]) {
    sum += static_cast<double>(c) * static_cast<double>(c);
  }
  return sum;
}

double AmsSketch::EstimateF2() const {
  std::vector<double> rows(rows_);
  for (int r = 0; r < rows_; ++r) rows[r] = RowEstimate(r);
  return internal::Median(std::move(rows));
}

void AmsSketch::Merge(const AmsSketch& other) {
  if (other.universe_ != universe_ || other.rows_ != rows_ ||
      other.cols_ != cols_ || other.seed_ != seed_ ||
      other.stream_id_ != stream_id_) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "merged sketches must share parameters and hashes");
  }
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [col, c] : other.counters_[r]) counters_[r][col] += c;
  }
}

int64_t AmsSketch::Counter(int row, int64_t col) const {
  const auto it = counters_[row].find(col);
  return it == counters_[row].end() ? 0 : it->second;
}

}  // namespace subdp

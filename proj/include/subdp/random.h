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

#ifndef SUBDP_RANDOM_H_
#define SUBDP_RANDOM_H_

#include <cstdint>
#include <limits>

namespace subdp {

// 64-bit finalizer (murmur3 / splitmix64 style). Bijective.
constexpr uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Counter-based pseudorandom stream. The i-th output is a keyed hash of i, so
// a (seed, stream_id) pair names one reproducible sequence and distinct
// stream ids give unrelated sequences. Streams are single-consumer.
//
// Satisfies UniformRandomBitGenerator, so it can drive <random>
// distributions and std::shuffle.
//
// Not a cryptographic generator: privacy analyses treat its output as ideal
// uniform randomness.
class RandomSource {
 public:
  using result_type = uint64_t;

  explicit RandomSource(uint64_t seed, uint64_t stream_id = 0)
      : seed_(seed),
        stream_id_(stream_id),
        key0_(Mix64(seed ^ 0x6a09e667f3bcc909ULL) ^
              Mix64(stream_id + 0x9e3779b97f4a7c15ULL)),
        key1_(Mix64(key0_ ^ 0xbb67ae8584caa73bULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Next(); }

  uint64_t Next() {
    const uint64_t c = counter_++;
    return Mix64(Mix64(c * 0x9e3779b97f4a7c15ULL + key0_) ^ key1_);
  }

  // Uniform on the open interval (0, 1) with 53 random bits.
  double Uniform() {
    return (static_cast<double>(Next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Lemire's nearly-divisionless method.
  uint64_t Below(uint64_t n);

  bool Coin() { return (Next() >> 63) != 0; }

  // A child stream keyed by this stream's identity and `child`. Does not
  // advance this stream.
  RandomSource Split(uint64_t child) const {
    return RandomSource(seed_, Mix64(stream_id_ * 0xd1b54a32d192ed03ULL +
                                     Mix64(child + 1)));
  }

  // A child stream keyed by the next draw of this stream.
  RandomSource Fork() { return Split(Next()); }

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  uint64_t key0_;
  uint64_t key1_;
  uint64_t counter_ = 0;
};

inline uint64_t RandomSource::Below(uint64_t n) {
  if (n == 0) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(Next()) * n;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < n) {
    const uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(Next()) * n;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

}  // namespace subdp

#endif  // SUBDP_RANDOM_H_

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

// Exact reference values used for --oracle reports and coverage checks.

#ifndef SUBDP_EXACT_H_
#define SUBDP_EXACT_H_

#include <cstdint>
#include <vector>

#include "subdp/graph.h"

namespace subdp {

// Number of connected components (union-find).
int64_t ComponentCount(const Graph& g);

// Size of a maximum matching (Edmonds' blossom algorithm).
int64_t MaximumMatchingSize(const Graph& g);

// Number of elements <= q in `data`.
int64_t ExactRank(const std::vector<double>& data, double q);

}  // namespace subdp

#endif  // SUBDP_EXACT_H_

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

#include "subdp/errors.h"

namespace subdp {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositiveEpsilon:
      return "non_positive_epsilon";
    case ErrorCode::kZeroSensitivity:
      return "zero_sensitivity";
    case ErrorCode::kNegativeSensitivity:
      return "negative_sensitivity";
    case ErrorCode::kInvalidQueryCount:
      return "invalid_query_count";
    case ErrorCode::kShapeOutOfDomain:
      return "shape_out_of_domain";
    case ErrorCode::kInvalidScale:
      return "invalid_scale";
    case ErrorCode::kInvalidAccuracy:
      return "invalid_accuracy";
    case ErrorCode::kInvalidFailureProbability:
      return "invalid_failure_probability";
    case ErrorCode::kTooFewSamples:
      return "too_few_samples";
    case ErrorCode::kEmptyInput:
      return "empty_input";
    case ErrorCode::kOutOfUniverse:
      return "out_of_universe";
    case ErrorCode::kInvalidGraph:
      return "invalid_graph";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
  }
  return "unknown";
}

}  // namespace subdp

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

#ifndef SUBDP_ERRORS_H_
#define SUBDP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace subdp {

enum class ErrorCode {
  kNonPositiveEpsilon,
  kZeroSensitivity,
  kNegativeSensitivity,
  kInvalidQueryCount,
  kShapeOutOfDomain,
  kInvalidScale,
  kInvalidAccuracy,
  kInvalidFailureProbability,
  kTooFewSamples,
  kEmptyInput,
  kOutOfUniverse,
  kInvalidGraph,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter is outside its documented domain.
class InvalidParameter : public Error {
 public:
  InvalidParameter(ErrorCode code, const std::string& what)
      : Error(std::string(ErrorCodeName(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// The request is well formed but outside the regime where the privacy or
// accuracy contract holds: epsilon above the library cap, or a sensitivity
// that dominates the approximation error.
class RegimeViolation : public Error {
 public:
  using Error::Error;
};

// A query session has answered all of its k queries.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// The local matching oracle exceeded its exploration cap.
class OracleFailure : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based; 0 when not line specific.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace subdp

#endif  // SUBDP_ERRORS_H_

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

// JSON views of library results for CLI reports.

#ifndef SUBDP_REPORT_H_
#define SUBDP_REPORT_H_

#include <json.hpp>

#include "subdp/auditor.h"
#include "subdp/noise.h"
#include "subdp/privatizer.h"

namespace subdp {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

Json ToJson(const MechanismSpec& m);
Json ToJson(const PrivateEstimate& e);
Json ToJson(const AuditReport& r);
Json ToJson(const LemmaCheck& c);
Json ToJson(const IntegralCase& c);

}  // namespace subdp

#endif  // SUBDP_REPORT_H_

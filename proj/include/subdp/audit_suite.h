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

// Designated neighbor pairs and mechanisms for the empirical epsilon audits.

#ifndef SUBDP_AUDIT_SUITE_H_
#define SUBDP_AUDIT_SUITE_H_

#include <string>
#include <vector>

#include "subdp/auditor.h"

namespace subdp {

struct AuditScenario {
  std::string name;
  std::string relation;
  std::string description;
  bool expect_pass = true;  // false for the unnoised control
};

// cc, f2, matching, rank, avgdeg, laplace and control.
std::vector<AuditScenario> DesignatedAudits();

// Runs one designated audit at privacy level opts.epsilon_target.
AuditReport RunDesignatedAudit(const std::string& name,
                               const AuditOptions& opts);

}  // namespace subdp

#endif  // SUBDP_AUDIT_SUITE_H_

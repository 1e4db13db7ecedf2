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

#include "subdp/report.h"

namespace subdp {

Json ToJson(const MechanismSpec& m) {
  Json j;
  j["kind"] = MechanismName(m.kind);
  j["scale"] = m.scale;
  j["constant"] = m.constant;
  j["epsilon"] = m.epsilon;
  j["k"] = m.k;
  j["delta1"] = m.delta1;
  j["delta2"] = m.delta2;
  if (m.kind == MechanismKind::kZSPareto) j["alpha"] = m.alpha;
  return j;
}

Json ToJson(const PrivateEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["epsilon_spent"] = e.epsilon_spent;
  j["mechanism"] = ToJson(e.mechanism);
  Json meta;
  meta["runs"] = e.meta.runs;
  meta["epsilon_per_run"] = e.meta.epsilon_per_run;
  meta["rho"] = e.meta.rho;
  meta["rho_run"] = e.meta.rho_run;
  meta["forced"] = e.meta.forced;
  meta["floor_reached"] = e.meta.floor_reached;
  meta["run_values"] = e.meta.run_values;
  j["meta"] = meta;
  return j;
}

Json ToJson(const AuditReport& r) {
  Json j;
  j["epsilon_target"] = r.epsilon_target;
  j["epsilon_measured"] = r.epsilon_measured;
  j["slack"] = r.slack;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["trials"] = r.trials;
  j["bins"] = r.bins;
  j["dims"] = r.dims;
  j["seed"] = r.seed;
  j["z"] = r.z;
  j["method"] =
      "max over cells of the smallest |log(p_a/p_b)| consistent with "
      "Bonferroni-corrected Wilson intervals";
  Json cells = Json::array();
  for (const AuditCell& c : r.cells) {
    cells.push_back({{"cell", c.label},
                     {"count_a", c.count_a},
                     {"count_b", c.count_b},
                     {"log_ratio", c.log_ratio},
                     {"lower_bound", c.lower_bound}});
  }
  j["cells"] = cells;
  return j;
}

Json ToJson(const LemmaCheck& c) {
  Json j;
  j["name"] = c.name;
  j["verdict"] = c.pass ? "pass" : "fail";
  Json records = Json::array();
  for (const CheckRecord& r : c.records) {
    records.push_back({{"check", r.label},
                       {"value", r.value},
                       {"bound", r.bound},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
  }
  j["records"] = records;
  return j;
}

Json ToJson(const IntegralCase& c) {
  return {{"alpha", c.alpha},       {"epsilon", c.epsilon},
          {"x", c.x},               {"lhs", c.lhs},
          {"rhs", c.rhs},           {"quadrature_error", c.error_estimate},
          {"pass", c.pass}};
}

}  // namespace subdp

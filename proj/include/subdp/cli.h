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

#ifndef SUBDP_CLI_H_
#define SUBDP_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace subdp {

enum ExitCode {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitRegime = 3,
  kExitAuditFailed = 4,
};

// Runs one subcommand. `args` excludes the program name. The JSON report
// goes to --output when given, else to `out`; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace subdp

#endif  // SUBDP_CLI_H_

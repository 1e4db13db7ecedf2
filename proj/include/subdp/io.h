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

#ifndef SUBDP_IO_H_
#define SUBDP_IO_H_

#include <istream>
#include <string>
#include <vector>

#include "subdp/ams.h"
#include "subdp/graph.h"

namespace subdp {

// `n m` on the first line, then m lines `u v` with 0-based endpoints.
Graph ParseGraph(std::istream& in, const std::string& name = "<graph>");
Graph LoadGraph(const std::string& path);

// One `index,delta` pair per line; `#` starts a comment.
std::vector<StreamUpdate> ParseStream(std::istream& in,
                                      const std::string& name = "<stream>");
std::vector<StreamUpdate> LoadStream(const std::string& path);

// One real per line; `#` starts a comment.
std::vector<double> ParseReals(std::istream& in,
                               const std::string& name = "<reals>");
std::vector<double> LoadReals(const std::string& path);

}  // namespace subdp

#endif  // SUBDP_IO_H_

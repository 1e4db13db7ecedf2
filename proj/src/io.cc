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

#include "subdp/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "subdp/errors.h"

namespace subdp {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view StripComment(std::string_view s) {
  const auto hash = s.find('#');
  return Trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

template <typename T>
T ParseNumber(std::string_view token, const std::string& name, int line) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ParseError(name, line, "malformed number '" + std::string(token) + "'");
  }
  return value;
}

std::ifstream Open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

}  // namespace

Graph ParseGraph(std::istream& in, const std::string& name) {
  std::string text;
  int line_no = 0;
  int64_t n = -1;
  int64_t m = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream fields{std::string(Trim(text))};
    std::string a_tok;
    std::string b_tok;
    std::string extra;
    if (!(fields >> a_tok)) continue;  // blank line
    if (!(fields >> b_tok) || (fields >> extra)) {
      throw ParseError(name, line_no, "expected two integers");
    }
    const int64_t a = ParseNumber<int64_t>(a_tok, name, line_no);
    const int64_t b = ParseNumber<int64_t>(b_tok, name, line_no);
    if (n < 0) {
      if (a < 0 || b < 0 || a > 0x7fffffff) {
        throw ParseError(name, line_no, "invalid header");
      }
      n = a;
      m = b;
      continue;
    }
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ParseError(name, line_no, "vertex out of range");
    }
    if (a == b) throw ParseError(name, line_no, "self-loop");
    const Edge e{static_cast<int>(std::min(a, b)),
                 static_cast<int>(std::max(a, b))};
    if (!seen.insert(e).second) {
      throw ParseError(name, line_no, "duplicate edge");
    }
    edges.push_back(e);
  }
  if (n < 0) throw ParseError(name, line_no, "missing header");
  if (static_cast<int64_t>(edges.size()) != m) {
    throw ParseError(name, line_no,
                     "header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  return Graph(static_cast<int>(n), edges);
}

Graph LoadGraph(const std::string& path) {
  std::ifstream in = Open(path);
  return ParseGraph(in, path);
}

std::vector<StreamUpdate> ParseStream(std::istream& in,
                                      const std::string& name) {
  std::vector<StreamUpdate> out;
  std::string text;
  int line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const std::string_view body = StripComment(text);
    if (body.empty()) continue;
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(name, line_no, "expected 'index,delta'");
    }
    const int64_t index =
        ParseNumber<int64_t>(Trim(body.substr(0, comma)), name, line_no);
    const int64_t delta =
        ParseNumber<int64_t>(Trim(body.substr(comma + 1)), name, line_no);
    if (index < 0) throw ParseError(name, line_no, "negative index");
    out.push_back({static_cast<uint64_t>(index), delta});
  }
  return out;
}

std::vector<StreamUpdate> LoadStream(const std::string& path) {
  std::ifstream in = Open(path);
  return ParseStream(in, path);
}

std::vector<double> ParseReals(std::istream& in, const std::string& name) {
  std::vector<double> out;
  std::string text;
  int line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const std::string_view body = StripComment(text);
    if (body.empty()) continue;
    const double x = ParseNumber<double>(body, name, line_no);
    if (!std::isfinite(x)) throw ParseError(name, line_no, "non-finite value");
    out.push_back(x);
  }
  return out;
}

std::vector<double> LoadReals(const std::string& path) {
  std::ifstream in = Open(path);
  return ParseReals(in, path);
}

}  // namespace subdp

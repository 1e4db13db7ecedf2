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

#include "subdp/graph.h"

#include <algorithm>
#include <string>

#include "subdp/errors.h"

namespace subdp {

Graph::Graph(int n, const std::vector<Edge>& edges) : n_(n) {
  if (n < 0) {
    throw InvalidParameter(ErrorCode::kInvalidGraph,
                           "vertex count must be nonnegative");
  }
  std::vector<int> degree(n, 0);
  for (const auto& [u, v] : edges) {
    CheckVertex(u);
    CheckVertex(v);
    if (u == v) {
      throw InvalidParameter(ErrorCode::kInvalidGraph,
                             "self-loop at vertex " + std::to_string(u));
    }
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
  for (int v = 0; v < n; ++v) {
    auto first = adjacency_.begin() + offsets_[v];
    auto last = adjacency_.begin() + offsets_[v + 1];
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw InvalidParameter(ErrorCode::kInvalidGraph,
                             "duplicate edge at vertex " + std::to_string(v));
    }
  }
}

void Graph::CheckVertex(int v) const {
  if (v < 0 || v >= n_) {
    throw InvalidParameter(ErrorCode::kInvalidGraph,
                           "vertex " + std::to_string(v) +
                               " outside [0, " + std::to_string(n_) + ")");
  }
}

bool Graph::HasEdge(int u, int v) const {
  CheckVertex(u);
  CheckVertex(v);
  const auto nb = Neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> edges;
  edges.reserve(m());
  for (int u = 0; u < n_; ++u) {
    for (int v : Neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

Graph Graph::WithEdge(int u, int v) const {
  std::vector<Edge> edges = Edges();
  edges.emplace_back(u, v);
  return Graph(n_, edges);
}

Graph Graph::WithoutEdge(int u, int v) const {
  if (!HasEdge(u, v)) {
    throw InvalidParameter(ErrorCode::kInvalidGraph, "edge not present");
  }
  std::vector<Edge> edges = Edges();
  const Edge e{std::min(u, v), std::max(u, v)};
  edges.erase(std::find(edges.begin(), edges.end(), e));
  return Graph(n_, edges);
}

Graph Graph::WithoutVertex(int v) const {
  CheckVertex(v);
  std::vector<Edge> edges;
  for (const auto& [a, b] : Edges()) {
    if (a == v || b == v) continue;
    edges.emplace_back(a > v ? a - 1 : a, b > v ? b - 1 : b);
  }
  return Graph(n_ - 1, edges);
}

Graph Graph::Relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "permutation size differs from vertex count");
  }
  std::vector<Edge> edges;
  for (const auto& [a, b] : Edges()) edges.emplace_back(perm[a], perm[b]);
  return Graph(n_, edges);
}

Graph Graph::Empty(int n) { return Graph(n, {}); }

Graph Graph::Complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph Graph::Path(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph Graph::Cycle(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  if (n > 2) edges.emplace_back(n - 1, 0);
  return Graph(n, edges);
}

Graph Graph::Star(int leaves) {
  std::vector<Edge> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

Graph Graph::DisjointEdges(int pairs) {
  std::vector<Edge> edges;
  for (int i = 0; i < pairs; ++i) edges.emplace_back(2 * i, 2 * i + 1);
  return Graph(2 * pairs, edges);
}

Graph Graph::Gnp(int n, double p, RandomSource& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.Uniform() < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

}  // namespace subdp

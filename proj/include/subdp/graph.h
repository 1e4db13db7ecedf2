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

#ifndef SUBDP_GRAPH_H_
#define SUBDP_GRAPH_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "subdp/random.h"

namespace subdp {

using Edge = std::pair<int, int>;

// Simple undirected graph in compressed adjacency form. Neighbor lists are
// sorted. Construction rejects self-loops, duplicate edges and endpoints
// outside [0, n).
class Graph {
 public:
  Graph() = default;
  Graph(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  int64_t m() const { return static_cast<int64_t>(adjacency_.size() / 2); }
  int Degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const int> Neighbors(int v) const {
    return {adjacency_.data() + offsets_[v],
            static_cast<size_t>(Degree(v))};
  }
  bool HasEdge(int u, int v) const;
  double AverageDegree() const { return n_ == 0 ? 0.0 : 2.0 * m() / n_; }

  // Each edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> Edges() const;

  Graph WithEdge(int u, int v) const;
  Graph WithoutEdge(int u, int v) const;
  // Drops v and relabels w > v to w - 1.
  Graph WithoutVertex(int v) const;
  // Vertex v becomes perm[v].
  Graph Relabeled(const std::vector<int>& perm) const;

  static Graph Empty(int n);
  static Graph Complete(int n);
  static Graph Path(int n);
  static Graph Cycle(int n);
  static Graph Star(int leaves);
  static Graph DisjointEdges(int pairs);
  static Graph Gnp(int n, double p, RandomSource& rng);

 private:
  void CheckVertex(int v) const;

  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> adjacency_;
};

}  // namespace subdp

#endif  // SUBDP_GRAPH_H_

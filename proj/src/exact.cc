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

#include "subdp/exact.h"

#include <algorithm>
#include <numeric>
#include <queue>

namespace subdp {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g),
        n_(g.n()),
        match_(n_, -1),
        parent_(n_),
        base_(n_),
        used_(n_),
        blossom_(n_) {}

  int64_t Run() {
    int64_t size = 0;
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      for (int u : g_.Neighbors(v)) {
        if (match_[u] == -1) {
          match_[u] = v;
          match_[v] = u;
          ++size;
          break;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      int end = FindPath(v);
      if (end == -1) continue;
      ++size;
      while (end != -1) {
        const int pv = parent_[end];
        const int next = match_[pv];
        match_[end] = pv;
        match_[pv] = end;
        end = next;
      }
    }
    return size;
  }

 private:
  int Lca(int a, int b) {
    std::vector<bool> seen(n_, false);
    while (true) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void MarkPath(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int FindPath(int root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : g_.Neighbors(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          const int cur = Lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), false);
          MarkPath(v, cur, to);
          MarkPath(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = true;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  int n_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<bool> used_;
  std::vector<bool> blossom_;
};

}  // namespace

int64_t ComponentCount(const Graph& g) {
  DisjointSets sets(g.n());
  int64_t count = g.n();
  for (const auto& [u, v] : g.Edges()) {
    if (sets.Union(u, v)) --count;
  }
  return count;
}

int64_t MaximumMatchingSize(const Graph& g) { return Blossom(g).Run(); }

int64_t ExactRank(const std::vector<double>& data, double q) {
  return std::count_if(data.begin(), data.end(),
                       [q](double x) { return x <= q; });
}

}  // namespace subdp

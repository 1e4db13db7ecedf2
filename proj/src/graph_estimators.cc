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

#include "subdp/graph_estimators.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "subdp/errors.h"

namespace subdp {
namespace {

int64_t SampleCount(double numerator, double rho) {
  const double s = std::ceil(numerator / (rho * rho));
  return static_cast<int64_t>(std::min(s, 0x1.0p53));
}

// Draws a multinomial(total, weights / sum(weights)) sample one category at a
// time and calls visit(category, count) for each category.
template <typename Visit>
void SampleMultinomial(int64_t total, const std::vector<double>& weights,
                       RandomSource& rng, Visit visit) {
  double mass = 0.0;
  for (double w : weights) mass += w;
  int64_t remaining = total;
  for (size_t i = 0; i < weights.size() && remaining > 0; ++i) {
    if (weights[i] <= 0.0) continue;
    const double p = std::min(1.0, weights[i] / mass);
    int64_t count = remaining;
    if (p < 1.0) {
      std::binomial_distribution<int64_t> draw(remaining, p);
      count = draw(rng);
    }
    mass -= weights[i];
    remaining -= count;
    visit(i, count);
  }
}

// Memoized truncated BFS: Size(v) = min(|C(v)|, cutoff).
class ComponentProbe {
 public:
  ComponentProbe(const Graph& g, int cutoff)
      : g_(g), cutoff_(cutoff), size_(g.n(), 0), stamp_(g.n(), 0) {}

  int Size(int v) {
    if (size_[v] != 0) return size_[v];
    ++epoch_;
    visited_.clear();
    visited_.push_back(v);
    stamp_[v] = epoch_;
    size_t head = 0;
    while (head < visited_.size() &&
           static_cast<int>(visited_.size()) < cutoff_) {
      const int x = visited_[head++];
      for (int y : g_.Neighbors(x)) {
        if (stamp_[y] == epoch_) continue;
        stamp_[y] = epoch_;
        visited_.push_back(y);
        if (static_cast<int>(visited_.size()) >= cutoff_) break;
      }
    }
    const int found = std::min(static_cast<int>(visited_.size()), cutoff_);
    for (int x : visited_) size_[x] = found;
    return found;
  }

 private:
  const Graph& g_;
  int cutoff_;
  std::vector<int> size_;
  std::vector<uint32_t> stamp_;
  std::vector<int> visited_;
  uint32_t epoch_ = 0;
};

}  // namespace

double CcEstimate(const Graph& g, double rho, RandomSource& rng) {
  internal::CheckAccuracy(rho);
  const int n = g.n();
  if (n == 0) return 0.0;
  const int64_t s = SampleCount(4.0, rho);
  const int cutoff = static_cast<int>(std::ceil(2.0 / rho));
  ComponentProbe probe(g, cutoff);
  double sum = 0.0;
  if (s > n) {
    // Same distribution as s independent vertex samples: multinomial counts
    // over the possible contributions 1 / size.
    std::vector<double> weights(cutoff + 1, 0.0);
    for (int v = 0; v < n; ++v) weights[probe.Size(v)] += 1.0;
    SampleMultinomial(s, weights, rng, [&](size_t size, int64_t count) {
      sum += static_cast<double>(count) / static_cast<double>(size);
    });
  } else {
    for (int64_t i = 0; i < s; ++i) {
      sum += 1.0 / probe.Size(static_cast<int>(rng.Below(n)));
    }
  }
  return static_cast<double>(n) / static_cast<double>(s) * sum;
}

ApproxEstimator<Graph> CcEstimator() {
  ApproxEstimator<Graph> est;
  est.evaluate = [](const Graph& g, double rho, RandomSource& rng) {
    return CcEstimate(g, rho, rng);
  };
  est.error_scale = [](const Graph& g, double rho) { return rho * g.n(); };
  est.sensitivity = 1.0;
  est.model = ErrorModel::MomentBound(2.0, 0.0);
  return est;
}

PrivateEstimate PrivateCc(const Graph& g, double rho,
                          const PrivacyBudget& budget, double beta,
                          RandomSource& rng, PrivatizeOptions opts) {
  return BoostConfidence(MedianAmplify(CcEstimator()), g, rho, budget, beta,
                         rng, opts);
}

// ---------------------------------------------------------------------------

namespace {

template <size_t N>
struct ArrayHash {
  size_t operator()(const std::array<int, N>& a) const {
    uint64_t h = 0x243f6a8885a308d3ULL;
    for (int x : a) h = Mix64(h ^ static_cast<uint32_t>(x));
    return static_cast<size_t>(h);
  }
};

// Greedy maximal independent set over items in increasing rank order,
// resolved locally: an item is in the set iff none of its lower-ranked
// neighbors is. Iterative depth-first search with memoization.
template <size_t N>
class LocalGreedyMis {
 public:
  using Item = std::array<int, N>;
  using RankFn = std::function<uint64_t(const Item&)>;
  using NeighborFn = std::function<void(const Item&, std::vector<Item>&)>;

  LocalGreedyMis(RankFn rank, NeighborFn neighbors, int64_t* cost,
                 int64_t cap)
      : rank_(std::move(rank)),
        neighbors_(std::move(neighbors)),
        cost_(cost),
        cap_(cap) {}

  bool Precedes(const Item& a, const Item& b) const {
    const uint64_t ra = rank_(a);
    const uint64_t rb = rank_(b);
    return ra != rb ? ra < rb : a < b;
  }

  // Neighbors of `item` that precede it, in increasing rank.
  std::vector<Item> Lower(const Item& item) const {
    std::vector<Item> all;
    neighbors_(item, all);
    std::vector<std::pair<uint64_t, Item>> keyed;
    for (const Item& x : all) {
      if (x != item && Precedes(x, item)) keyed.emplace_back(rank_(x), x);
    }
    std::sort(keyed.begin(), keyed.end());
    keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
    std::vector<Item> out;
    out.reserve(keyed.size());
    for (const auto& kv : keyed) out.push_back(kv.second);
    return out;
  }

  bool InSet(const Item& root) {
    if (auto it = memo_.find(root); it != memo_.end()) return it->second;
    struct Frame {
      Item item;
      std::vector<Item> lower;
      size_t next;
    };
    std::vector<Frame> stack;
    Charge();
    stack.push_back({root, Lower(root), 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      bool blocked = false;
      while (f.next < f.lower.size()) {
        auto it = memo_.find(f.lower[f.next]);
        if (it == memo_.end()) break;
        if (it->second) {
          blocked = true;
          break;
        }
        ++f.next;
      }
      if (!blocked && f.next < f.lower.size()) {
        const Item child = f.lower[f.next];
        Charge();
        std::vector<Item> lower = Lower(child);
        stack.push_back({child, std::move(lower), 0});
        continue;
      }
      memo_[f.item] = !blocked;
      stack.pop_back();
    }
    return memo_.at(root);
  }

 private:
  void Charge() {
    if (++*cost_ > cap_) {
      throw OracleFailure("matching oracle resolved more than " +
                          std::to_string(cap_) + " items for one query");
    }
  }

  RankFn rank_;
  NeighborFn neighbors_;
  int64_t* cost_;
  int64_t cap_;
  std::unordered_map<Item, bool, ArrayHash<N>> memo_;
};

}  // namespace

class MatchingOracle::Impl {
 public:
  using EdgeItem = std::array<int, 2>;
  using PathItem = std::array<int, 4>;

  Impl(const Graph& g, uint64_t seed, int64_t cap)
      : g_(g),
        edge_key_(Mix64(seed ^ 0x452821e638d01377ULL)),
        path_key_(Mix64(seed ^ 0xbe5466cf34e90c6cULL)),
        edges_([this](const EdgeItem& e) { return EdgeRank(e); },
               [this](const EdgeItem& e, std::vector<EdgeItem>& out) {
                 for (int end : e) {
                   for (int w : g_.Neighbors(end)) out.push_back(MakeEdge(end, w));
                 }
               },
               &cost, cap),
        paths_([this](const PathItem& p) { return PathRank(p); },
               [this](const PathItem& p, std::vector<PathItem>& out) {
                 for (int x : p) PathsThrough(x, out);
               },
               &cost, cap) {}

  static EdgeItem MakeEdge(int u, int v) {
    return u < v ? EdgeItem{u, v} : EdgeItem{v, u};
  }

  uint64_t EdgeRank(const EdgeItem& e) const {
    return Mix64(edge_key_ ^ Mix64((static_cast<uint64_t>(e[0]) << 32) |
                                   static_cast<uint32_t>(e[1])));
  }

  uint64_t PathRank(const PathItem& p) const {
    const uint64_t lo = (static_cast<uint64_t>(p[0]) << 32) |
                        static_cast<uint32_t>(p[1]);
    const uint64_t hi = (static_cast<uint64_t>(p[2]) << 32) |
                        static_cast<uint32_t>(p[3]);
    return Mix64(path_key_ ^ Mix64(lo) ^ Mix64(hi + 0x9e3779b97f4a7c15ULL));
  }

  int n() const { return g_.n(); }

  int GreedyMate(int v) {
    if (auto it = mates_.find(v); it != mates_.end()) return it->second;
    const int mate = ResolveMate(v);
    mates_.emplace(v, mate);
    return mate;
  }

  int ResolveMate(int v) {
    std::vector<std::pair<uint64_t, int>> incident;
    for (int u : g_.Neighbors(v)) {
      incident.emplace_back(EdgeRank(MakeEdge(v, u)), u);
    }
    std::sort(incident.begin(), incident.end());
    for (const auto& [rank, u] : incident) {
      if (edges_.InSet(MakeEdge(v, u))) return u;
    }
    return -1;
  }

  bool EdgeInGreedy(int u, int v) { return edges_.InSet(MakeEdge(u, v)); }

  // Canonical length-3 augmenting path u - a = b - w with u < w.
  static PathItem MakePath(int u, int a, int b, int w) {
    return u < w ? PathItem{u, a, b, w} : PathItem{w, b, a, u};
  }

  void PathsThrough(int x, std::vector<PathItem>& out) {
    const int mate = GreedyMate(x);
    if (mate != -1) {
      for (int flip = 0; flip < 2; ++flip) {
        const int a = flip ? mate : x;
        const int b = flip ? x : mate;
        for (int u : g_.Neighbors(a)) {
          if (u == b || GreedyMate(u) != -1) continue;
          for (int w : g_.Neighbors(b)) {
            if (w == a || w == u || GreedyMate(w) != -1) continue;
            out.push_back(MakePath(u, a, b, w));
          }
        }
      }
      return;
    }
    for (int a : g_.Neighbors(x)) {
      const int b = GreedyMate(a);
      if (b == -1) continue;
      for (int w : g_.Neighbors(b)) {
        if (w == a || w == x || GreedyMate(w) != -1) continue;
        out.push_back(MakePath(x, a, b, w));
      }
    }
  }

  bool IsMatched(int v, int level) {
    if (GreedyMate(v) != -1) return true;
    if (level == 0) return false;
    std::vector<PathItem> through;
    PathsThrough(v, through);
    std::sort(through.begin(), through.end(),
              [this](const PathItem& a, const PathItem& b) {
                return paths_.Precedes(a, b);
              });
    for (const PathItem& p : through) {
      if (paths_.InSet(p)) return true;
    }
    return false;
  }

  int64_t cost = 0;

 private:
  const Graph& g_;
  uint64_t edge_key_;
  uint64_t path_key_;
  LocalGreedyMis<2> edges_;
  LocalGreedyMis<4> paths_;
  std::unordered_map<int, int> mates_;
};

MatchingOracle::MatchingOracle(const Graph& g, uint64_t seed, int level,
                               int64_t cap)
    : impl_(std::make_unique<Impl>(g, seed, cap)), level_(level) {
  if (level < 0 || level > 1) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "matching oracle level must be 0 or 1");
  }
}

MatchingOracle::~MatchingOracle() = default;
MatchingOracle::MatchingOracle(MatchingOracle&&) noexcept = default;

namespace {

void CheckVertex(int v, int n) {
  if (v < 0 || v >= n) {
    throw InvalidParameter(ErrorCode::kInvalidArgument, "vertex out of range");
  }
}

}  // namespace

bool MatchingOracle::IsMatched(int v) {
  CheckVertex(v, impl_->n());
  impl_->cost = 0;
  const bool matched = impl_->IsMatched(v, level_);
  last_cost_ = impl_->cost;
  return matched;
}

int MatchingOracle::GreedyMate(int v) {
  CheckVertex(v, impl_->n());
  impl_->cost = 0;
  const int mate = impl_->GreedyMate(v);
  last_cost_ = impl_->cost;
  return mate;
}

bool MatchingOracle::EdgeInGreedy(int u, int v) {
  CheckVertex(u, impl_->n());
  CheckVertex(v, impl_->n());
  impl_->cost = 0;
  const bool in = impl_->EdgeInGreedy(u, v);
  last_cost_ = impl_->cost;
  return in;
}

double MatchingEstimate(const Graph& g, double rho, RandomSource& rng,
                        const MatchingOptions& opts) {
  internal::CheckAccuracy(rho);
  const int n = g.n();
  if (n == 0) return 0.0;
  const int64_t s = SampleCount(2.0, rho);
  MatchingOracle oracle(g, rng.Next(), opts.level, opts.cap);
  int64_t matched = 0;
  if (s > n) {
    // Same distribution as s independent vertex samples.
    int64_t total = 0;
    for (int v = 0; v < n; ++v) total += oracle.IsMatched(v) ? 1 : 0;
    if (total == n) {
      matched = s;
    } else if (total > 0) {
      std::binomial_distribution<int64_t> draw(
          s, static_cast<double>(total) / n);
      matched = draw(rng);
    }
  } else {
    for (int64_t i = 0; i < s; ++i) {
      matched += oracle.IsMatched(static_cast<int>(rng.Below(n))) ? 1 : 0;
    }
  }
  return static_cast<double>(n) / (2.0 * static_cast<double>(s)) *
         static_cast<double>(matched);
}

ApproxEstimator<Graph> MatchingEstimator(const MatchingOptions& opts) {
  ApproxEstimator<Graph> est;
  est.evaluate = [opts](const Graph& g, double rho, RandomSource& rng) {
    return MatchingEstimate(g, rho, rng, opts);
  };
  est.error_scale = [](const Graph& g, double rho) {
    const double n = g.n();
    const double s = std::ceil(2.0 / (rho * rho));
    const double sampling = 0.5 * n / std::sqrt(2.0 * s * std::numbers::ln2);
    return sampling + 0.5 * rho * n / std::numbers::ln2;
  };
  est.sensitivity = 1.0;
  est.model = ErrorModel::Subexponential(0.0);
  return est;
}

PrivateEstimate PrivateMatching(const Graph& g, double rho,
                                const PrivacyBudget& budget, double beta,
                                RandomSource& rng, PrivatizeOptions opts,
                                const MatchingOptions& matching) {
  return BoostConfidence(MatchingEstimator(matching), g, rho, budget, beta,
                         rng, opts);
}

// ---------------------------------------------------------------------------

double AvgDegreeSampleCount(int n, double y, double rho, double c) {
  const double r =
      std::ceil(c * std::sqrt(static_cast<double>(n)) /
                (rho * rho * std::sqrt(y)));
  return std::clamp(r, 1.0, 0x1.0p53);
}

double AvgDegreeEstimate(const Graph& g, double y, double rho,
                         RandomSource& rng, double c) {
  if (!(rho > 0.0)) {
    throw InvalidParameter(ErrorCode::kInvalidAccuracy, "rho must be positive");
  }
  if (!(y > 0.0)) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "advice y must be positive");
  }
  const int n = g.n();
  if (n == 0) return 0.0;
  auto precedes = [&g](int v, int u) {
    const int dv = g.Degree(v);
    const int du = g.Degree(u);
    return dv != du ? dv < du : v < u;
  };
  const int64_t r = static_cast<int64_t>(AvgDegreeSampleCount(n, y, rho, c));
  double sum = 0.0;
  if (r > n) {
    // Same distribution as r independent samples: the contribution is 2 d
    // with probability sum over degree-d vertices v of d+(v) / (n d).
    int max_degree = 0;
    for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, g.Degree(v));
    std::vector<double> weights(max_degree + 2, 0.0);
    double hit = 0.0;
    for (int v = 0; v < n; ++v) {
      const int d = g.Degree(v);
      if (d == 0) continue;
      int forward = 0;
      for (int u : g.Neighbors(v)) forward += precedes(v, u) ? 1 : 0;
      const double w = static_cast<double>(forward) / d;
      weights[d] += w;
      hit += w;
    }
    weights[max_degree + 1] = n - hit;  // zero contribution
    SampleMultinomial(r, weights, rng, [&](size_t d, int64_t count) {
      if (static_cast<int>(d) <= max_degree) {
        sum += 2.0 * static_cast<double>(d) * static_cast<double>(count);
      }
    });
  } else {
    for (int64_t i = 0; i < r; ++i) {
      const int v = static_cast<int>(rng.Below(n));
      const int d = g.Degree(v);
      if (d == 0) continue;
      const int u = g.Neighbors(v)[rng.Below(d)];
      if (precedes(v, u)) sum += 2.0 * d;
    }
  }
  return sum / static_cast<double>(r);
}

AdvisedEstimator<Graph> AvgDegreeEstimator(double c) {
  AdvisedEstimator<Graph> est;
  est.evaluate = [c](const Graph& g, double y, double rho, RandomSource& rng) {
    return AvgDegreeEstimate(g, y, rho, rng, c);
  };
  est.sensitivity = 0.0;
  return est;
}

void AdviceSearchConfig::Validate() const {
  if (!(lower > 0.0) || !(lower <= upper) || !std::isfinite(upper)) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "advice bounds need 0 < m_lo <= M");
  }
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "complexity exponents must be positive");
  }
  PrivacyBudget check(epsilon);
  internal::CheckAccuracy(rho);
}

int AdviceSearchConfig::Iterations() const {
  return static_cast<int>(std::floor(std::log2(upper / lower) + 1e-12)) + 1;
}

PrivateEstimate PrivateAvgDegree(const Graph& g, double rho,
                                 const PrivacyBudget& budget, double beta,
                                 RandomSource& rng,
                                 const AvgDegreeOptions& opts) {
  internal::CheckAccuracy(rho);
  internal::CheckBeta(beta);
  if (g.n() < 2 || g.m() < 1) {
    throw InvalidParameter(ErrorCode::kEmptyInput,
                           "average degree needs a graph with an edge");
  }
  if (!(opts.m_min >= 1.0)) {
    throw InvalidParameter(ErrorCode::kInvalidArgument,
                           "m_min must be at least 1");
  }
  const double n = g.n();
  const double delta1 = 2.0 / n;
  bool forced = false;
  if (delta1 > budget.epsilon() * rho * g.AverageDegree()) {
    if (!opts.force) {
      throw RegimeViolation(
          "edge sensitivity 2/n exceeds epsilon * rho * average degree");
    }
    forced = true;
  }
  const int t = BoostRunCount(beta);
  const PrivacyBudget share = budget.Share(t);
  AdvisedEstimator<Graph> b = MedianAmplify(AvgDegreeEstimator(opts.c));
  b.sensitivity = delta1;
  AdviceSearchConfig cfg;
  cfg.upper = n - 1.0;
  cfg.lower = std::min(2.0 * opts.m_min / n, cfg.upper);
  cfg.epsilon = share.epsilon();
  cfg.rho = rho / opts.accuracy_divisor;

  PrivateEstimate out;
  std::vector<double> values;
  for (int i = 0; i < t; ++i) {
    const AdviceSearchResult run = AdviceRemovalSearch(b, g, cfg, rng);
    values.push_back(run.value);
    out.meta.floor_reached = out.meta.floor_reached || run.floor_reached;
    if (i == 0) out.mechanism.scale = run.final_noise_scale;
  }
  out.value = internal::Median(values);
  out.mechanism.kind = MechanismKind::kZSPareto;
  out.mechanism.alpha = 3.0;
  out.mechanism.constant = ParetoConstant(3.0);
  out.mechanism.epsilon = share.epsilon();
  out.mechanism.delta1 = delta1;
  out.epsilon_spent = budget.epsilon();
  out.meta.runs = t;
  out.meta.rho = rho;
  out.meta.rho_run = cfg.rho * cfg.epsilon;
  out.meta.epsilon_per_run = share.epsilon();
  out.meta.forced = forced;
  out.meta.run_values = std::move(values);
  return out;
}

}  // namespace subdp

#pragma once

// Brute-force references used only by the tests. Nothing here calls the
// library's matching, cover or search code.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "mepvcb/instance.hpp"

namespace oracle {

using mepvcb::BipartiteGraph;
using mepvcb::Weight;

struct MatchingValues {
  int max_size = 0;
  Weight max_weight = 0;
  std::vector<Weight> best_with_at_most;  // index k: best weight using <= k edges
};

/// Enumerates every matching inside `allowed` (all edges when null).
inline MatchingValues all_matchings(const BipartiteGraph& g, const std::vector<int>* allowed = nullptr) {
  std::vector<int> ids;
  if (allowed) {
    ids = *allowed;
  } else {
    for (int id = 0; id < g.edge_count(); ++id) ids.push_back(id);
  }
  const int cap = std::min(g.left_count(), g.right_count());
  std::vector<Weight> best(static_cast<std::size_t>(cap) + 1, -1);  // exact size
  std::vector<char> used_l(static_cast<std::size_t>(g.left_count()), 0);
  std::vector<char> used_r(static_cast<std::size_t>(g.right_count()), 0);
  // Branch on edges in order: skip or take.
  auto rec = [&](auto&& self, std::size_t i, int size, Weight w) -> void {
    if (i == ids.size()) {
      best[static_cast<std::size_t>(size)] = std::max(best[static_cast<std::size_t>(size)], w);
      return;
    }
    self(self, i + 1, size, w);
    const auto& e = g.edge(ids[i]);
    auto& ul = used_l[static_cast<std::size_t>(e.u)];
    auto& ur = used_r[static_cast<std::size_t>(e.v)];
    if (!ul && !ur) {
      ul = ur = 1;
      self(self, i + 1, size + 1, w + e.w);
      ul = ur = 0;
    }
  };
  rec(rec, 0, 0, 0);
  MatchingValues out;
  Weight running = 0;
  for (std::size_t s = 0; s < best.size(); ++s) {
    if (best[s] >= 0) out.max_size = static_cast<int>(s);
    running = std::max(running, best[s]);
    out.best_with_at_most.push_back(running);
  }
  out.max_weight = running;
  return out;
}

/// Size of a largest matching, by the same take/skip enumeration.
/// Max matching weight inside `ids` by a DP over used vertices of the smaller side.
inline Weight matching_weight_dp(const BipartiteGraph& g, const std::vector<int>& ids) {
  const bool flip = g.right_count() > g.left_count();
  const int small = flip ? g.left_count() : g.right_count();
  const int big = flip ? g.right_count() : g.left_count();
  std::vector<std::vector<std::pair<int, Weight>>> adj(static_cast<std::size_t>(big));
  for (int id : ids) {
    const auto& e = g.edge(id);
    adj[static_cast<std::size_t>(flip ? e.v : e.u)].emplace_back(flip ? e.u : e.v, e.w);
  }
  constexpr Weight kNone = std::numeric_limits<Weight>::min();
  std::vector<Weight> dp(std::size_t{1} << small, kNone);
  dp[0] = 0;
  for (const auto& edges : adj) {
    if (edges.empty()) continue;
    std::vector<Weight> next = dp;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (dp[mask] == kNone) continue;
      for (auto [x, w] : edges) {
        if (mask >> x & 1) continue;
        auto& slot = next[mask | std::size_t{1} << x];
        slot = std::max(slot, dp[mask] + w);
      }
    }
    dp = std::move(next);
  }
  return *std::max_element(dp.begin(), dp.end());
}

inline int max_matching_size(const BipartiteGraph& g) {
  std::vector<char> used_l(static_cast<std::size_t>(g.left_count()), 0);
  std::vector<char> used_r(static_cast<std::size_t>(g.right_count()), 0);
  int best = 0;
  auto rec = [&](auto&& self, int i, int size) -> void {
    best = std::max(best, size);
    if (i == g.edge_count() || size + (g.edge_count() - i) <= best) return;
    self(self, i + 1, size);
    const auto& e = g.edge(i);
    auto& ul = used_l[static_cast<std::size_t>(e.u)];
    auto& ur = used_r[static_cast<std::size_t>(e.v)];
    if (!ul && !ur) {
      ul = ur = 1;
      self(self, i + 1, size + 1);
      ul = ur = 0;
    }
  };
  rec(rec, 0, 0);
  return best;
}

inline bool covers(const BipartiteGraph& g, std::uint64_t mask, const mepvcb::Edge& e) {
  return (mask >> e.u & 1) || (mask >> (g.left_count() + e.v) & 1);
}

/// Smallest vertex cover by subset enumeration (|V| <= 20).
inline int min_cover_size(const BipartiteGraph& g) {
  const int n = g.vertex_count();
  int best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = __builtin_popcountll(mask);
    if (size >= best) continue;
    bool ok = true;
    for (const auto& e : g.edges()) {
      if (!covers(g, mask, e)) {
        ok = false;
        break;
      }
    }
    if (ok) best = size;
  }
  return best;
}

/// Largest induced matching: matchings with no edge joining two matched
/// edges, enumerated over edge subsets of a small graph.
inline int max_induced_matching(const BipartiteGraph& g) {
  const int m = g.edge_count();
  int best = 0;
  std::vector<int> chosen;
  auto compatible = [&](int a, int b) {
    const auto& x = g.edge(a);
    const auto& y = g.edge(b);
    if (x.u == y.u || x.v == y.v) return false;
    // An edge x.u-y.v or y.u-x.v would make a 3-edge path.
    return !g.find_edge(x.u, y.v) && !g.find_edge(y.u, x.v);
  };
  auto rec = [&](auto&& self, int i) -> void {
    best = std::max(best, static_cast<int>(chosen.size()));
    for (int j = i; j < m; ++j) {
      if (std::all_of(chosen.begin(), chosen.end(), [&](int c) { return compatible(c, j); })) {
        chosen.push_back(j);
        self(self, j + 1);
        chosen.pop_back();
      }
    }
  };
  rec(rec, 0);
  return best;
}

/// Nondominated (coverage, nu_w) pairs of vertex subsets, per subset size.
/// Answers every (k1, k2, k3) query for one graph.
class Frontier {
 public:
  explicit Frontier(const BipartiteGraph& g, int max_size = -1) {
    const int n = g.vertex_count();
    if (max_size < 0) max_size = n;
    by_size_.resize(static_cast<std::size_t>(n) + 1);
    std::vector<int> covered;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const int size = __builtin_popcountll(mask);
      if (size > max_size) continue;
      covered.clear();
      Weight cov = 0;
      for (int id = 0; id < g.edge_count(); ++id) {
        if (covers(g, mask, g.edge(id))) {
          covered.push_back(id);
          cov += g.edge(id).w;
        }
      }
      auto& list = by_size_[static_cast<std::size_t>(size)];
      // nu_w <= coverage, so a point dominating (cov, cov) makes the matching irrelevant.
      if (dominated(list, cov, cov)) continue;
      const Weight nu = matching_weight_dp(g, covered);
      insert(list, cov, nu);
    }
  }

  /// Same answers, built per connected component and merged. Coverage and
  /// matching weight both add up over disjoint components.
  static Frontier by_components(const BipartiteGraph& g, int max_size = -1) {
    const int n = g.vertex_count();
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    for (const auto& e : g.edges()) parent[static_cast<std::size_t>(find(e.u))] = find(g.left_count() + e.v);

    std::vector<std::vector<Pairs>> parts;
    std::vector<int> roots;
    for (const auto& e : g.edges()) {
      const int r = find(e.u);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    for (int r : roots) {
      std::vector<int> left_id(static_cast<std::size_t>(g.left_count()), -1);
      std::vector<int> right_id(static_cast<std::size_t>(g.right_count()), -1);
      int l = 0;
      int rr = 0;
      std::vector<mepvcb::Edge> edges;
      for (const auto& e : g.edges()) {
        if (find(e.u) != r) continue;
        auto& a = left_id[static_cast<std::size_t>(e.u)];
        auto& b = right_id[static_cast<std::size_t>(e.v)];
        if (a < 0) a = l++;
        if (b < 0) b = rr++;
        edges.push_back({a, b, e.w});
      }
      parts.push_back(Frontier(BipartiteGraph(l, rr, edges), max_size).by_size_);
    }

    Frontier out;
    out.by_size_ = {Pairs{{0, 0}}};
    for (const auto& part : parts) {
      std::vector<Pairs> next(out.by_size_.size() + part.size() - 1);
      for (std::size_t a = 0; a < out.by_size_.size(); ++a) {
        for (std::size_t b = 0; b < part.size(); ++b) {
          for (auto [c1, m1] : out.by_size_[a]) {
            for (auto [c2, m2] : part[b]) insert(next[a + b], c1 + c2, m1 + m2);
          }
        }
      }
      out.by_size_ = std::move(next);
    }
    return out;
  }

  bool yes(int k1, Weight k2, Weight k3) const {
    for (int s = 0; s <= k1 && s < static_cast<int>(by_size_.size()); ++s) {
      for (auto [c, m] : by_size_[static_cast<std::size_t>(s)]) {
        if (c >= k2 && m >= k3) return true;
      }
    }
    return false;
  }

 private:
  using Pairs = std::vector<std::pair<Weight, Weight>>;

  Frontier() = default;

  static bool dominated(const Pairs& list, Weight cov, Weight nu) {
    return std::any_of(list.begin(), list.end(), [&](const auto& p) { return p.first >= cov && p.second >= nu; });
  }

  static void insert(Pairs& list, Weight cov, Weight nu) {
    if (dominated(list, cov, nu)) return;
    list.erase(std::remove_if(list.begin(), list.end(), [&](const auto& p) { return p.first <= cov && p.second <= nu; }),
               list.end());
    list.emplace_back(cov, nu);
  }

  std::vector<Pairs> by_size_;
};

/// All item subsets as bitmasks with their two profit sums.
inline bool bkp_yes(const mepvcb::BkpInstance& b) {
  const int n = static_cast<int>(b.item_count());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = __builtin_popcountll(mask);
    if (b.mode == mepvcb::CardinalityMode::ExactlyB ? size != b.budget : size > b.budget) continue;
    Weight p1 = 0;
    Weight p2 = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        p1 += b.profits1[static_cast<std::size_t>(i)];
        p2 += b.profits2[static_cast<std::size_t>(i)];
      }
    }
    if (p1 >= b.threshold1 && p2 >= b.threshold2) return true;
  }
  return false;
}

inline bool subsetsum_yes(const mepvcb::SubsetSumInstance& s) {
  const int n = static_cast<int>(s.values.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (__builtin_popcountll(mask) != s.size) continue;
    Weight sum = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) sum += s.values[static_cast<std::size_t>(i)];
    }
    if (sum == s.target) return true;
  }
  return false;
}

}  // namespace oracle

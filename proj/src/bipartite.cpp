#include "mepvcb/bipartite.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>

namespace mepvcb {

namespace {

std::vector<int> all_edges(const BipartiteGraph& g) {
  std::vector<int> ids(static_cast<std::size_t>(g.edge_count()));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

void check_subset(const BipartiteGraph& g, std::span<const int> subset) {
  for (int id : subset) {
    if (id < 0 || id >= g.edge_count()) throw PreconditionError("edge id " + std::to_string(id) + " not in graph");
  }
}

Matching make_matching(const BipartiteGraph& g, EdgeSet edges) {
  std::sort(edges.begin(), edges.end());
  Matching m;
  m.total_weight = g.weight_of(edges);
  m.edges = std::move(edges);
  return m;
}

constexpr int kFree = -1;

struct HopcroftKarp {
  const BipartiteGraph& g;
  std::vector<std::vector<std::pair<int, int>>> adj;  // left u -> (right v, edge id)
  std::vector<int> match_left;                        // edge id or kFree
  std::vector<int> match_right;
  std::vector<int> layer;

  HopcroftKarp(const BipartiteGraph& graph, std::span<const int> subset)
      : g(graph),
        adj(static_cast<std::size_t>(graph.left_count())),
        match_left(static_cast<std::size_t>(graph.left_count()), kFree),
        match_right(static_cast<std::size_t>(graph.right_count()), kFree),
        layer(static_cast<std::size_t>(graph.left_count())) {
    for (int id : subset) {
      const Edge& e = g.edge(id);
      adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
    }
  }

  bool bfs() {
    std::deque<int> queue;
    bool found = false;
    for (int u = 0; u < g.left_count(); ++u) {
      if (match_left[static_cast<std::size_t>(u)] == kFree) {
        layer[static_cast<std::size_t>(u)] = 0;
        queue.push_back(u);
      } else {
        layer[static_cast<std::size_t>(u)] = -1;
      }
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (auto [v, id] : adj[static_cast<std::size_t>(u)]) {
        int mate = match_right[static_cast<std::size_t>(v)];
        if (mate == kFree) {
          found = true;
        } else {
          int w = g.edge(mate).u;
          if (layer[static_cast<std::size_t>(w)] < 0) {
            layer[static_cast<std::size_t>(w)] = layer[static_cast<std::size_t>(u)] + 1;
            queue.push_back(w);
          }
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (auto [v, id] : adj[static_cast<std::size_t>(u)]) {
      int mate = match_right[static_cast<std::size_t>(v)];
      bool ok = mate == kFree;
      if (!ok) {
        int w = g.edge(mate).u;
        ok = layer[static_cast<std::size_t>(w)] == layer[static_cast<std::size_t>(u)] + 1 && dfs(w);
      }
      if (ok) {
        match_left[static_cast<std::size_t>(u)] = id;
        match_right[static_cast<std::size_t>(v)] = id;
        return true;
      }
    }
    layer[static_cast<std::size_t>(u)] = -1;
    return false;
  }

  void run() {
    while (bfs()) {
      for (int u = 0; u < g.left_count(); ++u) {
        if (match_left[static_cast<std::size_t>(u)] == kFree) dfs(u);
      }
    }
  }

  EdgeSet edges() const {
    EdgeSet out;
    for (int id : match_left) {
      if (id != kFree) out.push_back(id);
    }
    return out;
  }
};

}  // namespace

bool is_matching(const BipartiteGraph& g, std::span<const int> edge_ids) {
  std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int id : edge_ids) {
    if (id < 0 || id >= g.edge_count()) return false;
    const Edge& e = g.edge(id);
    auto a = static_cast<std::size_t>(e.u);
    auto b = static_cast<std::size_t>(g.left_count() + e.v);
    if (used[a] || used[b]) return false;
    used[a] = used[b] = 1;
  }
  return true;
}

Matching max_cardinality_matching(const BipartiteGraph& g) { return max_cardinality_matching_within(g, all_edges(g)); }

Matching max_cardinality_matching_within(const BipartiteGraph& g, std::span<const int> subset) {
  check_subset(g, subset);
  HopcroftKarp hk(g, subset);
  hk.run();
  return make_matching(g, hk.edges());
}

VertexSet min_vertex_cover(const BipartiteGraph& g) { return min_vertex_cover_within(g, all_edges(g)); }

VertexSet min_vertex_cover_within(const BipartiteGraph& g, std::span<const int> subset) {
  check_subset(g, subset);
  HopcroftKarp hk(g, subset);
  hk.run();

  // Alternating reachability from free left vertices: Z. Cover = (L \ Z) + (R n Z).
  std::vector<char> left_seen(static_cast<std::size_t>(g.left_count()), 0);
  std::vector<char> right_seen(static_cast<std::size_t>(g.right_count()), 0);
  std::deque<int> queue;
  for (int u = 0; u < g.left_count(); ++u) {
    if (hk.match_left[static_cast<std::size_t>(u)] == kFree) {
      left_seen[static_cast<std::size_t>(u)] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (auto [v, id] : hk.adj[static_cast<std::size_t>(u)]) {
      if (id == hk.match_left[static_cast<std::size_t>(u)] || right_seen[static_cast<std::size_t>(v)]) continue;
      right_seen[static_cast<std::size_t>(v)] = 1;
      int mate = hk.match_right[static_cast<std::size_t>(v)];
      if (mate != kFree) {
        int w = g.edge(mate).u;
        if (!left_seen[static_cast<std::size_t>(w)]) {
          left_seen[static_cast<std::size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
  }

  VertexSet cover;
  for (int u = 0; u < g.left_count(); ++u) {
    // Left vertices without subset edges are never needed.
    if (!left_seen[static_cast<std::size_t>(u)] && !hk.adj[static_cast<std::size_t>(u)].empty()) {
      cover.push_back(left_vertex(u));
    }
  }
  for (int v = 0; v < g.right_count(); ++v) {
    if (right_seen[static_cast<std::size_t>(v)]) cover.push_back(right_vertex(v));
  }
  return cover;
}

Matching max_weight_matching(const BipartiteGraph& g) {
  return max_weight_k_matching_within(g, all_edges(g), kUnboundedCardinality);
}

Matching max_weight_matching_within(const BipartiteGraph& g, std::span<const int> subset) {
  return max_weight_k_matching_within(g, subset, kUnboundedCardinality);
}

Matching max_weight_k_matching(const BipartiteGraph& g, int k) {
  return max_weight_k_matching_within(g, all_edges(g), k);
}

Matching max_weight_k_matching_within(const BipartiteGraph& g, std::span<const int> subset, int k) {
  check_subset(g, subset);
  if (k < 0) throw PreconditionError("cardinality bound must be non-negative");

  // Network: source 0, left 1..L, right L+1..L+R, sink L+R+1. Costs are
  // negated weights; only positive-weight edges can improve the objective.
  const int L = g.left_count();
  const int R = g.right_count();
  const int source = 0;
  const int sink = L + R + 1;
  const int nodes = L + R + 2;

  struct Arc {
    int to;
    int rev;
    int cap;
    Weight cost;
    int edge_id;
  };
  std::vector<std::vector<Arc>> net(static_cast<std::size_t>(nodes));
  auto add_arc = [&](int a, int b, Weight cost, int edge_id) {
    net[static_cast<std::size_t>(a)].push_back({b, static_cast<int>(net[static_cast<std::size_t>(b)].size()), 1, cost, edge_id});
    net[static_cast<std::size_t>(b)].push_back({a, static_cast<int>(net[static_cast<std::size_t>(a)].size()) - 1, 0, -cost, -1});
  };
  std::vector<char> left_used(static_cast<std::size_t>(L), 0);
  std::vector<char> right_used(static_cast<std::size_t>(R), 0);
  for (int id : subset) {
    const Edge& e = g.edge(id);
    if (e.w <= 0) continue;
    add_arc(1 + e.u, 1 + L + e.v, -e.w, id);
    left_used[static_cast<std::size_t>(e.u)] = 1;
    right_used[static_cast<std::size_t>(e.v)] = 1;
  }
  for (int u = 0; u < L; ++u) {
    if (left_used[static_cast<std::size_t>(u)]) add_arc(source, 1 + u, 0, -1);
  }
  for (int v = 0; v < R; ++v) {
    if (right_used[static_cast<std::size_t>(v)]) add_arc(1 + L + v, sink, 0, -1);
  }

  constexpr Weight kInf = std::numeric_limits<Weight>::max();
  std::vector<Weight> dist(static_cast<std::size_t>(nodes));
  std::vector<std::pair<int, int>> parent(static_cast<std::size_t>(nodes));
  std::vector<char> queued(static_cast<std::size_t>(nodes));
  for (int step = 0; step < k; ++step) {
    // Shortest path by label-correcting search; the residual network never
    // has negative cycles along successive shortest paths.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(queued.begin(), queued.end(), 0);
    dist[source] = 0;
    std::deque<int> queue{source};
    queued[source] = 1;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      queued[static_cast<std::size_t>(a)] = 0;
      const auto& arcs = net[static_cast<std::size_t>(a)];
      for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
        const Arc& arc = arcs[static_cast<std::size_t>(i)];
        if (arc.cap == 0) continue;
        Weight nd = dist[static_cast<std::size_t>(a)] + arc.cost;
        if (nd < dist[static_cast<std::size_t>(arc.to)]) {
          dist[static_cast<std::size_t>(arc.to)] = nd;
          parent[static_cast<std::size_t>(arc.to)] = {a, i};
          if (!queued[static_cast<std::size_t>(arc.to)]) {
            queued[static_cast<std::size_t>(arc.to)] = 1;
            queue.push_back(arc.to);
          }
        }
      }
    }
    if (dist[sink] == kInf || dist[sink] >= 0) break;
    for (int b = sink; b != source;) {
      auto [a, i] = parent[static_cast<std::size_t>(b)];
      Arc& arc = net[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
      arc.cap -= 1;
      net[static_cast<std::size_t>(b)][static_cast<std::size_t>(arc.rev)].cap += 1;
      b = a;
    }
  }

  EdgeSet chosen;
  for (int u = 0; u < L; ++u) {
    for (const Arc& arc : net[static_cast<std::size_t>(1 + u)]) {
      if (arc.edge_id >= 0 && arc.cap == 0) chosen.push_back(arc.edge_id);
    }
  }
  return make_matching(g, std::move(chosen));
}

EdgeColoring delta_edge_coloring(const BipartiteGraph& g) { return delta_edge_coloring_within(g, all_edges(g)); }

EdgeColoring delta_edge_coloring_within(const BipartiteGraph& g, std::span<const int> subset) {
  check_subset(g, subset);
  const int n = g.vertex_count();
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int id : subset) {
    const Edge& e = g.edge(id);
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(g.left_count() + e.v)];
  }
  const int delta = n == 0 ? 0 : *std::max_element(degree.begin(), degree.end());

  // at[x * delta + c] = edge of color c at flat vertex x, or kFree.
  std::vector<int> at(static_cast<std::size_t>(n) * static_cast<std::size_t>(delta), kFree);
  std::vector<int> color(static_cast<std::size_t>(g.edge_count()), kFree);
  auto slot = [&](int x, int c) -> int& {
    return at[static_cast<std::size_t>(x) * static_cast<std::size_t>(delta) + static_cast<std::size_t>(c)];
  };
  auto free_color = [&](int x) {
    for (int c = 0; c < delta; ++c) {
      if (slot(x, c) == kFree) return c;
    }
    return kFree;
  };
  auto other_end = [&](int id, int x) {
    const Edge& e = g.edge(id);
    return x == e.u ? g.left_count() + e.v : e.u;
  };

  for (int id : subset) {
    const Edge& e = g.edge(id);
    const int x = e.u;
    const int y = g.left_count() + e.v;
    const int a = free_color(x);
    const int b = free_color(y);
    if (slot(y, a) != kFree) {
      // Swap colors a and b along the a/b path leaving y; it cannot reach x
      // in a bipartite graph, so afterwards a is free at both ends.
      std::vector<int> path;
      int cur = y;
      int want = a;
      while (slot(cur, want) != kFree) {
        int pe = slot(cur, want);
        path.push_back(pe);
        cur = other_end(pe, cur);
        want = want == a ? b : a;
      }
      for (int pe : path) {
        const Edge& pedge = g.edge(pe);
        slot(pedge.u, color[static_cast<std::size_t>(pe)]) = kFree;
        slot(g.left_count() + pedge.v, color[static_cast<std::size_t>(pe)]) = kFree;
      }
      for (int pe : path) {
        const Edge& pedge = g.edge(pe);
        int c = color[static_cast<std::size_t>(pe)] == a ? b : a;
        color[static_cast<std::size_t>(pe)] = c;
        slot(pedge.u, c) = pe;
        slot(g.left_count() + pedge.v, c) = pe;
      }
    }
    color[static_cast<std::size_t>(id)] = a;
    slot(x, a) = id;
    slot(y, a) = id;
  }

  EdgeColoring out;
  std::vector<EdgeSet> classes(static_cast<std::size_t>(delta));
  for (int id : subset) classes[static_cast<std::size_t>(color[static_cast<std::size_t>(id)])].push_back(id);
  for (auto& cls : classes) {
    if (!cls.empty()) out.classes.push_back(make_matching(g, std::move(cls)));
  }
  return out;
}

namespace {

struct InducedSearch {
  std::vector<std::uint64_t> closed;  // N[x] as a vertex mask
  std::vector<std::uint64_t> nbr;
  int best = 0;

  void run(std::uint64_t avail, int size) {
    // Drop vertices with no available neighbor.
    std::uint64_t live = 0;
    for (std::uint64_t m = avail; m; m &= m - 1) {
      int x = std::countr_zero(m);
      if (nbr[static_cast<std::size_t>(x)] & avail) live |= std::uint64_t{1} << x;
    }
    best = std::max(best, size);
    if (!live) return;
    if (size + std::popcount(live) / 2 <= best) return;
    int x = std::countr_zero(live);
    for (std::uint64_t m = nbr[static_cast<std::size_t>(x)] & live; m; m &= m - 1) {
      int y = std::countr_zero(m);
      run(live & ~closed[static_cast<std::size_t>(x)] & ~closed[static_cast<std::size_t>(y)], size + 1);
    }
    run(live & ~(std::uint64_t{1} << x), size);
  }
};

}  // namespace

int max_induced_matching(const BipartiteGraph& g, int cap) {
  const int n = g.vertex_count();
  if (n > cap || n > 64) {
    throw CapExceeded("induced matching search limited to " + std::to_string(std::min(cap, 64)) + " vertices, graph has " +
                      std::to_string(n));
  }
  InducedSearch search;
  search.nbr.assign(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) {
    int a = e.u;
    int b = g.left_count() + e.v;
    search.nbr[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
    search.nbr[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
  }
  search.closed.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    search.closed[static_cast<std::size_t>(x)] = search.nbr[static_cast<std::size_t>(x)] | (std::uint64_t{1} << x);
  }
  std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  search.run(all, 0);
  return search.best;
}

}  // namespace mepvcb

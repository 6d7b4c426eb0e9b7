#pragma once

#include <vector>

#include "mepvcb/instance.hpp"

namespace fx {

using namespace mepvcb;

// u - v - t with v on the left: edges (0,0,a), (0,1,b).
inline BipartiteGraph two_path(Weight a, Weight b) { return BipartiteGraph(1, 2, {{0, 0, a}, {0, 1, b}}); }

inline BipartiteGraph complete(int l, int r, Weight w = 1) {
  std::vector<Edge> edges;
  for (int u = 0; u < l; ++u) {
    for (int v = 0; v < r; ++v) edges.push_back({u, v, w});
  }
  return BipartiteGraph(l, r, std::move(edges));
}

inline BipartiteGraph disjoint_edges(const std::vector<Weight>& ws) {
  std::vector<Edge> edges;
  for (int i = 0; i < static_cast<int>(ws.size()); ++i) edges.push_back({i, i, ws[static_cast<std::size_t>(i)]});
  return BipartiteGraph(static_cast<int>(ws.size()), static_cast<int>(ws.size()), std::move(edges));
}

// Path with `m` edges alternating sides, starting at left 0.
inline BipartiteGraph path(int m, Weight w = 1) {
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({(i + 1) / 2, i / 2, w});
  return BipartiteGraph((m + 2) / 2, (m + 1) / 2, std::move(edges));
}

inline MepvcbInstance inst(BipartiteGraph g, int k1, Weight k2, Weight k3) { return {std::move(g), k1, k2, k3}; }

}  // namespace fx

#include "mepvcb/generate.hpp"

#include <algorithm>
#include <numeric>

#include "mepvcb/bipartite.hpp"

namespace mepvcb {

namespace {

Weight draw(Rng& rng, Weight lo, Weight hi) { return std::uniform_int_distribution<Weight>(lo, hi)(rng); }
Weight draw(Rng& rng, WeightRange r) { return draw(rng, r.lo, r.hi); }
int draw_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Threshold between the smallest and the largest sum of `b` profits.
Weight draw_threshold(Rng& rng, std::vector<Weight> profits, int b) {
  std::sort(profits.begin(), profits.end());
  const auto bb = static_cast<std::ptrdiff_t>(b);
  const Weight lo = std::accumulate(profits.begin(), profits.begin() + bb, Weight{0});
  const Weight hi = std::accumulate(profits.end() - bb, profits.end(), Weight{0});
  return draw(rng, lo, hi + 1);
}

}  // namespace

BipartiteGraph random_bipartite(Rng& rng, int left, int right, double density, WeightRange weights) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (int u = 0; u < left; ++u) {
    for (int v = 0; v < right; ++v) {
      if (coin(rng)) edges.push_back({u, v, draw(rng, weights)});
    }
  }
  return BipartiteGraph(left, right, std::move(edges));
}

MepvcbInstance random_thresholds(Rng& rng, BipartiteGraph graph) {
  MepvcbInstance inst;
  const Weight nu_w = max_weight_matching(graph).total_weight;
  inst.k1 = draw_int(rng, 1, std::max(1, graph.vertex_count()));
  inst.k2 = draw(rng, 1, graph.total_weight() + 1);
  inst.k3 = draw(rng, 1, nu_w + 1);
  inst.graph = std::move(graph);
  return inst;
}

BipartiteGraph two_paths_graph(Rng& rng, int n, WeightRange weights) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, 2 * i, draw(rng, weights)});
    edges.push_back({i, 2 * i + 1, draw(rng, weights)});
  }
  return BipartiteGraph(n, 2 * n, std::move(edges));
}

BipartiteGraph random_regular(Rng& rng, int side, int degree, WeightRange weights) {
  std::vector<int> perm(static_cast<std::size_t>(side));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (int u = 0; u < side; ++u) {
    for (int j = 0; j < degree; ++j) {
      edges.push_back({u, perm[static_cast<std::size_t>((u + j) % side)], draw(rng, weights)});
    }
  }
  return BipartiteGraph(side, side, std::move(edges));
}

BipartiteGraph complete_graph(Rng& rng, int left, int right, WeightRange weights) {
  return random_bipartite(rng, left, right, 1.0, weights);
}

BipartiteGraph core_pendant_graph(Rng& rng, int core, int pendants, int isolated_edges, WeightRange weights) {
  std::vector<int> owner;
  for (int c = 0; c < core; ++c) {
    owner.push_back(c);
    owner.push_back(c);
  }
  for (int p = 2 * core; p < pendants; ++p) owner.push_back(draw_int(rng, 0, core - 1));
  std::vector<Edge> edges;
  int right = 0;
  for (int c : owner) edges.push_back({c, right++, draw(rng, weights)});
  int left = core;
  for (int i = 0; i < isolated_edges; ++i) edges.push_back({left++, right++, draw(rng, weights)});
  return BipartiteGraph(left, right, std::move(edges));
}

BkpInstance random_bkp(Rng& rng, int n, BkpShape shape, Weight max_profit) {
  BkpInstance bkp;
  bkp.budget = draw_int(rng, 1, n);
  bkp.mode = shape == BkpShape::Signed ? CardinalityMode::ExactlyB : CardinalityMode::AtMostB;
  std::vector<Weight> diffs;
  for (int i = 0; i < n; ++i) {
    switch (shape) {
      case BkpShape::Signed:
        bkp.profits1.push_back(draw(rng, -max_profit, max_profit));
        bkp.profits2.push_back(draw(rng, -max_profit, max_profit));
        break;
      case BkpShape::Positive:
        bkp.profits1.push_back(draw(rng, 1, max_profit));
        bkp.profits2.push_back(draw(rng, 1, max_profit));
        break;
      case BkpShape::Ordered: {
        const Weight p2 = draw(rng, 1, max_profit);
        bkp.profits2.push_back(p2);
        bkp.profits1.push_back(p2 + draw(rng, 1, p2));
        break;
      }
      case BkpShape::Gap:
        diffs.push_back(draw(rng, 1, max_profit));
        break;
    }
  }
  if (shape == BkpShape::Gap) {
    const Weight spread = std::accumulate(diffs.begin(), diffs.end(), Weight{0});
    for (Weight d : diffs) {
      const Weight p2 = draw(rng, spread + 1, spread + max_profit);
      bkp.profits2.push_back(p2);
      bkp.profits1.push_back(p2 + d);
    }
  }
  bkp.threshold1 = draw_threshold(rng, bkp.profits1, bkp.budget);
  bkp.threshold2 = draw_threshold(rng, bkp.profits2, bkp.budget);
  return bkp;
}

SubsetSumInstance random_subsetsum(Rng& rng, int n, Weight max_abs) {
  SubsetSumInstance ss;
  for (int i = 0; i < n; ++i) ss.values.push_back(draw(rng, -max_abs, max_abs));
  ss.size = draw_int(rng, 1, n);
  // Half the time the target is a real k-subset sum.
  if (std::bernoulli_distribution(0.5)(rng)) {
    std::vector<Weight> shuffled = ss.values;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ss.target = std::accumulate(shuffled.begin(), shuffled.begin() + ss.size, Weight{0});
  } else {
    ss.target = draw(rng, -max_abs * ss.size, max_abs * ss.size);
  }
  return ss;
}

}  // namespace mepvcb

#pragma once

#include <cstdint>
#include <random>

#include "mepvcb/instance.hpp"

namespace mepvcb {

using Rng = std::mt19937_64;

struct WeightRange {
  Weight lo = 1;
  Weight hi = 1;
};

/// Each of the left x right pairs becomes an edge with probability `density`.
BipartiteGraph random_bipartite(Rng& rng, int left, int right, double density, WeightRange weights);

/// Attaches thresholds drawn from k1 in [1, |V|], k2 in [1, w(E) + 1],
/// k3 in [1, nu_w(G) + 1].
MepvcbInstance random_thresholds(Rng& rng, BipartiteGraph graph);

/// n disjoint 2-paths, centers on the left (center i, endpoints 2i, 2i+1).
BipartiteGraph two_paths_graph(Rng& rng, int n, WeightRange weights);

/// A `degree`-regular graph on side + side vertices: the union of `degree`
/// shifted copies of a random perfect matching.
BipartiteGraph random_regular(Rng& rng, int side, int degree, WeightRange weights);

BipartiteGraph complete_graph(Rng& rng, int left, int right, WeightRange weights);

/// Core vertices (left) with pendants on the right, at least two each and
/// `pendants` in total when that is larger, plus isolated edges.
BipartiteGraph core_pendant_graph(Rng& rng, int core, int pendants, int isolated_edges, WeightRange weights);

enum class BkpShape : std::uint8_t {
  Signed,   // profits in [-max, max], |T| = B
  Positive, // profits in [1, max], |T| <= B
  Ordered,  // additionally pr1 - pr2 <= pr2 < pr1
  Gap,      // additionally sum(pr1 - pr2) < min pr2
};

/// Thresholds are drawn between the smallest and largest B-item sums, so
/// both answers occur.
BkpInstance random_bkp(Rng& rng, int n, BkpShape shape, Weight max_profit);

SubsetSumInstance random_subsetsum(Rng& rng, int n, Weight max_abs);

}  // namespace mepvcb

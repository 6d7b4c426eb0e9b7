#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mepvcb/instance.hpp"

namespace mepvcb {

struct Matching {
  EdgeSet edges;
  Weight total_weight = 0;
};

/// Partition of the edge set into matchings.
struct EdgeColoring {
  std::vector<Matching> classes;
};

// Hopcroft-Karp.
Matching max_cardinality_matching(const BipartiteGraph& g);
Matching max_cardinality_matching_within(const BipartiteGraph& g, std::span<const int> subset);

/// Minimum vertex cover extracted from a maximum matching (König).
VertexSet min_vertex_cover(const BipartiteGraph& g);
VertexSet min_vertex_cover_within(const BipartiteGraph& g, std::span<const int> subset);

Matching max_weight_matching(const BipartiteGraph& g);

/// Optimum over matchings using only edges of `subset`; throws
/// PreconditionError for ids that are not edges of `g`.
Matching max_weight_matching_within(const BipartiteGraph& g, std::span<const int> subset);

inline constexpr int kUnboundedCardinality = std::numeric_limits<int>::max();

/// Maximum weight over matchings with at most `k` edges.
///
/// Successive shortest augmenting paths on the assignment network: after j
/// augmentations the flow is a maximum weight j-matching, and gains are
/// non-increasing in j, so the loop stops at k or at the first non-positive gain.
Matching max_weight_k_matching(const BipartiteGraph& g, int k);
Matching max_weight_k_matching_within(const BipartiteGraph& g, std::span<const int> subset, int k);

/// Proper edge coloring with max_degree() classes, by alternating-path
/// recoloring.
EdgeColoring delta_edge_coloring(const BipartiteGraph& g);
EdgeColoring delta_edge_coloring_within(const BipartiteGraph& g, std::span<const int> subset);

/// Exact size of a largest induced matching. Throws CapExceeded when
/// vertex_count() > cap.
int max_induced_matching(const BipartiteGraph& g, int cap = kDefaultInducedMatchingCap);

bool is_matching(const BipartiteGraph& g, std::span<const int> edge_ids);

}  // namespace mepvcb

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mepvcb/instance.hpp"

namespace mepvcb {

/// Named constants of a transformation (scale C, shifts Q_i, P0, T, the
/// mapped budgets and thresholds), in insertion order.
using ParameterMap = std::vector<std::pair<std::string, Weight>>;

std::optional<Weight> lookup(const ParameterMap& params, std::string_view key);

template <class Instance>
struct Reduced {
  Instance instance;
  ParameterMap params;
};

// ---- knapsack chain --------------------------------------------------------

/// pr1 = x, pr2 = -x, B = k, P = (s, -s), |T| = B.
Reduced<BkpInstance> subsetsum_to_bkp_signed(const SubsetSumInstance& ss);

/// Shifts every profit by Q_i = 1 + sum |pr_i| and every threshold by B * Q_i,
/// turning |T| = B into |T| <= B with positive profits. A threshold
/// P_i >= Q_i yields a canonical No instance; P_i <= -Q_i is clamped to
/// 1 - Q_i, which is just as vacuous.
Reduced<BkpInstance> bkp_shift_positive(const BkpInstance& bkp);

/// pr1 - pr2 <= pr2 < pr1 for every item: scale pr1 and P1 by
/// Q = 1 + max ceil(pr2/pr1), then add P0 = max(1, max(pr1 - 2 pr2)) to both
/// profits (thresholds += B * P0). Requires positive profits.
Reduced<BkpInstance> bkp_enforce_ordering(const BkpInstance& bkp);

/// Adds T + 1, T = sum(pr1 - pr2), to both profits (thresholds += B(T + 1))
/// so that sum(pr1 - pr2) < min pr2. Requires the ordering condition.
Reduced<BkpInstance> bkp_enforce_gap(const BkpInstance& bkp);

bool satisfies_ordering(const BkpInstance& bkp);
bool satisfies_gap(const BkpInstance& bkp);

/// One 2-path per item: center left i, light endpoint right 2i with weight
/// pr1 - pr2, heavy endpoint right 2i+1 with weight pr2. k1 = B, k2 = P1,
/// k3 = P2 (thresholds <= 0 become 1, which every nonempty choice meets).
Reduced<MepvcbInstance> bkp_to_mepvcb_2paths(const BkpInstance& bkp);

/// Left vertices of the centers chosen for an item subset of a 2-path image.
VertexSet two_path_centers(const std::vector<int>& items);

// ---- graph embeddings ------------------------------------------------------

/// Embeds into a Delta(G)-regular bipartite graph. Old weights are scaled by
/// C = |V|^2, new edges have weight 1, k2 and k3 are scaled by C.
Reduced<MepvcbInstance> embed_regular(const MepvcbInstance& inst);

/// Embeds into K_{t,t}, t = max(|X|, |Y|), with the same scaling.
Reduced<MepvcbInstance> embed_complete(const MepvcbInstance& inst);

/// Embeds into K_{|X|,|Y|} on the original bipartition.
Reduced<MepvcbInstance> embed_complete_bipartition(const MepvcbInstance& inst);

/// Adds z to the smaller side Y and |V| new vertices to X, joins z to all of X.
/// |V(H)| - Delta(H) = min(|X|, |Y|) + 1.
Reduced<MepvcbInstance> add_apex_for_delta(const MepvcbInstance& inst);

struct TwoPath {
  Vertex center;
  Vertex light_end;
  Vertex heavy_end;
  int light_edge = 0;
  int heavy_edge = 0;
};

/// Splits a graph into vertex-disjoint 2-paths, or nullopt if it is not one
/// (isolated vertices are not allowed). Paths are ordered by center.
std::optional<std::vector<TwoPath>> two_path_components(const BipartiteGraph& g);

/// Merges the light-edge endpoint of every 2-path into one vertex z, giving a
/// tree with |V| - 2 nu_ind = 1. Requires sum of light weights < min heavy
/// weight and all centers on one side.
Reduced<MepvcbInstance> identify_into_tree(const MepvcbInstance& inst);

enum class LinkShape { Path, Cycle };

/// Chains 2-paths end to end with weight-1 connectors (old weights scaled by
/// C = |V|^2). Two same-side endpoints are joined through a new vertex on the
/// other side, so every cycle produced is even.
Reduced<MepvcbInstance> link_into_path_or_cycle(const MepvcbInstance& inst, LinkShape shape);

/// Swaps the two sides.
BipartiteGraph mirrored(const BipartiteGraph& g);

}  // namespace mepvcb

#pragma once

#include <functional>
#include <string>
#include <variant>

#include "mepvcb/instance.hpp"

namespace mepvcb {

/// Decides "is there a set of at most k1 vertices covering weight >= k2".
using EpvcbSolver = std::function<Verdict(const BipartiteGraph&, int k1, Weight k2)>;

struct Decided {
  Verdict verdict;
};

struct Rewritten {
  MepvcbInstance instance;
  std::string rule;
};

/// The instance is equivalent to the plain edge-weighted partial cover
/// question on (graph, k1, k2).
struct ReducedToEpvcb {
  BipartiteGraph graph;
  int k1 = 1;
  Weight k2 = 1;
};

struct Unchanged {};

using PreprocessOutcome = std::variant<Unchanged, Decided, Rewritten, ReducedToEpvcb>;

// Rule labels, also used as Verdict::method.
inline constexpr const char* kRuleBudgetExceedsCover = "budget-exceeds-cover";
inline constexpr const char* kRuleMatchingDominates = "matching-dominates";
inline constexpr const char* kRuleRatioReducesToEpvcb = "ratio-reduces-to-epvcb";
inline constexpr const char* kRuleSmallK3 = "small-k3";
inline constexpr const char* kRuleComplementBudget = "complement-budget";
inline constexpr const char* kRuleOneRegular = "one-regular";

/// k1 >= tau(G): any minimum cover covers everything, so only w(E) >= k2 and
/// nu_w(G) >= k3 matter.
PreprocessOutcome rule_budget_exceeds_cover(const MepvcbInstance& inst);

/// (G, k1, k2, k3) -> (G, k1, k3, k3) when k2 <= k3. Returns Rewritten, or
/// Unchanged when k2 > k3.
PreprocessOutcome rewrite_matching_dominates(const MepvcbInstance& inst);

/// k2 <= k3: Yes iff a matching with at most k1 edges weighs >= k3.
PreprocessOutcome rule_matching_dominates(const MepvcbInstance& inst);

/// k2 >= k3 * Delta(G): the matching demand follows from coverage by
/// averaging over a Delta-edge-coloring of the covered edges.
PreprocessOutcome rule_ratio_reduces_to_epvcb(const MepvcbInstance& inst);

/// Turns a partial-cover solution into a certificate whose matching is the
/// heaviest color class of the covered subgraph.
Certificate certificate_from_color_classes(const BipartiteGraph& g, const VertexSet& chosen);

/// k3 <= k1 (requires all weights >= 1). Grows the covered edge set of a
/// smallest EPVCB solution until its cover number reaches k3. When
/// tau(G) < k3 that cannot happen, and k1 >= tau(G) settles the instance.
PreprocessOutcome rule_small_k3(const MepvcbInstance& inst, const EpvcbSolver& epvcb);

/// Always decides: by the cover-number argument when k1 >= |V|/2, by
/// exhaustive search over at most 4^(|V|-k1) subsets otherwise.
PreprocessOutcome rule_complement_budget(const MepvcbInstance& inst);

/// Graph without isolated vertices is a perfect matching: take the k1
/// heaviest edges.
PreprocessOutcome rule_one_regular(const MepvcbInstance& inst);

struct Normalized {
  MepvcbInstance instance;
};

using NormalizeOutcome = std::variant<Decided, Normalized>;

/// Applies budget-exceeds-cover, matching-dominates, ratio-reduces-to-epvcb
/// and small-k3 in that order to the instance with weight-0 edges removed.
/// A surviving instance satisfies k1 < k3 < k2 < k3 * Delta(G).
/// Certificates of Decided verdicts refer to the input graph.
NormalizeOutcome normalize(const MepvcbInstance& inst, const EpvcbSolver& epvcb);

}  // namespace mepvcb

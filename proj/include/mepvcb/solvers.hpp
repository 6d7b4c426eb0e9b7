#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mepvcb/instance.hpp"

namespace mepvcb {

enum class Strategy : std::uint8_t { Auto, OracleOnly, FptVge2, ComplementBudget };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct SolveConfig {
  int oracle_vertex_cap = 20;
  Strategy strategy = Strategy::Auto;
  std::uint64_t deterministic_seed = 0;  // reserved; all current orderings are fixed
  int vge2_threshold = 20;               // Auto uses the |V>=2| algorithm up to this core size
  int complement_threshold = 8;          // Auto uses complement-budget when |V| - k1 <= this
};

inline constexpr int kSubsetOracleCap = 24;

// Method labels.
inline constexpr const char* kMethodOracle = "oracle";
inline constexpr const char* kMethodEpvcb = "epvcb-branch-and-bound";
inline constexpr const char* kMethodFptVge2 = "fpt-vge2";
inline constexpr const char* kMethodBranchAndBound = "branch-and-bound";

/// Ground truth: every vertex subset of size <= k1 in order of size, then by
/// flat-id bitmask. Throws CapExceeded when |V| > cap.
Verdict brute_force_mepvcb(const MepvcbInstance& inst, int cap = 20);

/// Exact edge-weighted partial vertex cover: is there |V0| <= k1 with
/// w(E(V0)) >= k2? Branch and bound; the bound adds the k1 - depth largest
/// residual vertex coverages, which over-estimates any completion because
/// coverage is submodular.
Verdict solve_epvcb(const BipartiteGraph& g, int k1, Weight k2);

struct FptVge2Stats {
  int core_size = 0;            // |V>=2|
  int isolated_edges = 0;
  std::uint64_t subsets_tried = 0;
};

/// Exact solver whose exponential part is in |V>=2|: enumerate core subsets
/// of size <= k1, then spend the rest of the budget on the heaviest isolated
/// edges (ties to the smaller edge id). Pendant vertices are never chosen.
Verdict solve_fpt_vge2(const MepvcbInstance& inst, FptVge2Stats* stats = nullptr);

/// General exact search over vertex subsets with coverage and matching bounds.
Verdict branch_and_bound_mepvcb(const MepvcbInstance& inst);

/// normalize, then dispatch on the strategy.
Verdict solve(const MepvcbInstance& inst, const SolveConfig& config = {});

using ItemSubset = std::vector<int>;

/// Exhaustive BKP decision respecting the cardinality mode.
std::optional<ItemSubset> brute_force_bkp(const BkpInstance& bkp, int cap = kSubsetOracleCap);

/// Exhaustive sized subset sum: exactly `size` values summing to `target`.
std::optional<ItemSubset> brute_force_subsetsum(const SubsetSumInstance& ss, int cap = kSubsetOracleCap);

}  // namespace mepvcb

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mepvcb/instance.hpp"
#include "mepvcb/reductions.hpp"
#include "mepvcb/solvers.hpp"

namespace mepvcb {

using AnyInstance = std::variant<SubsetSumInstance, BkpInstance, MepvcbInstance>;

std::string kind_of(const AnyInstance& inst);
std::string serialize(const AnyInstance& inst);
/// Dispatches on the document's "kind" field.
AnyInstance parse_any(std::string_view text);

/// k for subset sum, B for knapsack, k1 for M-EPVCB.
Weight budget_of(const AnyInstance& inst);

enum class Equivalence : std::uint8_t { Equivalent, Mismatch, Unverified };
std::string_view to_string(Equivalence e);

struct ReductionReport {
  std::string reduction;
  std::string source_digest;
  std::string target_digest;
  ParameterMap params;
  Weight source_parameter = 0;  // budget before and after, for the growth check
  Weight target_parameter = 0;
  Equivalence status = Equivalence::Unverified;
  std::optional<bool> source_yes;
  std::optional<bool> target_yes;
  std::string witness;  // source document of a mismatch
  std::string detail;
};

struct ReductionInfo {
  std::string name;
  std::string source_kind;
  std::string target_kind;
  std::string mutation;  // what --mutate breaks
};

/// Every reduction, then the composed chain "subsetsum-to-2paths".
const std::vector<ReductionInfo>& reduction_catalog();
const ReductionInfo* find_reduction(std::string_view name);

/// Runs a reduction by name. Throws PreconditionError for an unknown name or a
/// source of the wrong kind. With `mutate`, applies the catalogued defect.
Reduced<AnyInstance> apply_reduction(std::string_view name, const AnyInstance& source, bool mutate = false);

struct OracleConfig {
  int vertex_cap = 20;
  int item_cap = kSubsetOracleCap;
  /// Beyond vertex_cap, decide M-EPVCB targets with solve() instead of
  /// reporting them Unverified.
  bool structured_fallback = false;
};

/// Exhaustive verdict, or nullopt when the instance is beyond the caps.
std::optional<bool> oracle_verdict(const AnyInstance& inst, const OracleConfig& config);

ReductionReport verify_instance(std::string_view name, const AnyInstance& source, const OracleConfig& config,
                                bool mutate = false);

struct VerifySummary {
  std::string reduction;
  std::vector<ReductionReport> reports;  // corpus order
  int equivalent = 0;
  int mismatches = 0;
  int unverified = 0;

  const ReductionReport* first_mismatch() const;
};

/// Verifies every corpus item, fanning out to `workers` threads.
VerifySummary verify_reduction(std::string_view name, const std::vector<AnyInstance>& corpus,
                               const OracleConfig& config, bool mutate = false, int workers = 1);

/// Seeded source corpus sized to stay within the oracle caps after the
/// transformation.
std::vector<AnyInstance> default_corpus(std::string_view name, std::uint64_t seed, int count = 300);

}  // namespace mepvcb

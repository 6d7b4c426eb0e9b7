#include "mepvcb/solvers.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

#include "mepvcb/bipartite.hpp"
#include "mepvcb/preprocess.hpp"

namespace mepvcb {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::OracleOnly: return "oracle";
    case Strategy::FptVge2: return "fpt-vge2";
    case Strategy::ComplementBudget: return "complement-budget";
  }
  return "auto";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::Auto, Strategy::OracleOnly, Strategy::FptVge2, Strategy::ComplementBudget}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

Verdict yes(Certificate cert, std::string method) { return Verdict{std::move(cert), std::move(method)}; }
Verdict no(std::string method) { return Verdict{std::nullopt, std::move(method)}; }

VertexSet vertices_of_mask(const BipartiteGraph& g, std::uint64_t mask) {
  VertexSet out;
  for (std::uint64_t m = mask; m; m &= m - 1) out.push_back(g.vertex_at(std::countr_zero(m)));
  return out;
}

// Next integer with the same popcount (Gosper).
std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

/// Calls visit(mask) for every subset of an n-element universe with exactly
/// `size` members, in increasing mask order, until visit returns true.
bool for_each_subset(int n, int size, const std::function<bool(std::uint64_t)>& visit) {
  if (size > n) return false;
  if (size == 0) return visit(0);
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = (std::uint64_t{1} << size) - 1; mask < limit; mask = next_same_popcount(mask)) {
    if (visit(mask)) return true;
  }
  return false;
}

// Branch and bound over vertex subsets. With `need_matching` false this is
// the EPVCB search; otherwise the covered edges must also hold a matching of
// weight >= k3.
class CoverSearch {
 public:
  CoverSearch(const BipartiteGraph& g, int budget, Weight k2, Weight k3, bool need_matching)
      : g_(g), budget_(budget), k2_(k2), k3_(k3), need_matching_(need_matching) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    state_.assign(n, kOpen);
    residual_.assign(n, 0);
    cover_count_.assign(static_cast<std::size_t>(g.edge_count()), 0);
    for (int f = 0; f < g.vertex_count(); ++f) {
      for (int id : g.incident(g.vertex_at(f))) residual_[static_cast<std::size_t>(f)] += g.edge(id).w;
      if (g.degree(g.vertex_at(f)) == 0) state_[static_cast<std::size_t>(f)] = kOut;
    }
  }

  std::optional<VertexSet> run() {
    if (k2_ <= 0 && (!need_matching_ || k3_ <= 0)) return VertexSet{};
    if (dfs()) return chosen_;
    return std::nullopt;
  }

 private:
  static constexpr char kOpen = 0;
  static constexpr char kIn = 1;
  static constexpr char kOut = 2;

  int other(int id, int f) const {
    const Edge& e = g_.edge(id);
    return f == e.u ? g_.left_count() + e.v : e.u;
  }

  void include(int f) {
    state_[static_cast<std::size_t>(f)] = kIn;
    chosen_.push_back(g_.vertex_at(f));
    for (int id : g_.incident(g_.vertex_at(f))) {
      if (cover_count_[static_cast<std::size_t>(id)]++ == 0) {
        covered_ += g_.edge(id).w;
        residual_[static_cast<std::size_t>(other(id, f))] -= g_.edge(id).w;
      }
    }
  }

  void undo_include(int f) {
    for (int id : g_.incident(g_.vertex_at(f))) {
      if (--cover_count_[static_cast<std::size_t>(id)] == 0) {
        covered_ -= g_.edge(id).w;
        residual_[static_cast<std::size_t>(other(id, f))] += g_.edge(id).w;
      }
    }
    chosen_.pop_back();
    state_[static_cast<std::size_t>(f)] = kOpen;
  }

  EdgeSet covered_set() const {
    EdgeSet out;
    for (int id = 0; id < g_.edge_count(); ++id) {
      if (cover_count_[static_cast<std::size_t>(id)] > 0) out.push_back(id);
    }
    return out;
  }

  bool feasible_now() const {
    if (covered_ < k2_) return false;
    if (!need_matching_) return true;
    return max_weight_matching_within(g_, covered_set()).total_weight >= k3_;
  }

  bool dfs() {
    if (feasible_now()) return true;
    const int slots = budget_ - static_cast<int>(chosen_.size());
    if (slots <= 0) return false;

    std::vector<Weight> open;
    int best = -1;
    for (int f = 0; f < g_.vertex_count(); ++f) {
      if (state_[static_cast<std::size_t>(f)] != kOpen) continue;
      const Weight r = residual_[static_cast<std::size_t>(f)];
      if (r == 0) continue;
      open.push_back(r);
      if (best < 0 || r > residual_[static_cast<std::size_t>(best)]) best = f;
    }
    if (best < 0) return false;

    const auto take = std::min(open.size(), static_cast<std::size_t>(slots));
    std::partial_sort(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(take), open.end(), std::greater<>());
    Weight bound = covered_;
    for (std::size_t i = 0; i < take; ++i) bound += open[i];
    if (bound < k2_) return false;

    if (need_matching_) {
      // Final covered edges lie among edges touching chosen or open vertices,
      // and a matching inside them uses at most `budget_` edges.
      EdgeSet candidates;
      for (int id = 0; id < g_.edge_count(); ++id) {
        const Edge& e = g_.edge(id);
        if (state_[static_cast<std::size_t>(e.u)] != kOut ||
            state_[static_cast<std::size_t>(g_.left_count() + e.v)] != kOut) {
          candidates.push_back(id);
        }
      }
      if (max_weight_k_matching_within(g_, candidates, budget_).total_weight < k3_) return false;
    }

    include(best);
    if (dfs()) return true;
    undo_include(best);

    state_[static_cast<std::size_t>(best)] = kOut;
    const bool found = dfs();
    if (!found) state_[static_cast<std::size_t>(best)] = kOpen;
    return found;
  }

  const BipartiteGraph& g_;
  int budget_;
  Weight k2_;
  Weight k3_;
  bool need_matching_;
  std::vector<char> state_;
  std::vector<Weight> residual_;
  std::vector<int> cover_count_;
  VertexSet chosen_;
  Weight covered_ = 0;
};

}  // namespace

Verdict brute_force_mepvcb(const MepvcbInstance& inst, int cap) {
  const BipartiteGraph& g = inst.graph;
  const int n = g.vertex_count();
  if (n > cap || n > 62) {
    throw CapExceeded("oracle limited to " + std::to_string(std::min(cap, 62)) + " vertices, instance has " +
                      std::to_string(n));
  }
  std::vector<std::uint64_t> edge_mask;
  for (const Edge& e : g.edges()) {
    edge_mask.push_back((std::uint64_t{1} << e.u) | (std::uint64_t{1} << (g.left_count() + e.v)));
  }
  std::optional<Certificate> found;
  for (int size = 0; size <= std::min(inst.k1, n) && !found; ++size) {
    for_each_subset(n, size, [&](std::uint64_t mask) {
      Weight covered = 0;
      EdgeSet ids;
      for (int id = 0; id < g.edge_count(); ++id) {
        if (edge_mask[static_cast<std::size_t>(id)] & mask) {
          covered += g.edge(id).w;
          ids.push_back(id);
        }
      }
      if (covered < inst.k2) return false;
      if (max_weight_matching_within(g, ids).total_weight < inst.k3) return false;
      found = certify(g, vertices_of_mask(g, mask));
      return true;
    });
  }
  if (found) return yes(std::move(*found), kMethodOracle);
  return no(kMethodOracle);
}

Verdict solve_epvcb(const BipartiteGraph& g, int k1, Weight k2) {
  CoverSearch search(g, k1, k2, 0, false);
  if (auto chosen = search.run()) return yes(certify(g, std::move(*chosen)), kMethodEpvcb);
  return no(kMethodEpvcb);
}

Verdict branch_and_bound_mepvcb(const MepvcbInstance& inst) {
  CoverSearch search(inst.graph, inst.k1, inst.k2, inst.k3, true);
  if (auto chosen = search.run()) return yes(certify(inst.graph, std::move(*chosen)), kMethodBranchAndBound);
  return no(kMethodBranchAndBound);
}

Verdict solve_fpt_vge2(const MepvcbInstance& inst, FptVge2Stats* stats) {
  const BipartiteGraph& g = inst.graph;
  std::vector<int> core;
  for (int f = 0; f < g.vertex_count(); ++f) {
    if (g.degree(g.vertex_at(f)) >= 2) core.push_back(f);
  }
  std::vector<int> isolated;
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (g.degree(left_vertex(e.u)) == 1 && g.degree(right_vertex(e.v)) == 1) isolated.push_back(id);
  }
  std::stable_sort(isolated.begin(), isolated.end(), [&](int a, int b) { return g.edge(a).w > g.edge(b).w; });
  std::vector<Weight> prefix{0};
  for (int id : isolated) prefix.push_back(checked_add(prefix.back(), g.edge(id).w));

  const int c = static_cast<int>(core.size());
  if (c > 62) throw CapExceeded("fpt-vge2 limited to 62 core vertices");
  FptVge2Stats local;
  local.core_size = c;
  local.isolated_edges = static_cast<int>(isolated.size());

  std::optional<VertexSet> found;
  for (int size = 0; size <= std::min(inst.k1, c) && !found; ++size) {
    const int fill = std::min(inst.k1 - size, static_cast<int>(isolated.size()));
    const Weight extra = prefix[static_cast<std::size_t>(fill)];
    for_each_subset(c, size, [&](std::uint64_t mask) {
      ++local.subsets_tried;
      VertexSet chosen;
      for (std::uint64_t m = mask; m; m &= m - 1) chosen.push_back(g.vertex_at(core[static_cast<std::size_t>(std::countr_zero(m))]));
      // Isolated edges are disjoint from everything the core covers, so both
      // objectives split into a core part plus the chosen isolated weight.
      EdgeSet core_covered = covered_edges(g, chosen);
      if (checked_add(g.weight_of(core_covered), extra) < inst.k2) return false;
      if (checked_add(max_weight_matching_within(g, core_covered).total_weight, extra) < inst.k3) return false;
      for (int i = 0; i < fill; ++i) chosen.push_back(left_vertex(g.edge(isolated[static_cast<std::size_t>(i)]).u));
      found = std::move(chosen);
      return true;
    });
  }
  if (stats) *stats = local;
  if (found) return yes(certify(g, std::move(*found)), kMethodFptVge2);
  return no(kMethodFptVge2);
}

Verdict solve(const MepvcbInstance& inst, const SolveConfig& config) {
  validate(inst);
  if (config.strategy == Strategy::OracleOnly) return brute_force_mepvcb(inst, config.oracle_vertex_cap);

  NormalizeOutcome pre = normalize(inst, solve_epvcb);
  if (auto* decided = std::get_if<Decided>(&pre)) return std::move(decided->verdict);
  const MepvcbInstance& work = std::get<Normalized>(pre).instance;
  const BipartiteGraph& g = work.graph;

  Strategy strategy = config.strategy;
  if (strategy == Strategy::Auto) {
    int core = 0;
    for (int f = 0; f < g.vertex_count(); ++f) core += g.degree(g.vertex_at(f)) >= 2 ? 1 : 0;
    if (core <= config.vge2_threshold) {
      strategy = Strategy::FptVge2;
    } else if (g.vertex_count() - work.k1 <= config.complement_threshold) {
      strategy = Strategy::ComplementBudget;
    }
  }

  Verdict v;
  switch (strategy) {
    case Strategy::FptVge2:
      v = solve_fpt_vge2(work);
      break;
    case Strategy::ComplementBudget:
      v = std::get<Decided>(rule_complement_budget(work)).verdict;
      break;
    default:
      v = branch_and_bound_mepvcb(work);
      break;
  }
  if (v.certificate) v.certificate = rebase_certificate(g, inst.graph, *v.certificate);
  return v;
}

std::optional<ItemSubset> brute_force_bkp(const BkpInstance& bkp, int cap) {
  validate(bkp);
  const int n = static_cast<int>(bkp.item_count());
  if (n > cap) throw CapExceeded("BKP oracle limited to " + std::to_string(cap) + " items");
  const int lo = bkp.mode == CardinalityMode::ExactlyB ? bkp.budget : 0;
  std::optional<ItemSubset> found;
  for (int size = lo; size <= bkp.budget && !found; ++size) {
    for_each_subset(n, size, [&](std::uint64_t mask) {
      Weight p1 = 0;
      Weight p2 = 0;
      for (std::uint64_t m = mask; m; m &= m - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(m));
        p1 = checked_add(p1, bkp.profits1[i]);
        p2 = checked_add(p2, bkp.profits2[i]);
      }
      if (p1 < bkp.threshold1 || p2 < bkp.threshold2) return false;
      ItemSubset items;
      for (std::uint64_t m = mask; m; m &= m - 1) items.push_back(std::countr_zero(m));
      found = std::move(items);
      return true;
    });
  }
  return found;
}

std::optional<ItemSubset> brute_force_subsetsum(const SubsetSumInstance& ss, int cap) {
  validate(ss);
  const int n = static_cast<int>(ss.values.size());
  if (n > cap) throw CapExceeded("subset-sum oracle limited to " + std::to_string(cap) + " values");
  std::optional<ItemSubset> found;
  for_each_subset(n, ss.size, [&](std::uint64_t mask) {
    Weight sum = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) sum = checked_add(sum, ss.values[static_cast<std::size_t>(std::countr_zero(m))]);
    if (sum != ss.target) return false;
    ItemSubset items;
    for (std::uint64_t m = mask; m; m &= m - 1) items.push_back(std::countr_zero(m));
    found = std::move(items);
    return true;
  });
  return found;
}

}  // namespace mepvcb

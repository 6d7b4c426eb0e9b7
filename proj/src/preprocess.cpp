#include "mepvcb/preprocess.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "mepvcb/bipartite.hpp"

namespace mepvcb {

namespace {

Verdict yes(Certificate cert, std::string method) { return Verdict{std::move(cert), std::move(method)}; }
Verdict no(std::string method) { return Verdict{std::nullopt, std::move(method)}; }

void ensure(bool condition, const char* what) {
  if (!condition) throw std::logic_error(what);
}

}  // namespace

PreprocessOutcome rule_budget_exceeds_cover(const MepvcbInstance& inst) {
  const BipartiteGraph& g = inst.graph;
  VertexSet cover = min_vertex_cover(g);
  if (inst.k1 < static_cast<int>(cover.size())) return Unchanged{};
  Certificate cert = certify(g, std::move(cover));
  if (cert.covered_weight >= inst.k2 && cert.matching_weight >= inst.k3) {
    return Decided{yes(std::move(cert), kRuleBudgetExceedsCover)};
  }
  return Decided{no(kRuleBudgetExceedsCover)};
}

PreprocessOutcome rewrite_matching_dominates(const MepvcbInstance& inst) {
  if (inst.k2 > inst.k3) return Unchanged{};
  MepvcbInstance out = inst;
  out.k2 = inst.k3;
  return Rewritten{std::move(out), kRuleMatchingDominates};
}

PreprocessOutcome rule_matching_dominates(const MepvcbInstance& inst) {
  if (inst.k2 > inst.k3) return Unchanged{};
  const BipartiteGraph& g = inst.graph;
  Matching m = max_weight_k_matching(g, inst.k1);
  if (m.total_weight < inst.k3) return Decided{no(kRuleMatchingDominates)};
  VertexSet chosen;
  for (int id : m.edges) chosen.push_back(left_vertex(g.edge(id).u));
  Certificate cert = certify(g, std::move(chosen));
  ensure(cert.matching_weight >= m.total_weight, "matching-dominates: certificate lost matching weight");
  return Decided{yes(std::move(cert), kRuleMatchingDominates)};
}

PreprocessOutcome rule_ratio_reduces_to_epvcb(const MepvcbInstance& inst) {
  const Weight bound = checked_mul(inst.k3, inst.graph.max_degree());
  if (inst.k2 < bound) return Unchanged{};
  return ReducedToEpvcb{inst.graph, inst.k1, inst.k2};
}

Certificate certificate_from_color_classes(const BipartiteGraph& g, const VertexSet& chosen) {
  Certificate cert;
  cert.chosen = chosen;
  std::sort(cert.chosen.begin(), cert.chosen.end());
  cert.covered = covered_edges(g, cert.chosen);
  cert.covered_weight = g.weight_of(cert.covered);
  EdgeColoring coloring = delta_edge_coloring_within(g, cert.covered);
  const Matching* heaviest = nullptr;
  for (const Matching& cls : coloring.classes) {
    if (!heaviest || cls.total_weight > heaviest->total_weight) heaviest = &cls;
  }
  if (heaviest) {
    cert.matching = heaviest->edges;
    cert.matching_weight = heaviest->total_weight;
  }
  return cert;
}

PreprocessOutcome rule_small_k3(const MepvcbInstance& inst, const EpvcbSolver& epvcb) {
  if (inst.k3 > inst.k1) return Unchanged{};
  const BipartiteGraph& g = inst.graph;
  if (g.has_zero_weight_edge()) throw PreconditionError("small-k3 needs weights >= 1");
  const int tau_g = static_cast<int>(min_vertex_cover(g).size());
  if (tau_g < inst.k3) {
    // H can never reach k3, but then k1 >= k3 > tau(G).
    PreprocessOutcome out = rule_budget_exceeds_cover(inst);
    std::get<Decided>(out).verdict.method = std::string(kRuleSmallK3) + "/" + kRuleBudgetExceedsCover;
    return out;
  }

  std::optional<Verdict> found;
  int budget = 0;
  for (int r = 1; r <= inst.k1 && !found; ++r) {
    Verdict v = epvcb(g, r, inst.k2);
    if (v.yes()) {
      found = std::move(v);
      budget = r;
    }
  }
  if (!found) return Decided{no(kRuleSmallK3)};

  const VertexSet& base = found->certificate->chosen;
  EdgeSet h = covered_edges(g, base);
  int tau_h = static_cast<int>(min_vertex_cover_within(g, h).size());
  // Minimality of the budget pins the cover number of the covered subgraph.
  ensure(tau_h == budget, "small-k3: tau(H) differs from the smallest feasible budget");

  VertexSet chosen = base;
  if (tau_h < inst.k3) {
    int steps = 0;
    for (int id = 0; id < g.edge_count() && tau_h < inst.k3; ++id) {
      if (std::binary_search(h.begin(), h.end(), id)) continue;
      h.insert(std::upper_bound(h.begin(), h.end(), id), id);
      const int next = static_cast<int>(min_vertex_cover_within(g, h).size());
      ensure(next == tau_h || next == tau_h + 1, "small-k3: tau(H) jumped by more than one");
      tau_h = next;
      ++steps;
    }
    ensure(tau_h == inst.k3 && steps <= g.edge_count(), "small-k3: growth loop did not reach k3");
    chosen = min_vertex_cover_within(g, h);
  }
  Certificate cert = certify(g, std::move(chosen));
  ensure(check_certificate(inst, cert).valid, "small-k3: produced an invalid certificate");
  return Decided{yes(std::move(cert), kRuleSmallK3)};
}

PreprocessOutcome rule_complement_budget(const MepvcbInstance& inst) {
  const BipartiteGraph& g = inst.graph;
  const int n = g.vertex_count();
  if (2 * inst.k1 >= n) {
    PreprocessOutcome out = rule_budget_exceeds_cover(inst);
    auto* decided = std::get_if<Decided>(&out);
    ensure(decided != nullptr, "complement-budget: tau(G) > |V|/2 in a bipartite graph");
    decided->verdict.method = std::string(kRuleComplementBudget) + "/" + kRuleBudgetExceedsCover;
    return out;
  }
  if (n > 40) throw CapExceeded("complement-budget enumeration limited to 40 vertices");

  // Plain enumeration of every vertex subset of size <= k1.
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) > inst.k1) continue;
    Weight covered = 0;
    for (const Edge& e : g.edges()) {
      if ((mask >> e.u & 1) || (mask >> (g.left_count() + e.v) & 1)) covered += e.w;
    }
    if (covered < inst.k2) continue;
    VertexSet chosen;
    for (int f = 0; f < n; ++f) {
      if (mask >> f & 1) chosen.push_back(g.vertex_at(f));
    }
    Certificate cert = certify(g, std::move(chosen));
    if (cert.matching_weight >= inst.k3) return Decided{yes(std::move(cert), kRuleComplementBudget)};
  }
  return Decided{no(kRuleComplementBudget)};
}

PreprocessOutcome rule_one_regular(const MepvcbInstance& inst) {
  const BipartiteGraph& g = inst.graph;
  if (g.max_degree() != 1) return Unchanged{};
  std::vector<int> order(static_cast<std::size_t>(g.edge_count()));
  for (int id = 0; id < g.edge_count(); ++id) order[static_cast<std::size_t>(id)] = id;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.edge(a).w > g.edge(b).w; });
  order.resize(std::min(order.size(), static_cast<std::size_t>(inst.k1)));
  const Weight total = g.weight_of(order);
  if (total < inst.k2 || total < inst.k3) return Decided{no(kRuleOneRegular)};
  VertexSet chosen;
  for (int id : order) chosen.push_back(left_vertex(g.edge(id).u));
  return Decided{yes(certify(g, std::move(chosen)), kRuleOneRegular)};
}

NormalizeOutcome normalize(const MepvcbInstance& inst, const EpvcbSolver& epvcb) {
  MepvcbInstance work = inst;
  work.graph = without_zero_weight_edges(inst.graph);
  const BipartiteGraph& g = work.graph;

  auto finish = [&](Verdict v) -> NormalizeOutcome {
    if (v.certificate) v.certificate = rebase_certificate(g, inst.graph, *v.certificate);
    return Decided{std::move(v)};
  };

  if (auto out = rule_budget_exceeds_cover(work); std::holds_alternative<Decided>(out)) {
    return finish(std::get<Decided>(std::move(out)).verdict);
  }
  if (auto out = rule_matching_dominates(work); std::holds_alternative<Decided>(out)) {
    return finish(std::get<Decided>(std::move(out)).verdict);
  }
  if (auto out = rule_ratio_reduces_to_epvcb(work); std::holds_alternative<ReducedToEpvcb>(out)) {
    const auto& reduced = std::get<ReducedToEpvcb>(out);
    Verdict v = epvcb(reduced.graph, reduced.k1, reduced.k2);
    if (!v.yes()) return finish(no(kRuleRatioReducesToEpvcb));
    Certificate cert = certificate_from_color_classes(g, v.certificate->chosen);
    ensure(check_certificate(work, cert).valid, "ratio rule: heaviest color class below k3");
    return finish(yes(std::move(cert), kRuleRatioReducesToEpvcb));
  }
  if (auto out = rule_small_k3(work, epvcb); std::holds_alternative<Decided>(out)) {
    return finish(std::get<Decided>(std::move(out)).verdict);
  }

  const Weight upper = checked_mul(work.k3, g.max_degree());
  ensure(work.k1 < work.k3 && work.k3 < work.k2 && work.k2 < upper, "normalize: k1 < k3 < k2 < k3*Delta violated");
  return Normalized{std::move(work)};
}

}  // namespace mepvcb

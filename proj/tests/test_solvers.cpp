#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mepvcb/generate.hpp"
#include "mepvcb/preprocess.hpp"
#include "mepvcb/solvers.hpp"
#include "oracles.hpp"

using namespace mepvcb;

namespace {

std::vector<MepvcbInstance> corpus(std::uint64_t seed, int count, int max_vertices, WeightRange w = {1, 4}) {
  Rng rng(seed);
  std::vector<MepvcbInstance> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vertices - 1));
    const int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    const double density = 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
    out.push_back(random_thresholds(rng, random_bipartite(rng, l, n - l, density, w)));
  }
  return out;
}

// Center left 0 with pendants right 0..2 (weights 2), isolated edges
// (1,3) weight 5 and (2,4) weight 1.
BipartiteGraph pendant_example() {
  return BipartiteGraph(3, 5, {{0, 0, 2}, {0, 1, 2}, {0, 2, 2}, {1, 3, 5}, {2, 4, 1}});
}

std::uint64_t binomial_prefix(int n, int k) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;
  for (int i = 0; i <= std::min(n, k); ++i) {
    total += c;
    c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return total;
}

}  // namespace

TEST(BruteForce, Examples) {
  const Verdict yes = brute_force_mepvcb(fx::inst(fx::two_path(3, 4), 1, 7, 4));
  ASSERT_TRUE(yes.yes());
  EXPECT_EQ(yes.certificate->chosen, (VertexSet{left_vertex(0)}));
  EXPECT_EQ(yes.method, kMethodOracle);
  EXPECT_FALSE(brute_force_mepvcb(fx::inst(fx::two_path(3, 4), 1, 7, 5)).yes());
  for (Weight k2 = 1; k2 <= 3; ++k2) EXPECT_FALSE(brute_force_mepvcb(fx::inst(BipartiteGraph(2, 2, {}), 2, k2, 1)).yes());
  EXPECT_THROW(brute_force_mepvcb(fx::inst(fx::complete(11, 11), 1, 1, 1)), CapExceeded);
}

TEST(BruteForce, AgreesWithFrontier) {
  for (const MepvcbInstance& inst : corpus(41, 600, 10)) {
    const Verdict v = brute_force_mepvcb(inst);
    EXPECT_EQ(v.yes(), oracle::Frontier(inst.graph).yes(inst.k1, inst.k2, inst.k3)) << serialize(inst);
    if (v.yes()) EXPECT_TRUE(check_certificate(inst, *v.certificate).valid);
  }
}

TEST(Epvcb, Examples) {
  const Verdict star = solve_epvcb(fx::complete(1, 3), 1, 3);
  ASSERT_TRUE(star.yes());
  EXPECT_EQ(star.certificate->chosen, (VertexSet{left_vertex(0)}));
  EXPECT_FALSE(solve_epvcb(fx::disjoint_edges({1, 1, 1}), 2, 3).yes());
}

TEST(Epvcb, AgreesWithEnumeration) {
  for (const MepvcbInstance& inst : corpus(42, 500, 16, {1, 9})) {
    const BipartiteGraph& g = inst.graph;
    Weight best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.vertex_count()); ++mask) {
      if (__builtin_popcountll(mask) > inst.k1) continue;
      Weight cov = 0;
      for (const Edge& e : g.edges()) cov += oracle::covers(g, mask, e) ? e.w : 0;
      best = std::max(best, cov);
    }
    const Verdict v = solve_epvcb(g, inst.k1, inst.k2);
    EXPECT_EQ(v.yes(), best >= inst.k2);
    if (v.yes()) {
      EXPECT_LE(static_cast<int>(v.certificate->chosen.size()), inst.k1);
      EXPECT_GE(g.weight_of(covered_edges(g, v.certificate->chosen)), inst.k2);
    }
  }
}

TEST(FptVge2, Examples) {
  const MepvcbInstance yes_inst = fx::inst(pendant_example(), 2, 9, 7);
  FptVge2Stats stats;
  const Verdict yes = solve_fpt_vge2(yes_inst, &stats);
  ASSERT_TRUE(yes.yes());
  EXPECT_EQ(yes.certificate->chosen.size(), 2u);
  EXPECT_TRUE(std::binary_search(yes.certificate->chosen.begin(), yes.certificate->chosen.end(), left_vertex(0)));
  EXPECT_TRUE(check_certificate(yes_inst, *yes.certificate).valid);
  EXPECT_EQ(stats.core_size, 1);
  EXPECT_EQ(stats.isolated_edges, 2);
  EXPECT_EQ(stats.subsets_tried, 2u);

  EXPECT_FALSE(solve_fpt_vge2(fx::inst(pendant_example(), 2, 12, 7)).yes());

  const MepvcbInstance matching = fx::inst(fx::disjoint_edges({5, 4, 1}), 2, 9, 9);
  const Verdict m = solve_fpt_vge2(matching, &stats);
  EXPECT_TRUE(m.yes());
  EXPECT_EQ(stats.core_size, 0);
  EXPECT_EQ(stats.subsets_tried, 1u);
}

TEST(FptVge2, AgreesWithOracleAndCountsSubsets) {
  Rng rng(43);
  for (int t = 0; t < 400; ++t) {
    const int core = 1 + static_cast<int>(rng() % 3);
    BipartiteGraph g = core_pendant_graph(rng, core, 2 * core + static_cast<int>(rng() % 4),
                                          static_cast<int>(rng() % 3), {1, 6});
    if (g.vertex_count() > 14) continue;
    const MepvcbInstance inst = random_thresholds(rng, std::move(g));
    FptVge2Stats stats;
    const Verdict v = solve_fpt_vge2(inst, &stats);
    EXPECT_EQ(v.yes(), brute_force_mepvcb(inst).yes()) << serialize(inst);
    // Every core subset of size <= k1 is tried unless a feasible one stops the scan.
    if (v.yes()) {
      EXPECT_LE(stats.subsets_tried, binomial_prefix(stats.core_size, inst.k1));
    } else {
      EXPECT_EQ(stats.subsets_tried, binomial_prefix(stats.core_size, inst.k1));
    }
  }
  for (const MepvcbInstance& inst : corpus(44, 400, 12)) {
    const Verdict v = solve_fpt_vge2(inst);
    EXPECT_EQ(v.yes(), brute_force_mepvcb(inst).yes()) << serialize(inst);
    if (v.yes()) EXPECT_TRUE(check_certificate(inst, *v.certificate).valid);
  }
}

TEST(FptVge2, InvariantUnderPermutingEqualIsolatedEdges) {
  Rng rng(45);
  for (int t = 0; t < 200; ++t) {
    const BipartiteGraph base = core_pendant_graph(rng, 2, 5, 4, {2, 2});
    const MepvcbInstance inst = random_thresholds(rng, base);
    // Relabel the isolated edges' right endpoints in reverse order.
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    std::vector<int> iso_right;
    for (const Edge& e : edges) {
      if (base.degree(left_vertex(e.u)) == 1 && base.degree(right_vertex(e.v)) == 1) iso_right.push_back(e.v);
    }
    std::vector<int> reversed(iso_right.rbegin(), iso_right.rend());
    for (Edge& e : edges) {
      auto it = std::find(iso_right.begin(), iso_right.end(), e.v);
      if (it != iso_right.end()) e.v = reversed[static_cast<std::size_t>(it - iso_right.begin())];
    }
    MepvcbInstance permuted = inst;
    permuted.graph = BipartiteGraph(base.left_count(), base.right_count(), edges);
    EXPECT_EQ(solve_fpt_vge2(inst).yes(), solve_fpt_vge2(permuted).yes());
  }
}

TEST(Solve, AgreesWithOracleUnderEveryStrategy) {
  for (const MepvcbInstance& inst : corpus(46, 800, 14)) {
    const bool truth = brute_force_mepvcb(inst).yes();
    for (Strategy s : {Strategy::Auto, Strategy::OracleOnly, Strategy::FptVge2, Strategy::ComplementBudget}) {
      SolveConfig config;
      config.strategy = s;
      const Verdict v = solve(inst, config);
      EXPECT_EQ(v.yes(), truth) << to_string(s) << "\n" << serialize(inst);
      if (v.yes()) EXPECT_TRUE(check_certificate(inst, *v.certificate).valid) << check_certificate(inst, *v.certificate).violation;
      EXPECT_FALSE(v.method.empty());
    }
    EXPECT_EQ(branch_and_bound_mepvcb(inst).yes(), truth) << serialize(inst);
  }
}

TEST(Solve, SearchHandlesNormalizedSurvivors) {
  int searched = 0;
  for (const MepvcbInstance& inst : corpus(47, 3000, 14, {1, 5})) {
    const Verdict v = solve(inst);
    if (v.method != kMethodFptVge2 && v.method != kMethodBranchAndBound && v.method != kRuleComplementBudget)
      continue;
    ++searched;
    EXPECT_EQ(v.yes(), brute_force_mepvcb(inst).yes());
    if (v.yes()) EXPECT_TRUE(check_certificate(inst, *v.certificate).valid);
  }
  EXPECT_GT(searched, 10);
}

TEST(Solve, Monotone) {
  for (const MepvcbInstance& inst : corpus(48, 400, 12)) {
    if (!solve(inst).yes()) continue;
    MepvcbInstance a = inst;
    if (a.k1 < a.graph.vertex_count()) {
      ++a.k1;
      EXPECT_TRUE(solve(a).yes());
    }
    MepvcbInstance b = inst;
    if (b.k2 > 1) {
      --b.k2;
      EXPECT_TRUE(solve(b).yes());
    }
    MepvcbInstance c = inst;
    if (c.k3 > 1) {
      --c.k3;
      EXPECT_TRUE(solve(c).yes());
    }
  }
}

TEST(Solve, OracleCapOnlyInOracleMode) {
  Rng rng(49);
  const MepvcbInstance big = random_thresholds(rng, random_bipartite(rng, 15, 15, 0.2, {1, 5}));
  SolveConfig oracle_only;
  oracle_only.strategy = Strategy::OracleOnly;
  EXPECT_THROW(solve(big, oracle_only), CapExceeded);
  EXPECT_NO_THROW(solve(big));
}

TEST(Strategy, Names) {
  for (Strategy s : {Strategy::Auto, Strategy::OracleOnly, Strategy::FptVge2, Strategy::ComplementBudget}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_FALSE(parse_strategy("fastest").has_value());
}

TEST(BkpOracle, Examples) {
  BkpInstance b;
  b.profits1 = {3};
  b.profits2 = {3};
  b.budget = 1;
  b.threshold1 = 3;
  b.threshold2 = 3;
  b.mode = CardinalityMode::AtMostB;
  EXPECT_EQ(brute_force_bkp(b), ItemSubset{0});
  b.threshold1 = 4;
  EXPECT_FALSE(brute_force_bkp(b).has_value());
}

TEST(BkpOracle, SignedImageMatchesSubsetSum) {
  Rng rng(50);
  for (int t = 0; t < 500; ++t) {
    const SubsetSumInstance ss = random_subsetsum(rng, 1 + static_cast<int>(rng() % 7), 6);
    BkpInstance b;
    b.profits1 = ss.values;
    for (Weight x : ss.values) b.profits2.push_back(-x);
    b.budget = ss.size;
    b.threshold1 = ss.target;
    b.threshold2 = -ss.target;
    b.mode = CardinalityMode::ExactlyB;
    EXPECT_EQ(brute_force_bkp(b).has_value(), brute_force_subsetsum(ss).has_value());
    EXPECT_EQ(brute_force_bkp(b).has_value(), oracle::bkp_yes(b));
    EXPECT_EQ(brute_force_subsetsum(ss).has_value(), oracle::subsetsum_yes(ss));
  }
}

TEST(SubsetSumOracle, Examples) {
  EXPECT_EQ(brute_force_subsetsum({{1, 2, 3}, 5, 2}), (ItemSubset{1, 2}));
  EXPECT_FALSE(brute_force_subsetsum({{1, 2, 3}, 7, 2}).has_value());
  EXPECT_TRUE(brute_force_subsetsum({{1, 2, 3}, 6, 3}).has_value());
  EXPECT_FALSE(brute_force_subsetsum({{1, 2, 3}, 5, 3}).has_value());
  EXPECT_THROW(brute_force_subsetsum({std::vector<Weight>(30, 1), 3, 3}), CapExceeded);
}

TEST(Oracles, ComponentFrontierMatchesWholeGraph) {
  Rng rng(91);
  for (int t = 0; t < 200; ++t) {
    const BipartiteGraph g = t % 2 ? two_paths_graph(rng, 1 + static_cast<int>(rng() % 4), {1, 6})
                                   : random_bipartite(rng, 4, 5, 0.25, {1, 4});
    const oracle::Frontier whole(g);
    const oracle::Frontier split = oracle::Frontier::by_components(g);
    const Weight total = g.total_weight();
    for (int k1 = 0; k1 <= g.vertex_count(); ++k1) {
      for (Weight k2 = 0; k2 <= total + 1; ++k2) {
        for (Weight k3 = 0; k3 <= total + 1; k3 += 1) ASSERT_EQ(whole.yes(k1, k2, k3), split.yes(k1, k2, k3));
      }
    }
  }
}

TEST(Oracles, MatchingDpMatchesEnumeration) {
  Rng rng(92);
  for (int t = 0; t < 300; ++t) {
    const BipartiteGraph g = random_bipartite(rng, 1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6), 0.5, {0, 9});
    std::vector<int> ids;
    for (int id = 0; id < g.edge_count(); ++id) {
      if (rng() % 4) ids.push_back(id);
    }
    ASSERT_EQ(oracle::matching_weight_dp(g, ids), oracle::all_matchings(g, &ids).max_weight);
  }
}

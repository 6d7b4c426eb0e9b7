#include "mepvcb/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "mepvcb/generate.hpp"

namespace mepvcb {

namespace {

template <class T>
const T& expect(const AnyInstance& inst, std::string_view name) {
  if (const T* p = std::get_if<T>(&inst)) return *p;
  throw PreconditionError(std::string(name) + ": source has kind '" + kind_of(inst) + "'");
}

template <class T>
Reduced<AnyInstance> widen(Reduced<T> r) {
  return {AnyInstance{std::move(r.instance)}, std::move(r.params)};
}

// New edges of the scaled embeddings are exactly the weight-1 edges, since
// old edges carry weight >= C >= 4. The mutation gives them weight C.
void mutate_new_edges(Reduced<MepvcbInstance>& r) {
  const Weight c = *lookup(r.params, "C");
  const BipartiteGraph& g = r.instance.graph;
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Edge& e : edges) {
    if (e.w == 1) e.w = c;
  }
  r.instance.graph = BipartiteGraph(g.left_count(), g.right_count(), std::move(edges));
}

using Apply = std::function<Reduced<AnyInstance>(const AnyInstance&, bool)>;
using Sample = std::function<AnyInstance(Rng&)>;

struct Entry {
  ReductionInfo info;
  Apply apply;
  Sample sample;
};

int draw_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

MepvcbInstance small_graph_instance(Rng& rng, int max_vertices) {
  for (;;) {
    const int n = draw_int(rng, 2, max_vertices);
    const int left = draw_int(rng, 1, n - 1);
    const double density = std::uniform_real_distribution<double>(0.25, 0.9)(rng);
    BipartiteGraph g = random_bipartite(rng, left, n - left, density, {1, 3});
    if (g.edge_count() > 0) return random_thresholds(rng, std::move(g));
  }
}

MepvcbInstance two_paths_instance(Rng& rng, int max_paths) {
  return random_thresholds(rng, two_paths_graph(rng, draw_int(rng, 1, max_paths), {1, 5}));
}

MepvcbInstance mutate_two_paths(Reduced<MepvcbInstance> r) {
  const BipartiteGraph& g = r.instance.graph;
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (int i = 0; i < g.left_count(); ++i) {
    const int light = *g.find_edge(i, 2 * i);
    const int heavy = *g.find_edge(i, 2 * i + 1);
    edges[static_cast<std::size_t>(light)].w += g.edge(heavy).w;
  }
  r.instance.graph = BipartiteGraph(g.left_count(), g.right_count(), std::move(edges));
  return std::move(r.instance);
}

Reduced<MepvcbInstance> chain_to_two_paths(const SubsetSumInstance& ss, bool mutate) {
  Reduced<MepvcbInstance> out;
  auto merge = [&](std::string_view stage, const ParameterMap& params) {
    for (const auto& [k, v] : params) out.params.emplace_back(std::string(stage) + "." + k, v);
  };
  auto signed_bkp = subsetsum_to_bkp_signed(ss);
  if (mutate) signed_bkp.instance.threshold2 += 1;
  merge("signed", signed_bkp.params);
  auto positive = bkp_shift_positive(signed_bkp.instance);
  merge("positive", positive.params);
  auto ordered = bkp_enforce_ordering(positive.instance);
  merge("ordered", ordered.params);
  auto gapped = bkp_enforce_gap(ordered.instance);
  merge("gap", gapped.params);
  auto paths = bkp_to_mepvcb_2paths(gapped.instance);
  merge("2paths", paths.params);
  out.instance = std::move(paths.instance);
  return out;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back({{"subsetsum-to-bkp", "subsetsum", "bkp", "P2 raised by one"},
                 [](const AnyInstance& s, bool mutate) {
                   auto r = subsetsum_to_bkp_signed(expect<SubsetSumInstance>(s, "subsetsum-to-bkp"));
                   if (mutate) r.instance.threshold2 += 1;
                   return widen(std::move(r));
                 },
                 [](Rng& rng) { return AnyInstance{random_subsetsum(rng, draw_int(rng, 1, 6), 6)}; }});
    e.push_back({{"bkp-shift-positive", "bkp", "bkp", "thresholds shifted by (B-1)Q_i instead of B Q_i"},
                 [](const AnyInstance& s, bool mutate) {
                   auto r = bkp_shift_positive(expect<BkpInstance>(s, "bkp-shift-positive"));
                   if (mutate && !lookup(r.params, "trivial_no")) {
                     r.instance.threshold1 -= *lookup(r.params, "Q1");
                     r.instance.threshold2 -= *lookup(r.params, "Q2");
                   }
                   return widen(std::move(r));
                 },
                 [](Rng& rng) { return AnyInstance{random_bkp(rng, draw_int(rng, 1, 6), BkpShape::Signed, 6)}; }});
    e.push_back({{"bkp-enforce-ordering", "bkp", "bkp", "P1 not multiplied by Q"},
                 [](const AnyInstance& s, bool mutate) {
                   const auto& src = expect<BkpInstance>(s, "bkp-enforce-ordering");
                   auto r = bkp_enforce_ordering(src);
                   if (mutate) r.instance.threshold1 -= src.threshold1 * (*lookup(r.params, "Q") - 1);
                   return widen(std::move(r));
                 },
                 [](Rng& rng) { return AnyInstance{random_bkp(rng, draw_int(rng, 1, 6), BkpShape::Positive, 8)}; }});
    e.push_back({{"bkp-enforce-gap", "bkp", "bkp", "thresholds shifted by B T instead of B(T+1)"},
                 [](const AnyInstance& s, bool mutate) {
                   auto r = bkp_enforce_gap(expect<BkpInstance>(s, "bkp-enforce-gap"));
                   if (mutate) {
                     r.instance.threshold1 -= r.instance.budget;
                     r.instance.threshold2 -= r.instance.budget;
                   }
                   return widen(std::move(r));
                 },
                 [](Rng& rng) { return AnyInstance{random_bkp(rng, draw_int(rng, 1, 6), BkpShape::Ordered, 8)}; }});
    e.push_back({{"bkp-to-2paths", "bkp", "mepvcb", "light edge weighted pr1 instead of pr1 - pr2"},
                 [](const AnyInstance& s, bool mutate) {
                   auto r = bkp_to_mepvcb_2paths(expect<BkpInstance>(s, "bkp-to-2paths"));
                   if (mutate) r.instance = mutate_two_paths(r);
                   return widen(std::move(r));
                 },
                 [](Rng& rng) { return AnyInstance{random_bkp(rng, draw_int(rng, 1, 5), BkpShape::Ordered, 8)}; }});

    auto embedding = [&e](std::string name, Reduced<MepvcbInstance> (*fn)(const MepvcbInstance&), int max_vertices) {
      e.push_back({{name, "mepvcb", "mepvcb", "new edges weighted C instead of 1"},
                   [fn](const AnyInstance& s, bool mutate) {
                     auto r = fn(expect<MepvcbInstance>(s, "embedding"));
                     if (mutate) mutate_new_edges(r);
                     return widen(std::move(r));
                   },
                   [max_vertices](Rng& rng) { return AnyInstance{small_graph_instance(rng, max_vertices)}; }});
    };
    embedding("embed-regular", embed_regular, 8);
    embedding("embed-complete", embed_complete, 8);
    embedding("embed-complete-bipartition", embed_complete_bipartition, 8);
    embedding("add-apex", add_apex_for_delta, 7);

    e.push_back({{"identify-into-tree", "mepvcb", "mepvcb", "heavy endpoints merged instead of light ones"},
                 [](const AnyInstance& s, bool mutate) {
                   auto r = identify_into_tree(expect<MepvcbInstance>(s, "identify-into-tree"));
                   if (mutate) {
                     const BipartiteGraph& g = r.instance.graph;
                     std::vector<Edge> edges;
                     for (int i = 0; i < g.left_count(); ++i) {
                       const Weight light = g.edge(*g.find_edge(i, 0)).w;
                       const Weight heavy = g.edge(*g.find_edge(i, 1 + i)).w;
                       edges.push_back({i, 0, heavy});
                       edges.push_back({i, 1 + i, light});
                     }
                     r.instance.graph = BipartiteGraph(g.left_count(), g.right_count(), std::move(edges));
                   }
                   return widen(std::move(r));
                 },
                 [](Rng& rng) {
                   const BkpInstance bkp = random_bkp(rng, draw_int(rng, 1, 5), BkpShape::Gap, 6);
                   return AnyInstance{bkp_to_mepvcb_2paths(bkp).instance};
                 }});
    for (LinkShape shape : {LinkShape::Path, LinkShape::Cycle}) {
      e.push_back({{shape == LinkShape::Path ? "link-path" : "link-cycle", "mepvcb", "mepvcb",
                    "connector edges weighted C instead of 1"},
                   [shape](const AnyInstance& s, bool mutate) {
                     auto r = link_into_path_or_cycle(expect<MepvcbInstance>(s, "link"), shape);
                     if (mutate) mutate_new_edges(r);
                     return widen(std::move(r));
                   },
                   [](Rng& rng) { return AnyInstance{two_paths_instance(rng, 4)}; }});
    }
    e.push_back({{"subsetsum-to-2paths", "subsetsum", "mepvcb", "P2 raised by one in the first stage"},
                 [](const AnyInstance& s, bool mutate) {
                   return widen(chain_to_two_paths(expect<SubsetSumInstance>(s, "subsetsum-to-2paths"), mutate));
                 },
                 [](Rng& rng) { return AnyInstance{random_subsetsum(rng, draw_int(rng, 1, 4), 6)}; }});
    return e;
  }();
  return entries;
}

const Entry& entry(std::string_view name) {
  for (const Entry& e : registry()) {
    if (e.info.name == name) return e;
  }
  throw PreconditionError("unknown reduction '" + std::string(name) + "'");
}

}  // namespace

std::string kind_of(const AnyInstance& inst) {
  switch (inst.index()) {
    case 0: return "subsetsum";
    case 1: return "bkp";
    default: return "mepvcb";
  }
}

std::string serialize(const AnyInstance& inst) {
  return std::visit([](const auto& x) { return serialize(x); }, inst);
}

AnyInstance parse_any(std::string_view text) {
  const std::string kind = document_kind(text);
  if (kind == "subsetsum") return parse_subsetsum(text);
  if (kind == "bkp") return parse_bkp(text);
  return parse_instance(text);
}

Weight budget_of(const AnyInstance& inst) {
  if (const auto* ss = std::get_if<SubsetSumInstance>(&inst)) return ss->size;
  if (const auto* bkp = std::get_if<BkpInstance>(&inst)) return bkp->budget;
  return std::get<MepvcbInstance>(inst).k1;
}

std::string_view to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent: return "equivalent";
    case Equivalence::Mismatch: return "mismatch";
    case Equivalence::Unverified: return "unverified";
  }
  return "?";
}

const std::vector<ReductionInfo>& reduction_catalog() {
  static const std::vector<ReductionInfo> catalog = [] {
    std::vector<ReductionInfo> out;
    for (const Entry& e : registry()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

const ReductionInfo* find_reduction(std::string_view name) {
  for (const ReductionInfo& info : reduction_catalog()) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

Reduced<AnyInstance> apply_reduction(std::string_view name, const AnyInstance& source, bool mutate) {
  const Entry& e = entry(name);
  auto out = e.apply(source, mutate);
  if (budget_of(out.instance) != budget_of(source)) throw std::logic_error(std::string(name) + ": budget changed");
  return out;
}

std::optional<bool> oracle_verdict(const AnyInstance& inst, const OracleConfig& config) {
  if (const auto* ss = std::get_if<SubsetSumInstance>(&inst)) {
    if (static_cast<int>(ss->values.size()) > config.item_cap) return std::nullopt;
    return brute_force_subsetsum(*ss, config.item_cap).has_value();
  }
  if (const auto* bkp = std::get_if<BkpInstance>(&inst)) {
    if (static_cast<int>(bkp->item_count()) > config.item_cap) return std::nullopt;
    return brute_force_bkp(*bkp, config.item_cap).has_value();
  }
  const auto& m = std::get<MepvcbInstance>(inst);
  if (m.graph.vertex_count() <= config.vertex_cap) return brute_force_mepvcb(m, config.vertex_cap).yes();
  if (config.structured_fallback) return solve(m).yes();
  return std::nullopt;
}

ReductionReport verify_instance(std::string_view name, const AnyInstance& source, const OracleConfig& config,
                                bool mutate) {
  ReductionReport report;
  report.reduction = std::string(name);
  const std::string source_text = serialize(source);
  report.source_digest = digest(source_text);
  report.source_parameter = budget_of(source);
  auto target = apply_reduction(name, source, mutate);
  report.target_digest = digest(serialize(target.instance));
  report.target_parameter = budget_of(target.instance);
  report.params = std::move(target.params);

  report.source_yes = oracle_verdict(source, config);
  if (!report.source_yes) {
    report.detail = "source beyond oracle caps";
    return report;
  }
  report.target_yes = oracle_verdict(target.instance, config);
  if (!report.target_yes) {
    const auto* m = std::get_if<MepvcbInstance>(&target.instance);
    report.detail = m ? "target has " + std::to_string(m->graph.vertex_count()) + " vertices > cap " +
                            std::to_string(config.vertex_cap)
                      : "target beyond oracle caps";
    return report;
  }
  if (*report.source_yes == *report.target_yes) {
    report.status = Equivalence::Equivalent;
  } else {
    report.status = Equivalence::Mismatch;
    report.witness = source_text;
    report.detail = std::string("source ") + (*report.source_yes ? "yes" : "no") + ", target " +
                    (*report.target_yes ? "yes" : "no");
  }
  return report;
}

const ReductionReport* VerifySummary::first_mismatch() const {
  for (const ReductionReport& r : reports) {
    if (r.status == Equivalence::Mismatch) return &r;
  }
  return nullptr;
}

VerifySummary verify_reduction(std::string_view name, const std::vector<AnyInstance>& corpus,
                               const OracleConfig& config, bool mutate, int workers) {
  entry(name);
  VerifySummary summary;
  summary.reduction = std::string(name);
  summary.reports.resize(corpus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < corpus.size() && !failed; i = next++) {
      try {
        summary.reports[i] = verify_instance(name, corpus[i], config, mutate);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(workers, 1, 64);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (const ReductionReport& r : summary.reports) {
    switch (r.status) {
      case Equivalence::Equivalent: ++summary.equivalent; break;
      case Equivalence::Mismatch: ++summary.mismatches; break;
      case Equivalence::Unverified: ++summary.unverified; break;
    }
  }
  return summary;
}

std::vector<AnyInstance> default_corpus(std::string_view name, std::uint64_t seed, int count) {
  const Entry& e = entry(name);
  Rng rng(seed);
  std::vector<AnyInstance> corpus;
  corpus.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) corpus.push_back(e.sample(rng));
  return corpus;
}

}  // namespace mepvcb

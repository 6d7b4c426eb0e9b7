#include "mepvcb/reductions.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "mepvcb/bipartite.hpp"

namespace mepvcb {

namespace {

void ensure(bool condition, const char* what) {
  if (!condition) throw std::logic_error(what);
}

Weight sum_abs(const std::vector<Weight>& values) {
  Weight s = 0;
  for (Weight v : values) s = checked_add(s, v < 0 ? checked_neg(v) : v);
  return s;
}

bool all_positive(const std::vector<Weight>& values) {
  return std::all_of(values.begin(), values.end(), [](Weight v) { return v >= 1; });
}

void require_positive_weights(const BipartiteGraph& g, const char* who) {
  if (g.edge_count() == 0) throw PreconditionError(std::string(who) + ": graph needs at least one edge");
  for (const Edge& e : g.edges()) {
    if (e.w < 1) throw PreconditionError(std::string(who) + ": all edge weights must be >= 1");
  }
}

Weight square_of_vertex_count(const BipartiteGraph& g) {
  return checked_mul(g.vertex_count(), g.vertex_count());
}

// Old edges scaled by C, new edges weight 1, k2/k3 scaled by C, k1 kept.
Reduced<MepvcbInstance> scaled_embedding(const MepvcbInstance& inst, int left, int right,
                                         const std::vector<std::pair<int, int>>& new_edges,
                                         Weight scale, int added_vertices) {
  std::vector<Edge> edges;
  for (const Edge& e : inst.graph.edges()) edges.push_back({e.u, e.v, checked_mul(e.w, scale)});
  for (auto [u, v] : new_edges) edges.push_back({u, v, 1});
  Reduced<MepvcbInstance> out;
  out.instance.graph = BipartiteGraph(left, right, std::move(edges));
  out.instance.k1 = inst.k1;
  out.instance.k2 = checked_mul(inst.k2, scale);
  out.instance.k3 = checked_mul(inst.k3, scale);
  out.params = {{"C", scale},
                {"added_edges", static_cast<Weight>(new_edges.size())},
                {"added_vertices", added_vertices},
                {"k1", out.instance.k1},
                {"k2", out.instance.k2},
                {"k3", out.instance.k3}};
  return out;
}

// Unit-capacity max flow (Dinic) for degree-constrained completion.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)), level_(adj_.size()), it_(adj_.size()) {}

  int add(int a, int b, int cap) {
    adj_[static_cast<std::size_t>(a)].push_back({b, static_cast<int>(adj_[static_cast<std::size_t>(b)].size()), cap});
    adj_[static_cast<std::size_t>(b)].push_back({a, static_cast<int>(adj_[static_cast<std::size_t>(a)].size()) - 1, 0});
    return static_cast<int>(adj_[static_cast<std::size_t>(a)].size()) - 1;
  }

  int run(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (int f = dfs(s, t, std::numeric_limits<int>::max())) flow += f;
    }
    return flow;
  }

  bool saturated(int a, int arc) const { return adj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(arc)].cap == 0; }

 private:
  struct Arc {
    int to;
    int rev;
    int cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue{s};
    level_[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (const Arc& arc : adj_[static_cast<std::size_t>(a)]) {
        if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
          level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(a)] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  int dfs(int a, int t, int pushed) {
    if (a == t) return pushed;
    auto& arcs = adj_[static_cast<std::size_t>(a)];
    for (int& i = it_[static_cast<std::size_t>(a)]; i < static_cast<int>(arcs.size()); ++i) {
      Arc& arc = arcs[static_cast<std::size_t>(i)];
      if (arc.cap <= 0 || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(a)] + 1) continue;
      if (int f = dfs(arc.to, t, std::min(pushed, arc.cap))) {
        arc.cap -= f;
        adj_[static_cast<std::size_t>(arc.to)][static_cast<std::size_t>(arc.rev)].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

// Adds weight-1 edges on `side` x `side` vertices (the first left/right ones
// are the old graph) so that every vertex reaches degree `target`; nullopt if
// no simple completion exists on this vertex set.
std::optional<std::vector<std::pair<int, int>>> regular_completion(const BipartiteGraph& g, int side, int target) {
  std::vector<int> left_need(static_cast<std::size_t>(side), target);
  std::vector<int> right_need(static_cast<std::size_t>(side), target);
  for (int u = 0; u < g.left_count(); ++u) left_need[static_cast<std::size_t>(u)] -= g.degree(left_vertex(u));
  for (int v = 0; v < g.right_count(); ++v) right_need[static_cast<std::size_t>(v)] -= g.degree(right_vertex(v));

  const int source = 2 * side;
  const int sink = source + 1;
  MaxFlow flow(sink + 1);
  int demand = 0;
  for (int u = 0; u < side; ++u) {
    flow.add(source, u, left_need[static_cast<std::size_t>(u)]);
    demand += left_need[static_cast<std::size_t>(u)];
  }
  for (int v = 0; v < side; ++v) flow.add(side + v, sink, right_need[static_cast<std::size_t>(v)]);
  std::vector<std::tuple<int, int, int>> candidates;  // u, v, arc index at u
  for (int u = 0; u < side; ++u) {
    if (left_need[static_cast<std::size_t>(u)] == 0) continue;
    for (int v = 0; v < side; ++v) {
      if (right_need[static_cast<std::size_t>(v)] == 0) continue;
      const bool old = u < g.left_count() && v < g.right_count() && g.find_edge(u, v).has_value();
      if (!old) candidates.emplace_back(u, v, flow.add(u, side + v, 1));
    }
  }
  if (flow.run(source, sink) != demand) return std::nullopt;
  std::vector<std::pair<int, int>> added;
  for (auto [u, v, arc] : candidates) {
    if (flow.saturated(u, arc)) added.emplace_back(u, v);
  }
  return added;
}

}  // namespace

std::optional<Weight> lookup(const ParameterMap& params, std::string_view key) {
  for (const auto& [name, value] : params) {
    if (name == key) return value;
  }
  return std::nullopt;
}

Reduced<BkpInstance> subsetsum_to_bkp_signed(const SubsetSumInstance& ss) {
  validate(ss);
  Reduced<BkpInstance> out;
  out.instance.profits1 = ss.values;
  for (Weight x : ss.values) out.instance.profits2.push_back(checked_neg(x));
  out.instance.budget = ss.size;
  out.instance.threshold1 = ss.target;
  out.instance.threshold2 = checked_neg(ss.target);
  out.instance.mode = CardinalityMode::ExactlyB;
  out.params = {{"B", ss.size}, {"P1", out.instance.threshold1}, {"P2", out.instance.threshold2}};
  return out;
}

Reduced<BkpInstance> bkp_shift_positive(const BkpInstance& bkp) {
  validate(bkp);
  if (bkp.mode != CardinalityMode::ExactlyB) throw PreconditionError("bkp-shift-positive: source must use |T| = B");
  const Weight q1 = checked_add(1, sum_abs(bkp.profits1));
  const Weight q2 = checked_add(1, sum_abs(bkp.profits2));
  const Weight b = bkp.budget;
  Reduced<BkpInstance> out;
  out.params = {{"Q1", q1}, {"Q2", q2}};

  BkpInstance& r = out.instance;
  r.budget = bkp.budget;
  r.mode = CardinalityMode::AtMostB;
  if (bkp.threshold1 >= q1 || bkp.threshold2 >= q2) {
    // |pr_i(T)| < Q_i for every T, so the source is a No instance.
    r.profits1.assign(bkp.item_count(), 1);
    r.profits2.assign(bkp.item_count(), 1);
    r.threshold1 = b + 1;
    r.threshold2 = b + 1;
    out.params.emplace_back("trivial_no", 1);
    return out;
  }
  const Weight p1 = std::max(bkp.threshold1, 1 - q1);
  const Weight p2 = std::max(bkp.threshold2, 1 - q2);
  for (std::size_t i = 0; i < bkp.item_count(); ++i) {
    r.profits1.push_back(checked_add(bkp.profits1[i], q1));
    r.profits2.push_back(checked_add(bkp.profits2[i], q2));
  }
  r.threshold1 = checked_add(p1, checked_mul(b, q1));
  r.threshold2 = checked_add(p2, checked_mul(b, q2));
  ensure(all_positive(r.profits1) && all_positive(r.profits2) && r.threshold1 > 0 && r.threshold2 > 0,
         "bkp-shift-positive: output not positive");
  out.params.emplace_back("P1", r.threshold1);
  out.params.emplace_back("P2", r.threshold2);
  return out;
}

bool satisfies_ordering(const BkpInstance& bkp) {
  for (std::size_t i = 0; i < bkp.item_count(); ++i) {
    const Weight p1 = bkp.profits1[i];
    const Weight p2 = bkp.profits2[i];
    if (!(p1 - p2 <= p2 && p2 < p1)) return false;
  }
  return true;
}

bool satisfies_gap(const BkpInstance& bkp) {
  if (!satisfies_ordering(bkp) || bkp.item_count() == 0) return false;
  Weight spread = 0;
  for (std::size_t i = 0; i < bkp.item_count(); ++i) spread = checked_add(spread, bkp.profits1[i] - bkp.profits2[i]);
  return spread < *std::min_element(bkp.profits2.begin(), bkp.profits2.end());
}

Reduced<BkpInstance> bkp_enforce_ordering(const BkpInstance& bkp) {
  validate(bkp);
  if (!all_positive(bkp.profits1) || !all_positive(bkp.profits2)) {
    throw PreconditionError("bkp-enforce-ordering: profits must be positive");
  }
  Weight max_ratio = 0;
  for (std::size_t i = 0; i < bkp.item_count(); ++i) {
    const Weight ceil_ratio = (bkp.profits2[i] + bkp.profits1[i] - 1) / bkp.profits1[i];
    max_ratio = std::max(max_ratio, ceil_ratio);
  }
  const Weight q = checked_add(1, max_ratio);
  BkpInstance r = bkp;
  for (Weight& p : r.profits1) p = checked_mul(p, q);
  r.threshold1 = checked_mul(r.threshold1, q);

  Weight p0 = 1;
  for (std::size_t i = 0; i < r.item_count(); ++i) {
    p0 = std::max(p0, checked_sub(r.profits1[i], checked_mul(2, r.profits2[i])));
  }
  for (std::size_t i = 0; i < r.item_count(); ++i) {
    r.profits1[i] = checked_add(r.profits1[i], p0);
    r.profits2[i] = checked_add(r.profits2[i], p0);
  }
  r.threshold1 = checked_add(r.threshold1, checked_mul(r.budget, p0));
  r.threshold2 = checked_add(r.threshold2, checked_mul(r.budget, p0));
  ensure(satisfies_ordering(r), "bkp-enforce-ordering: ordering inequality fails on output");
  return {std::move(r), {{"Q", q}, {"P0", p0}}};
}

Reduced<BkpInstance> bkp_enforce_gap(const BkpInstance& bkp) {
  validate(bkp);
  if (!satisfies_ordering(bkp)) throw PreconditionError("bkp-enforce-gap: source violates pr1 - pr2 <= pr2 < pr1");
  Weight spread = 0;
  for (std::size_t i = 0; i < bkp.item_count(); ++i) {
    spread = checked_add(spread, checked_sub(bkp.profits1[i], bkp.profits2[i]));
  }
  const Weight shift = checked_add(spread, 1);
  BkpInstance r = bkp;
  for (Weight& p : r.profits1) p = checked_add(p, shift);
  for (Weight& p : r.profits2) p = checked_add(p, shift);
  r.threshold1 = checked_add(r.threshold1, checked_mul(r.budget, shift));
  r.threshold2 = checked_add(r.threshold2, checked_mul(r.budget, shift));
  ensure(satisfies_gap(r), "bkp-enforce-gap: gap inequality fails on output");
  return {std::move(r), {{"T", spread}, {"shift", shift}}};
}

Reduced<MepvcbInstance> bkp_to_mepvcb_2paths(const BkpInstance& bkp) {
  validate(bkp);
  if (!all_positive(bkp.profits1) || !all_positive(bkp.profits2) || !satisfies_ordering(bkp)) {
    throw PreconditionError("bkp-to-2paths: needs positive profits with pr1 - pr2 <= pr2 < pr1");
  }
  const int n = static_cast<int>(bkp.item_count());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    edges.push_back({i, 2 * i, bkp.profits1[k] - bkp.profits2[k]});
    edges.push_back({i, 2 * i + 1, bkp.profits2[k]});
  }
  Reduced<MepvcbInstance> out;
  out.instance.graph = BipartiteGraph(n, 2 * n, std::move(edges));
  out.instance.k1 = bkp.budget;
  out.instance.k2 = std::max<Weight>(bkp.threshold1, 1);
  out.instance.k3 = std::max<Weight>(bkp.threshold2, 1);
  out.params = {{"k1", out.instance.k1}, {"k2", out.instance.k2}, {"k3", out.instance.k3}};
  return out;
}

VertexSet two_path_centers(const std::vector<int>& items) {
  VertexSet out;
  for (int i : items) out.push_back(left_vertex(i));
  std::sort(out.begin(), out.end());
  return out;
}

BipartiteGraph mirrored(const BipartiteGraph& g) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.v, e.u, e.w});
  return BipartiteGraph(g.right_count(), g.left_count(), std::move(edges));
}

Reduced<MepvcbInstance> embed_regular(const MepvcbInstance& inst) {
  const BipartiteGraph& g = inst.graph;
  require_positive_weights(g, "embed-regular");
  const int delta = g.max_degree();
  const int side = std::max(g.left_count(), g.right_count());

  // Try the padded vertex set first; when no simple completion exists there,
  // add `extra` fresh vertices per side.
  std::optional<std::vector<std::pair<int, int>>> added;
  int extra = 0;
  for (; extra <= 2 * (side + delta) + 2 && !added; ++extra) added = regular_completion(g, side + extra, delta);
  ensure(added.has_value(), "embed-regular: no regular completion found");
  --extra;

  const int total_side = side + extra;
  const auto new_count = static_cast<Weight>(added->size());
  const Weight scale = std::max(square_of_vertex_count(g), checked_add(new_count, 1));
  auto out = scaled_embedding(inst, total_side, total_side, *added, scale,
                              2 * total_side - g.vertex_count());
  const BipartiteGraph& h = out.instance.graph;
  for (int f = 0; f < h.vertex_count(); ++f) {
    ensure(h.degree(h.vertex_at(f)) == delta, "embed-regular: output is not regular");
  }
  return out;
}

Reduced<MepvcbInstance> embed_complete(const MepvcbInstance& inst) {
  const BipartiteGraph& g = inst.graph;
  require_positive_weights(g, "embed-complete");
  const int t = std::max(g.left_count(), g.right_count());
  std::vector<std::pair<int, int>> added;
  for (int u = 0; u < t; ++u) {
    for (int v = 0; v < t; ++v) {
      if (u >= g.left_count() || v >= g.right_count() || !g.find_edge(u, v)) added.emplace_back(u, v);
    }
  }
  auto out = scaled_embedding(inst, t, t, added, square_of_vertex_count(g), 2 * t - g.vertex_count());
  ensure(out.instance.graph.edge_count() == t * t, "embed-complete: output is not K_{t,t}");
  ensure(static_cast<Weight>(added.size()) < square_of_vertex_count(g), "embed-complete: too many new edges");
  return out;
}

Reduced<MepvcbInstance> embed_complete_bipartition(const MepvcbInstance& inst) {
  const BipartiteGraph& g = inst.graph;
  require_positive_weights(g, "embed-complete-bipartition");
  std::vector<std::pair<int, int>> added;
  for (int u = 0; u < g.left_count(); ++u) {
    for (int v = 0; v < g.right_count(); ++v) {
      if (!g.find_edge(u, v)) added.emplace_back(u, v);
    }
  }
  auto out = scaled_embedding(inst, g.left_count(), g.right_count(), added, square_of_vertex_count(g), 0);
  const int nu = static_cast<int>(max_cardinality_matching(out.instance.graph).edges.size());
  ensure(nu == std::min(g.left_count(), g.right_count()), "embed-complete-bipartition: nu differs from min side");
  return out;
}

Reduced<MepvcbInstance> add_apex_for_delta(const MepvcbInstance& inst) {
  require_positive_weights(inst.graph, "add-apex");
  MepvcbInstance base = inst;
  const bool swap = inst.graph.right_count() > inst.graph.left_count();
  if (swap) base.graph = mirrored(inst.graph);
  const BipartiteGraph& g = base.graph;
  const int x_count = g.left_count();
  const int y_count = g.right_count();
  const int k = g.vertex_count();

  std::vector<std::pair<int, int>> added;
  for (int u = 0; u < x_count + k; ++u) added.emplace_back(u, y_count);
  auto out = scaled_embedding(base, x_count + k, y_count + 1, added, square_of_vertex_count(g), k + 1);
  out.params.emplace_back("mirrored", swap ? 1 : 0);

  const BipartiteGraph& h = out.instance.graph;
  ensure(h.vertex_count() - h.max_degree() == std::min(x_count, y_count) + 1,
         "add-apex: |V(H)| - Delta(H) differs from min(|X|,|Y|) + 1");
  return out;
}

std::optional<std::vector<TwoPath>> two_path_components(const BipartiteGraph& g) {
  std::vector<TwoPath> paths;
  int covered_vertices = 0;
  for (int f = 0; f < g.vertex_count(); ++f) {
    const Vertex c = g.vertex_at(f);
    const int d = g.degree(c);
    if (d > 2) return std::nullopt;
    if (d != 2) continue;
    auto inc = g.incident(c);
    TwoPath p;
    p.center = c;
    int a = inc[0];
    int b = inc[1];
    auto end_of = [&](int id) {
      const Edge& e = g.edge(id);
      return c.side == Side::Left ? right_vertex(e.v) : left_vertex(e.u);
    };
    if (g.degree(end_of(a)) != 1 || g.degree(end_of(b)) != 1) return std::nullopt;
    if (g.edge(b).w < g.edge(a).w) std::swap(a, b);
    p.light_edge = a;
    p.heavy_edge = b;
    p.light_end = end_of(a);
    p.heavy_end = end_of(b);
    paths.push_back(p);
    covered_vertices += 3;
  }
  if (covered_vertices != g.vertex_count() || paths.empty()) return std::nullopt;
  return paths;
}

Reduced<MepvcbInstance> identify_into_tree(const MepvcbInstance& inst) {
  const BipartiteGraph& g = inst.graph;
  auto paths = two_path_components(g);
  if (!paths) throw PreconditionError("identify-into-tree: source must be a disjoint union of 2-paths");
  const Side center_side = paths->front().center.side;
  Weight light_sum = 0;
  Weight heavy_min = std::numeric_limits<Weight>::max();
  for (const TwoPath& p : *paths) {
    if (p.center.side != center_side) throw PreconditionError("identify-into-tree: centers must share a side");
    light_sum = checked_add(light_sum, g.edge(p.light_edge).w);
    heavy_min = std::min(heavy_min, g.edge(p.heavy_edge).w);
  }
  if (light_sum >= heavy_min) {
    throw PreconditionError("identify-into-tree: gap condition violated (sum of light weights " +
                            std::to_string(light_sum) + " >= min heavy weight " + std::to_string(heavy_min) + ")");
  }

  // Centers become left 0..n-1; z is right 0, heavy endpoints right 1..n.
  const int n = static_cast<int>(paths->size());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const TwoPath& p = (*paths)[static_cast<std::size_t>(i)];
    edges.push_back({i, 0, g.edge(p.light_edge).w});
    edges.push_back({i, 1 + i, g.edge(p.heavy_edge).w});
  }
  Reduced<MepvcbInstance> out;
  out.instance.graph = BipartiteGraph(n, n + 1, std::move(edges));
  out.instance.k1 = inst.k1;
  out.instance.k2 = inst.k2;
  out.instance.k3 = inst.k3;
  out.params = {{"z_degree", n}, {"light_sum", light_sum}, {"heavy_min", heavy_min}, {"k1", inst.k1}};

  const BipartiteGraph& h = out.instance.graph;
  if (h.vertex_count() <= kDefaultInducedMatchingCap) {
    ensure(h.vertex_count() - 2 * max_induced_matching(h) == 1, "identify-into-tree: |V| - 2 nu_ind != 1");
  }
  return out;
}

Reduced<MepvcbInstance> link_into_path_or_cycle(const MepvcbInstance& inst, LinkShape shape) {
  const BipartiteGraph& g = inst.graph;
  require_positive_weights(g, "link");
  auto paths = two_path_components(g);
  if (!paths) throw PreconditionError("link: source must be a disjoint union of 2-paths");

  int left = g.left_count();
  int right = g.right_count();
  std::vector<std::pair<int, int>> added;
  auto connect = [&](Vertex a, Vertex b) {
    if (a.side != b.side) {
      added.emplace_back(a.side == Side::Left ? a.index : b.index, a.side == Side::Left ? b.index : a.index);
      return;
    }
    // Same side: route through a new vertex on the opposite side.
    if (a.side == Side::Left) {
      const int mid = right++;
      added.emplace_back(a.index, mid);
      added.emplace_back(b.index, mid);
    } else {
      const int mid = left++;
      added.emplace_back(mid, a.index);
      added.emplace_back(mid, b.index);
    }
  };

  // Orient each path from its smaller endpoint to its larger one.
  std::vector<std::pair<Vertex, Vertex>> ends;
  for (const TwoPath& p : *paths) ends.emplace_back(std::min(p.light_end, p.heavy_end), std::max(p.light_end, p.heavy_end));
  const std::size_t n = ends.size();
  for (std::size_t i = 0; i + 1 < n; ++i) connect(ends[i].second, ends[i + 1].first);
  if (shape == LinkShape::Cycle) connect(ends[n - 1].second, ends[0].first);

  auto out = scaled_embedding(inst, left, right, added, square_of_vertex_count(g),
                              left + right - g.vertex_count());
  out.params.emplace_back("cycle", shape == LinkShape::Cycle ? 1 : 0);

  const BipartiteGraph& h = out.instance.graph;
  int ones = 0;
  for (int f = 0; f < h.vertex_count(); ++f) {
    const int d = h.degree(h.vertex_at(f));
    ensure(d == 1 || d == 2, "link: output degree outside {1, 2}");
    ones += d == 1 ? 1 : 0;
  }
  ensure(shape == LinkShape::Cycle ? ones == 0 : ones == 2, "link: output is not a single path/cycle");
  ensure(h.edge_count() == (shape == LinkShape::Cycle ? h.vertex_count() : h.vertex_count() - 1),
         "link: output is not connected");
  ensure(h.vertex_count() % 2 == 0 || shape == LinkShape::Path, "link: odd cycle");
  ensure(static_cast<Weight>(added.size()) < square_of_vertex_count(g), "link: too many connector edges");
  return out;
}

}  // namespace mepvcb

#include "mepvcb/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "mepvcb/bipartite.hpp"

namespace mepvcb {

using nlohmann::json;

std::string to_string(Vertex v) {
  return (v.side == Side::Left ? "L" : "R") + std::to_string(v.index);
}

BipartiteGraph::BipartiteGraph(int left_count, int right_count, std::vector<Edge> edges)
    : left_count_(left_count), right_count_(right_count), edges_(std::move(edges)) {
  if (left_count_ < 0 || right_count_ < 0) throw InputError("negative part size");
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= left_count_ || e.v < 0 || e.v >= right_count_) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    }
    if (e.w < 0) throw InputError("negative edge weight");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InputError("duplicate edge (" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")");
    }
  }
  incident_.assign(static_cast<std::size_t>(vertex_count()), {});
  for (int id = 0; id < edge_count(); ++id) {
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    incident_[static_cast<std::size_t>(e.u)].push_back(id);
    incident_[static_cast<std::size_t>(left_count_ + e.v)].push_back(id);
    total_weight_ = checked_add(total_weight_, e.w);
  }
  for (const auto& inc : incident_) max_degree_ = std::max(max_degree_, static_cast<int>(inc.size()));
}

Weight BipartiteGraph::weight_of(std::span<const int> edge_ids) const {
  Weight total = 0;
  for (int id : edge_ids) total = checked_add(total, edge(id).w);
  return total;
}

bool BipartiteGraph::has_zero_weight_edge() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 0; });
}

std::optional<int> BipartiteGraph::find_edge(int u, int v) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v}, [](const Edge& e, std::pair<int, int> key) {
    return std::pair{e.u, e.v} < key;
  });
  if (it != edges_.end() && it->u == u && it->v == v) return static_cast<int>(it - edges_.begin());
  return std::nullopt;
}

std::vector<int> BipartiteGraph::non_isolated() const {
  std::vector<int> out;
  for (int f = 0; f < vertex_count(); ++f) {
    if (!incident_[static_cast<std::size_t>(f)].empty()) out.push_back(f);
  }
  return out;
}

BipartiteGraph without_zero_weight_edges(const BipartiteGraph& g) {
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.w != 0) kept.push_back(e);
  }
  return BipartiteGraph(g.left_count(), g.right_count(), std::move(kept));
}

void validate(const MepvcbInstance& inst) {
  if (inst.k1 < 1) throw InputError("k1 must be positive");
  if (inst.k1 > inst.graph.vertex_count()) throw InputError("k1 exceeds |V|");
  if (inst.k2 < 1) throw InputError("k2 must be positive");
  if (inst.k3 < 1) throw InputError("k3 must be positive");
}

void validate(const BkpInstance& bkp) {
  if (bkp.profits1.size() != bkp.profits2.size()) throw InputError("profit lists differ in length");
  if (bkp.budget < 1 || static_cast<std::size_t>(bkp.budget) > bkp.profits1.size()) {
    throw InputError("budget must satisfy 1 <= B <= n");
  }
}

void validate(const SubsetSumInstance& ss) {
  if (ss.size < 1 || static_cast<std::size_t>(ss.size) > ss.values.size()) {
    throw InputError("size must satisfy 1 <= k <= n");
  }
}

EdgeSet covered_edges(const BipartiteGraph& g, std::span<const Vertex> chosen) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex x : chosen) {
    if (!g.contains(x)) throw PreconditionError("vertex " + to_string(x) + " out of range");
    in[static_cast<std::size_t>(g.flat(x))] = 1;
  }
  EdgeSet out;
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (in[static_cast<std::size_t>(e.u)] || in[static_cast<std::size_t>(g.left_count() + e.v)]) out.push_back(id);
  }
  return out;
}

CertificateCheck check_certificate(const MepvcbInstance& inst, const Certificate& cert) {
  const BipartiteGraph& g = inst.graph;
  auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };

  VertexSet chosen = cert.chosen;
  std::sort(chosen.begin(), chosen.end());
  if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) return fail("chosen set has duplicates");
  for (Vertex x : chosen) {
    if (!g.contains(x)) return fail("vertex " + to_string(x) + " out of range");
  }
  if (static_cast<int>(chosen.size()) > inst.k1) {
    return fail("chose " + std::to_string(chosen.size()) + " vertices > k1 = " + std::to_string(inst.k1));
  }
  EdgeSet covered = cert.covered;
  std::sort(covered.begin(), covered.end());
  if (covered != covered_edges(g, chosen)) return fail("covered set differs from the edges covered by chosen");

  for (int id : cert.matching) {
    if (!std::binary_search(covered.begin(), covered.end(), id)) return fail("matching edge outside covered set");
  }
  if (!is_matching(g, cert.matching)) return fail("not a matching");

  const Weight cw = g.weight_of(covered);
  const Weight mw = g.weight_of(cert.matching);
  if (cw != cert.covered_weight) return fail("covered_weight does not match edge weights");
  if (mw != cert.matching_weight) return fail("matching_weight does not match edge weights");
  if (cw < inst.k2) return fail("covered weight " + std::to_string(cw) + " < " + std::to_string(inst.k2));
  if (mw < inst.k3) return fail("matching weight " + std::to_string(mw) + " < " + std::to_string(inst.k3));
  return {};
}

Certificate certify(const BipartiteGraph& g, VertexSet chosen) {
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  Certificate cert;
  cert.covered = covered_edges(g, chosen);
  cert.chosen = std::move(chosen);
  cert.covered_weight = g.weight_of(cert.covered);
  Matching m = max_weight_matching_within(g, cert.covered);
  cert.matching = std::move(m.edges);
  cert.matching_weight = m.total_weight;
  return cert;
}

Certificate rebase_certificate(const BipartiteGraph& from, const BipartiteGraph& to, const Certificate& cert) {
  Certificate out;
  out.chosen = cert.chosen;
  out.covered = covered_edges(to, out.chosen);
  out.covered_weight = to.weight_of(out.covered);
  for (int id : cert.matching) {
    const Edge& e = from.edge(id);
    auto mapped = to.find_edge(e.u, e.v);
    if (!mapped) throw PreconditionError("certificate edge missing from target graph");
    out.matching.push_back(*mapped);
  }
  std::sort(out.matching.begin(), out.matching.end());
  out.matching_weight = to.weight_of(out.matching);
  return out;
}

namespace {

// Eccentricities inside each component by BFS from every vertex.
void radius_and_diameter(const BipartiteGraph& g, GraphStats& s) {
  const int n = g.vertex_count();
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int components = 0;
  for (int start = 0; start < n; ++start) {
    if (component[static_cast<std::size_t>(start)] >= 0) continue;
    std::deque<int> queue{start};
    component[static_cast<std::size_t>(start)] = components;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int id : g.incident(g.vertex_at(x))) {
        const Edge& e = g.edge(id);
        int y = x < g.left_count() ? g.left_count() + e.v : e.u;
        if (component[static_cast<std::size_t>(y)] < 0) {
          component[static_cast<std::size_t>(y)] = components;
          queue.push_back(y);
        }
      }
    }
    ++components;
  }
  s.disconnected = components > 1;

  std::vector<int> radius(static_cast<std::size_t>(components), std::numeric_limits<int>::max());
  std::vector<int> diameter(static_cast<std::size_t>(components), 0);
  std::vector<int> dist(static_cast<std::size_t>(n));
  for (int start = 0; start < n; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(start)] = 0;
    std::deque<int> queue{start};
    int ecc = 0;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      ecc = std::max(ecc, dist[static_cast<std::size_t>(x)]);
      for (int id : g.incident(g.vertex_at(x))) {
        const Edge& e = g.edge(id);
        int y = x < g.left_count() ? g.left_count() + e.v : e.u;
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          queue.push_back(y);
        }
      }
    }
    const auto c = static_cast<std::size_t>(component[static_cast<std::size_t>(start)]);
    radius[c] = std::min(radius[c], ecc);
    diameter[c] = std::max(diameter[c], ecc);
  }
  for (int c = 0; c < components; ++c) {
    s.radius = std::max(s.radius, radius[static_cast<std::size_t>(c)]);
    s.diameter = std::max(s.diameter, diameter[static_cast<std::size_t>(c)]);
  }
}

}  // namespace

GraphStats graph_stats(const BipartiteGraph& g, int induced_matching_cap) {
  GraphStats s;
  s.vertex_count = g.vertex_count();
  s.edge_count = g.edge_count();
  s.max_degree = g.max_degree();
  s.nu = static_cast<int>(max_cardinality_matching(g).edges.size());
  s.tau = static_cast<int>(min_vertex_cover(g).size());
  s.alpha = s.vertex_count - s.tau;
  if (g.vertex_count() <= induced_matching_cap) s.nu_ind = max_induced_matching(g, induced_matching_cap);
  for (int f = 0; f < g.vertex_count(); ++f) {
    const int d = g.degree(g.vertex_at(f));
    if (d == 0) ++s.degree0;
    if (d == 1) ++s.degree1;
    if (d == 2) ++s.degree2;
    if (d >= 2) ++s.degree_at_least2;
    if (d >= 3) ++s.degree_at_least3;
  }
  radius_and_diameter(g, s);
  return s;
}

// ---------------------------------------------------------------------------
// Instance files

namespace {

json parse_document(std::string_view text, std::string_view expected_kind) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("document must be a JSON object");
  if (!expected_kind.empty()) {
    auto it = doc.find("kind");
    if (it == doc.end() || !it->is_string()) throw InputError("field 'kind': missing or not a string");
    if (it->get<std::string>() != expected_kind) {
      throw InputError("field 'kind': expected '" + std::string(expected_kind) + "', found '" +
                       it->get<std::string>() + "'");
    }
  }
  return doc;
}

Weight integer_value(const json& value, const std::string& where) {
  if (value.is_number_unsigned()) {
    auto u = value.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Weight>::max())) {
      throw InputError("field '" + where + "': integer out of range");
    }
    return static_cast<Weight>(u);
  }
  if (value.is_number_integer()) return value.get<std::int64_t>();
  throw InputError("field '" + where + "': expected an integer");
}

Weight integer_field(const json& doc, const std::string& name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw InputError("field '" + name + "': missing");
  return integer_value(*it, name);
}

int count_field(const json& doc, const std::string& name) {
  Weight v = integer_field(doc, name);
  if (v < 0 || v > std::numeric_limits<int>::max()) throw InputError("field '" + name + "': out of range");
  return static_cast<int>(v);
}

std::vector<Weight> integer_list(const json& doc, const std::string& name) {
  auto it = doc.find(name);
  if (it == doc.end() || !it->is_array()) throw InputError("field '" + name + "': missing or not a list");
  std::vector<Weight> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    out.push_back(integer_value((*it)[i], name + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string join(const std::vector<Weight>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

}  // namespace

MepvcbInstance parse_instance(std::string_view text) {
  json doc = parse_document(text, "mepvcb");
  const int left = count_field(doc, "left");
  const int right = count_field(doc, "right");
  auto edges_it = doc.find("edges");
  if (edges_it == doc.end() || !edges_it->is_array()) throw InputError("field 'edges': missing or not a list");

  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < edges_it->size(); ++i) {
    const json& item = (*edges_it)[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!item.is_array() || item.size() != 3) throw InputError("field '" + where + "': expected [u, v, w]");
    const Weight u = integer_value(item[0], where + "[0]");
    const Weight v = integer_value(item[1], where + "[1]");
    const Weight w = integer_value(item[2], where + "[2]");
    if (u < 0 || u >= left) throw InputError("field '" + where + "': left vertex " + std::to_string(u) + " out of range");
    if (v < 0 || v >= right) throw InputError("field '" + where + "': right vertex " + std::to_string(v) + " out of range");
    if (w < 0) throw InputError("field '" + where + "': negative weight");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    seen.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  std::vector<std::pair<int, int>> sorted = seen;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    auto pos = std::find(seen.begin(), seen.end(), *dup);
    auto second = std::find(pos + 1, seen.end(), *dup);
    throw InputError("field 'edges[" + std::to_string(second - seen.begin()) + "]': duplicate edge (" +
                     std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");
  }

  MepvcbInstance inst;
  inst.graph = BipartiteGraph(left, right, std::move(edges));
  const Weight k1 = integer_field(doc, "k1");
  inst.k2 = integer_field(doc, "k2");
  inst.k3 = integer_field(doc, "k3");
  if (k1 < 1) throw InputError("field 'k1': threshold must be positive");
  if (k1 > inst.graph.vertex_count()) throw InputError("field 'k1': exceeds |V| = " + std::to_string(inst.graph.vertex_count()));
  if (inst.k2 < 1) throw InputError("field 'k2': threshold must be positive");
  if (inst.k3 < 1) throw InputError("field 'k3': threshold must be positive");
  inst.k1 = static_cast<int>(k1);
  return inst;
}

std::string serialize(const MepvcbInstance& inst) {
  std::ostringstream out;
  out << "{\n  \"kind\": \"mepvcb\",\n  \"left\": " << inst.graph.left_count()
      << ",\n  \"right\": " << inst.graph.right_count() << ",\n  \"edges\": [";
  const auto edges = inst.graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << '[' << edges[i].u << ", " << edges[i].v << ", " << edges[i].w << ']';
  }
  out << (edges.empty() ? "]" : "\n  ]");
  out << ",\n  \"k1\": " << inst.k1 << ",\n  \"k2\": " << inst.k2 << ",\n  \"k3\": " << inst.k3 << "\n}\n";
  return out.str();
}

BkpInstance parse_bkp(std::string_view text) {
  json doc = parse_document(text, "bkp");
  BkpInstance bkp;
  bkp.profits1 = integer_list(doc, "profits1");
  bkp.profits2 = integer_list(doc, "profits2");
  bkp.budget = count_field(doc, "budget");
  bkp.threshold1 = integer_field(doc, "threshold1");
  bkp.threshold2 = integer_field(doc, "threshold2");
  auto it = doc.find("cardinality");
  if (it == doc.end() || !it->is_string()) throw InputError("field 'cardinality': missing or not a string");
  const auto mode = it->get<std::string>();
  if (mode == "exactly") {
    bkp.mode = CardinalityMode::ExactlyB;
  } else if (mode == "at_most") {
    bkp.mode = CardinalityMode::AtMostB;
  } else {
    throw InputError("field 'cardinality': expected 'exactly' or 'at_most'");
  }
  validate(bkp);
  return bkp;
}

std::string serialize(const BkpInstance& bkp) {
  std::ostringstream out;
  out << "{\n  \"kind\": \"bkp\",\n  \"profits1\": " << join(bkp.profits1) << ",\n  \"profits2\": " << join(bkp.profits2)
      << ",\n  \"budget\": " << bkp.budget << ",\n  \"threshold1\": " << bkp.threshold1
      << ",\n  \"threshold2\": " << bkp.threshold2 << ",\n  \"cardinality\": \""
      << (bkp.mode == CardinalityMode::ExactlyB ? "exactly" : "at_most") << "\"\n}\n";
  return out.str();
}

SubsetSumInstance parse_subsetsum(std::string_view text) {
  json doc = parse_document(text, "subsetsum");
  SubsetSumInstance ss;
  ss.values = integer_list(doc, "values");
  ss.target = integer_field(doc, "target");
  ss.size = count_field(doc, "size");
  validate(ss);
  return ss;
}

std::string serialize(const SubsetSumInstance& ss) {
  std::ostringstream out;
  out << "{\n  \"kind\": \"subsetsum\",\n  \"values\": " << join(ss.values) << ",\n  \"target\": " << ss.target
      << ",\n  \"size\": " << ss.size << "\n}\n";
  return out.str();
}

std::string document_kind(std::string_view text) {
  json doc = parse_document(text, "");
  auto it = doc.find("kind");
  if (it == doc.end() || !it->is_string()) throw InputError("field 'kind': missing or not a string");
  return it->get<std::string>();
}

std::string digest(std::string_view canonical_text) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mepvcb

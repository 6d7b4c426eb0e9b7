#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mepvcb/errors.hpp"

namespace mepvcb {

enum class Side : std::uint8_t { Left, Right };

/// A vertex is addressed by its side and its index within that side.
struct Vertex {
  Side side = Side::Left;
  int index = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline Vertex left_vertex(int i) { return {Side::Left, i}; }
inline Vertex right_vertex(int j) { return {Side::Right, j}; }

std::string to_string(Vertex v);

/// Edge from left vertex `u` to right vertex `v`.
struct Edge {
  int u = 0;
  int v = 0;
  Weight w = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

using VertexSet = std::vector<Vertex>;  // sorted, duplicate-free
using EdgeSet = std::vector<int>;       // sorted edge ids

/// Simple bipartite graph with non-negative integer edge weights.
///
/// Edges are kept sorted by (u, v); an edge id is its position in that order,
/// so ids are canonical for a given edge set. Vertices also have a "flat" id:
/// left i -> i, right j -> left_count + j.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  /// Validates ids, duplicates and weights; throws InputError.
  BipartiteGraph(int left_count, int right_count, std::vector<Edge> edges);

  int left_count() const { return left_count_; }
  int right_count() const { return right_count_; }
  int vertex_count() const { return left_count_ + right_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

  int flat(Vertex x) const { return x.side == Side::Left ? x.index : left_count_ + x.index; }
  Vertex vertex_at(int flat_id) const {
    return flat_id < left_count_ ? left_vertex(flat_id) : right_vertex(flat_id - left_count_);
  }
  bool contains(Vertex x) const {
    return x.index >= 0 && x.index < (x.side == Side::Left ? left_count_ : right_count_);
  }

  /// Incident edge ids of a vertex, ascending.
  std::span<const int> incident(Vertex x) const { return incident_[static_cast<std::size_t>(flat(x))]; }
  int degree(Vertex x) const { return static_cast<int>(incident(x).size()); }
  int max_degree() const { return max_degree_; }
  Weight total_weight() const { return total_weight_; }
  Weight weight_of(std::span<const int> edge_ids) const;
  bool has_zero_weight_edge() const;

  std::optional<int> find_edge(int u, int v) const;

  /// Flat ids of every vertex with degree >= 1.
  std::vector<int> non_isolated() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.left_count_ == b.left_count_ && a.right_count_ == b.right_count_ && a.edges_ == b.edges_;
  }

 private:
  int left_count_ = 0;
  int right_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  int max_degree_ = 0;
  Weight total_weight_ = 0;
};

/// Same vertex set with every weight-0 edge dropped.
BipartiteGraph without_zero_weight_edges(const BipartiteGraph& g);

/// The decision record (G, w, k1, k2, k3).
struct MepvcbInstance {
  BipartiteGraph graph;
  int k1 = 1;     // vertex budget
  Weight k2 = 1;  // coverage threshold
  Weight k3 = 1;  // matching weight threshold

  friend bool operator==(const MepvcbInstance&, const MepvcbInstance&) = default;
};

/// Throws InputError unless k1 in [1, |V|] and k2, k3 >= 1.
void validate(const MepvcbInstance& inst);

enum class CardinalityMode : std::uint8_t { ExactlyB, AtMostB };

struct BkpInstance {
  std::vector<Weight> profits1;
  std::vector<Weight> profits2;
  int budget = 1;
  Weight threshold1 = 0;
  Weight threshold2 = 0;
  CardinalityMode mode = CardinalityMode::AtMostB;

  std::size_t item_count() const { return profits1.size(); }
  friend bool operator==(const BkpInstance&, const BkpInstance&) = default;
};

void validate(const BkpInstance& bkp);

struct SubsetSumInstance {
  std::vector<Weight> values;
  Weight target = 0;
  int size = 1;

  friend bool operator==(const SubsetSumInstance&, const SubsetSumInstance&) = default;
};

void validate(const SubsetSumInstance& ss);

/// A claimed solution: chosen vertices, the edges they cover and a matching
/// inside the covered edges.
struct Certificate {
  VertexSet chosen;
  EdgeSet covered;
  EdgeSet matching;
  Weight covered_weight = 0;
  Weight matching_weight = 0;
};

struct Verdict {
  std::optional<Certificate> certificate;  // engaged iff the answer is Yes
  std::string method;

  bool yes() const { return certificate.has_value(); }
};

struct CertificateCheck {
  bool valid = true;
  std::string violation;
};

/// Edges with at least one endpoint in `chosen`. Throws PreconditionError on
/// out-of-range vertices.
EdgeSet covered_edges(const BipartiteGraph& g, std::span<const Vertex> chosen);

CertificateCheck check_certificate(const MepvcbInstance& inst, const Certificate& cert);

/// Builds the certificate of a vertex set: its covered edges and a maximum
/// weight matching among them.
Certificate certify(const BipartiteGraph& g, VertexSet chosen);

/// Moves a certificate onto a graph with the same vertex set that contains
/// every certificate edge (matched by endpoints). Covered edges are recomputed.
Certificate rebase_certificate(const BipartiteGraph& from, const BipartiteGraph& to, const Certificate& cert);

struct GraphStats {
  int vertex_count = 0;
  int edge_count = 0;
  int max_degree = 0;
  int tau = 0;
  int nu = 0;
  int alpha = 0;
  std::optional<int> nu_ind;  // absent when |V| exceeds the cap
  int radius = 0;
  int diameter = 0;
  bool disconnected = false;
  int degree0 = 0;
  int degree1 = 0;
  int degree2 = 0;
  int degree_at_least2 = 0;
  int degree_at_least3 = 0;
};

inline constexpr int kDefaultInducedMatchingCap = 24;

GraphStats graph_stats(const BipartiteGraph& g, int induced_matching_cap = kDefaultInducedMatchingCap);

// Instance files. All three kinds are JSON documents tagged by a "kind"
// field; serialization is canonical (sorted edges, fixed key order).
MepvcbInstance parse_instance(std::string_view text);
std::string serialize(const MepvcbInstance& inst);
BkpInstance parse_bkp(std::string_view text);
std::string serialize(const BkpInstance& bkp);
SubsetSumInstance parse_subsetsum(std::string_view text);
std::string serialize(const SubsetSumInstance& ss);

/// Returns "mepvcb", "bkp" or "subsetsum" for a document; throws InputError.
std::string document_kind(std::string_view text);

/// Short stable hex digest of a canonical serialization.
std::string digest(std::string_view canonical_text);

}  // namespace mepvcb

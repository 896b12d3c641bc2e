#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kforge/matrix.hpp"

namespace kforge {

// Edge count between two vertices: a natural number or countably infinite.
class Multiplicity {
 public:
  Multiplicity() = default;
  Multiplicity(long n);  // NOLINT(google-explicit-constructor)
  explicit Multiplicity(Integer n);
  static Multiplicity infinite();

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && count_ == 0; }
  // finite count; throws for infinite
  const Integer& count() const;
  // true when the multiplicity is infinite or at least k
  bool at_least(const Integer& k) const { return infinite_ || count_ >= k; }
  std::string to_string() const;

  bool operator==(const Multiplicity& other) const = default;

 private:
  bool infinite_ = false;
  Integer count_ = 0;
};

struct Edge {
  std::size_t src;
  std::size_t dst;
  Multiplicity mult;
};

class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : member_(universe, false) {}
  VertexSet(std::size_t universe, const std::vector<std::size_t>& members);
  static VertexSet all(std::size_t universe);

  std::size_t universe() const { return member_.size(); }
  bool contains(std::size_t v) const { return member_.at(v); }
  void insert(std::size_t v) { member_.at(v) = true; }
  void erase(std::size_t v) { member_.at(v) = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> members() const;
  VertexSet complement() const;
  bool subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;
  VertexSet united(const VertexSet& other) const;

  bool operator==(const VertexSet& other) const = default;

 private:
  std::vector<bool> member_;
};

class Graph {
 public:
  Graph() = default;
  // Each (src, dst) pair may appear at most once.
  Graph(std::vector<std::string> labels, const std::vector<Edge>& edges);
  // counts(src, dst) = number of edges src -> dst
  static Graph from_counts(std::vector<std::string> labels, const IntMatrix& counts);
  static std::vector<std::string> numbered_labels(std::size_t n, std::size_t first = 0);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  std::optional<std::size_t> find(std::string_view label) const;

  const Multiplicity& mult(std::size_t src, std::size_t dst) const { return mult_[src * size() + dst]; }
  // nonzero edges, ordered by (src, dst)
  std::vector<Edge> edges() const;

  bool is_sink(std::size_t v) const;
  bool is_infinite_emitter(std::size_t v) const;
  bool is_regular(std::size_t v) const { return !is_sink(v) && !is_infinite_emitter(v); }
  std::vector<std::size_t> regular_vertices() const;
  std::vector<std::size_t> singular_vertices() const;
  bool row_finite() const;

  // Vertices in `keep` (in that order) and all edges among them.
  Graph induced(const std::vector<std::size_t>& keep) const;
  Graph relabeled(std::vector<std::string> labels) const;

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Multiplicity> mult_;
};

// R(v, w) = number of edges w -> v; rows all vertices, columns regular ones.
IntMatrix regular_vertex_matrix(const Graph& e);
// Inclusion of the regular columns: I'(v, w) = [v == w].
IntMatrix regular_inclusion(const Graph& e);

struct SubsetAnalysis {
  bool hereditary = false;
  bool saturated = false;
  VertexSet breaking;  // singular in the graph, regular in the quotient graph
};

SubsetAnalysis analyze_subset(const Graph& e, const VertexSet& h);
VertexSet saturation_closure(const Graph& e, const VertexSet& h);
VertexSet hereditary_closure(const Graph& e, const VertexSet& h);

struct Split {
  Graph ideal;          // H with every edge leaving H
  Graph quotient;       // complement with the edges that avoid H
  IntMatrix x;          // edges from quotient-regular vertices into H
  std::vector<std::size_t> order;  // original indices: H first, then the rest
};

Split split_at(const Graph& e, const VertexSet& h);

struct GaugeIdeal {
  VertexSet hereditary;
  VertexSet breaking;
  bool operator==(const GaugeIdeal& other) const = default;
};

struct Budget {
  std::size_t lattice_vertices = 12;
  // KFORGE_BUDGET overrides the vertex bound.
  static Budget from_environment();
};

std::vector<GaugeIdeal> gauge_ideal_lattice(const Graph& e, const Budget& budget = {});
bool ideal_leq(const GaugeIdeal& a, const GaugeIdeal& b);

// One parallel edge: the `ordinal`-th of the edges src -> dst.
struct EdgeRef {
  std::size_t src;
  std::size_t dst;
  Integer ordinal;
  bool operator==(const EdgeRef& other) const = default;
};

// Per-vertex certificate: edges e_0..e_n and the support set, which is
// {r(e_k) : k >= 1} on the left and {s(e_k) : k >= 1} on the right.
struct VertexWitness {
  std::size_t v0;
  std::vector<EdgeRef> edges;
  VertexSet support;
};

enum class Side { Left, Right };

struct AdhesiveWitness {
  Side side;
  std::string rule;  // which test produced it
  std::vector<VertexWitness> vertices;
};

std::optional<AdhesiveWitness> left_adhesive(const Graph& e);
std::optional<AdhesiveWitness> right_adhesive(const Graph& e);
// Independent re-check of a certificate against the definition.
bool validate_witness(const Graph& e, const AdhesiveWitness& w);

// A' with (R - I') A' - I >= 0, columns indexed by all vertices.
IntMatrix left_dominator(const Graph& e, const AdhesiveWitness& w);
// B' with B' (R - I') - I >= 0, rows indexed by regular vertices.
IntMatrix right_dominator(const Graph& e, const AdhesiveWitness& w);

struct StructureFlags {
  bool transitive = false;
  bool condition_k = false;
  bool has_cycle = false;
  std::optional<AdhesiveWitness> left;
  std::optional<AdhesiveWitness> right;
};

StructureFlags structure_flags(const Graph& e);
bool is_transitive(const Graph& e);
bool has_cycle(const Graph& e);
bool condition_k(const Graph& e);
// v -> w by a path of positive length
std::vector<std::vector<bool>> reachability(const Graph& e);

}  // namespace kforge

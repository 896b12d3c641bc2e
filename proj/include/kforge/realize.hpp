#pragma once

#include <optional>
#include <utility>

#include "kforge/graph.hpp"
#include "kforge/group.hpp"

namespace kforge {

enum class RealizationClass { SimplePurelyInfinite, Unital, UnitalDominated, CuntzKrieger };

struct RealizationRequest {
  FgaGroup group;
  std::size_t k1_rank = 0;
  // canonical coordinates of the unit class; zero when absent
  std::optional<IntVector> unit;
  RealizationClass cls = RealizationClass::Unital;
};

struct Realization {
  Graph graph;
  // K0(graph) -> standard presentation of the requested group
  Homomorphism k0_iso;
  // (v, w): row w of R - I' lies strictly below row v on every regular column
  std::optional<std::pair<std::size_t, std::size_t>> dominated_pair;
  // intermediate matrices of the construction, where applicable
  IntMatrix a0, p, q, a;
  IntVector normalized_unit;
};

// diag(1, m_1..m_k, 0..0) of shape (1+k+n) x (1+k+n'), n' = k1_rank
IntMatrix presentation_matrix(const FgaGroup& g, std::size_t k1_rank);

Realization realize_unital(const RealizationRequest& req);
Realization realize_unital_dominated(const RealizationRequest& req);
Realization realize_simple_pi(const RealizationRequest& req);
Realization realize_cuntz_krieger(const RealizationRequest& req);
// Dispatches on req.cls.
Realization realize(const RealizationRequest& req);

struct RealizationReport {
  bool k_theory = false;        // K0 and K1 have the requested shape
  bool iso = false;             // k0_iso is an isomorphism out of K0(graph)
  bool unit = false;            // the unit class lands on the requested unit
  bool loops = false;           // every vertex carries at least two loops
  bool transitive = false;
  bool vertex_bound = false;    // at least k + n vertices
  bool dominated = true;        // dominated pair valid, when one is claimed
  bool passed() const { return k_theory && iso && unit && loops && transitive && vertex_bound && dominated; }
};

RealizationReport verify_realization(const RealizationRequest& req, const Realization& r);

struct HeadTailOptions {
  std::size_t tail_length = 1;  // path appended after each sink
  std::size_t head_length = 1;  // path prepended before each source
};

Graph add_heads_tails(const Graph& e, const HeadTailOptions& opts = {});

// k isolated vertices: K0 = Z^k with the simplicial cone
Graph simplicial_graph(std::size_t k);
// K0 = Z with [1] = n (n >= 1): one vertex, or v with n-1 edges to a sink w
Graph integer_unit_graph(const Integer& n);

}  // namespace kforge

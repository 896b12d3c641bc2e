#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kforge/graph.hpp"
#include "kforge/ktheory.hpp"
#include "kforge/sequence.hpp"
#include "kforge/splice.hpp"

namespace kforge {

enum class RangeClass {
  LargestAf,     // AF largest ideal, purely infinite quotient
  SmallestAf,    // purely infinite smallest ideal, AF quotient
  UniqueIdeal,   // exactly one nontrivial ideal
  Unital,        // unique ideal, finitely many vertices, with a unit class
  CuntzKrieger,  // unique ideal, finite graph without sinks or sources
};

// Ideal, then quotient: Inf = purely infinite simple, One = AF.
enum class IdealType { InfInf, OneInf, InfOne, OneOne };

struct RangeCase {
  RangeClass cls = RangeClass::UniqueIdeal;
  IdealType type = IdealType::InfInf;
};

std::string case_name(const RangeCase& c);

struct OrderedSixTerm {
  SixTermSequence seq;
  std::array<OrderTag, 3> tags;  // G1, G2, G3
  std::optional<IntVector> unit;  // element of G2
};

struct Verdict {
  bool admissible = true;
  // each entry starts with the condition label, e.g. "(4)" or "(d0)"
  std::vector<std::string> violations;
  std::optional<std::size_t> vertex_count;
};

// Whether the cone is all of g. Throws UnsupportedOrderTag for Unknown.
bool cone_is_everything(const OrderTag& tag, const PresentedGroup& g);
// Strict positivity for rank-one cones; the first ambient generator with a
// nonzero coordinate is positive.
bool strictly_positive(const OrderTag& tag, const PresentedGroup& g, const IntVector& x);
// Structural equality of cones on the same group; a lexicographic cone over
// a trivial subgroup cone equals the pull-back of the quotient cone.
bool same_cone(const OrderTag& a, const OrderTag& b, const Homomorphism& gam, const PresentedGroup& g3);

Verdict check_range(const RangeCase& c, const OrderedSixTerm& t);

enum class PermanenceFlavor { Stable, UnitalPurelyInfinite, CuntzKrieger };

Verdict permanence(const OrderedSixTerm& t, PermanenceFlavor flavor);

struct RangeRealization {
  Graph graph;
  VertexSet ideal;
  SpliceTarget target;
  SpliceOutput splice;
  SpliceReport report;
  OrderedSixTerm produced;  // recomputed from the graph
  Verdict roundtrip;        // check_range on the produced invariant
  std::string route;
};

// Graph with an ideal whose ordered six-term sequence is isomorphic to t.
// Throws if t is inadmissible or falls outside the supported cones.
RangeRealization realize_range(const RangeCase& c, const OrderedSixTerm& t, const Budget& budget = {});

// Ordered invariant of a graph at h, with tags from the graph structure.
OrderedSixTerm graph_invariant(const Graph& e, const VertexSet& h, const RangeCase& c, const Budget& budget = {});

}  // namespace kforge

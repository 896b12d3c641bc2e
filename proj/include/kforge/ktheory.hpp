#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "kforge/graph.hpp"
#include "kforge/group.hpp"
#include "kforge/sequence.hpp"

namespace kforge {

// R - I' for a graph: the presentation matrix of its K-theory.
IntMatrix k_matrix(const Graph& e);

struct KPair {
  PresentedGroup k0;    // cokernel of k_matrix
  IntMatrix k1_basis;   // kernel basis of k_matrix
  std::size_t k1_rank() const { return k1_basis.cols(); }
};

KPair k_groups(const Graph& e);

// rank K0 + |regular| == rank K1 + |vertices|
bool rank_identity(const Graph& e);

struct UnitClass {
  IntVector ambient;    // all-ones
  IntVector canonical;  // canonical coordinates in K0
};

UnitClass unit_class(const Graph& e);

// Six-term sequence of [[a, y], [0, b]]. Kernel groups are free and use
// the coordinates of kernel_basis of the respective matrix.
SixTermSequence snake(const IntMatrix& a, const IntMatrix& b, const IntMatrix& y);

struct SixTermResult {
  SixTermSequence seq;
  Split split;
};

SixTermResult six_term(const Graph& e, const VertexSet& h);

// Positive-cone descriptions for K0 groups.
class OrderTag {
 public:
  enum class Kind { Trivial, Simplicial, ZPlus, PulledBack, Lex, Unknown };

  static OrderTag trivial();
  static OrderTag simplicial(std::size_t rank);
  static OrderTag zplus();
  // {x : via(x) in base cone}; base may not be Unknown
  static OrderTag pulled_back(Homomorphism via, OrderTag base);
  // eps(G1+) together with {x : gam(x) > 0}
  static OrderTag lex(OrderTag sub, OrderTag quot);
  static OrderTag unknown();

  Kind kind() const { return kind_; }
  std::size_t rank() const { return rank_; }
  const Homomorphism& via() const;
  const OrderTag& base() const;
  const OrderTag& sub() const;
  const OrderTag& quot() const;
  std::string describe() const;

 private:
  OrderTag(Kind k) : kind_(k) {}
  Kind kind_;
  std::size_t rank_ = 0;
  std::shared_ptr<const Homomorphism> via_;
  std::shared_ptr<const OrderTag> first_;
  std::shared_ptr<const OrderTag> second_;
};

enum class ConeCase {
  // ideal purely infinite simple, real rank zero
  SimpleIdeal,
  // largest ideal with purely infinite simple quotient
  LargestIdeal,
  None,
};

// Positive cone of K0(E) for the extension at h, when one of the known
// cases applies. Throws HypothesesNotEvidenced if the graph does not show
// the hypotheses of the requested case.
OrderTag cone_tag(const Graph& e, const VertexSet& h, ConeCase which, const Budget& budget = {});

// Order tag of a graph that is either acyclic (simplicial on the singular
// vertices) or transitive with a cycle (trivial). Empty otherwise.
std::optional<OrderTag> simple_graph_tag(const Graph& e);

}  // namespace kforge

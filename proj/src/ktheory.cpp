#include "kforge/ktheory.hpp"

#include "kforge/error.hpp"

namespace kforge {

IntMatrix k_matrix(const Graph& e) { return regular_vertex_matrix(e) - regular_inclusion(e); }

KPair k_groups(const Graph& e) {
  IntMatrix m = k_matrix(e);
  return {cokernel(m), kernel_basis(m)};
}

bool rank_identity(const Graph& e) {
  KPair k = k_groups(e);
  return k.k0.canonical().free_rank + e.regular_vertices().size() == k.k1_rank() + e.size();
}

UnitClass unit_class(const Graph& e) {
  UnitClass u;
  u.ambient = ones_vector(e.size());
  u.canonical = cokernel(k_matrix(e)).coordinates(u.ambient);
  return u;
}

SixTermSequence snake(const IntMatrix& a, const IntMatrix& b, const IntMatrix& y) {
  const std::size_t n1 = a.rows(), n1p = a.cols(), n3 = b.rows(), n3p = b.cols();
  IntMatrix x = IntMatrix::block_upper(a, y, b);
  PresentedGroup g1 = cokernel(a), g2 = cokernel(x), g3 = cokernel(b);
  IntMatrix ka = kernel_basis(a), kx = kernel_basis(x), kb = kernel_basis(b);
  PresentedGroup f1 = PresentedGroup::free(ka.cols());
  PresentedGroup f2 = PresentedGroup::free(kx.cols());
  PresentedGroup f3 = PresentedGroup::free(kb.cols());

  IntMatrix inc = IntMatrix::vcat(IntMatrix::identity(n1), IntMatrix(n3, n1));
  IntMatrix proj = IntMatrix::hcat(IntMatrix(n3, n1), IntMatrix::identity(n3));

  HermiteForm kx_form = hermite(kx);
  IntMatrix eps_p(kx.cols(), ka.cols());
  for (std::size_t c = 0; c < ka.cols(); ++c) {
    auto coords = solve_linear(kx_form, concat(ka.column(c), zero_vector(n3p)));
    if (!coords) throw Error(ErrorCode::VerificationFailed, "kernel inclusion");
    eps_p.set_column(c, *coords);
  }
  HermiteForm kb_form = hermite(kb);
  IntMatrix gam_p(kb.cols(), kx.cols());
  for (std::size_t c = 0; c < kx.cols(); ++c) {
    auto coords = solve_linear(kb_form, slice(kx.column(c), n1p, n3p));
    if (!coords) throw Error(ErrorCode::VerificationFailed, "kernel projection");
    gam_p.set_column(c, *coords);
  }
  return SixTermSequence(Homomorphism(g1, g2, inc), Homomorphism(g2, g3, proj), Homomorphism::zero(g3, f1),
                         Homomorphism(f1, f2, eps_p), Homomorphism(f2, f3, gam_p), Homomorphism(f3, g1, y * kb));
}

SixTermResult six_term(const Graph& e, const VertexSet& h) {
  Split s = split_at(e, h);
  return {snake(k_matrix(s.ideal), k_matrix(s.quotient), s.x), std::move(s)};
}

OrderTag OrderTag::trivial() { return OrderTag(Kind::Trivial); }

OrderTag OrderTag::simplicial(std::size_t rank) {
  OrderTag t(Kind::Simplicial);
  t.rank_ = rank;
  return t;
}

OrderTag OrderTag::zplus() {
  OrderTag t(Kind::ZPlus);
  t.rank_ = 1;
  return t;
}

OrderTag OrderTag::pulled_back(Homomorphism via, OrderTag base) {
  if (base.kind() == Kind::Unknown) throw Error(ErrorCode::UnsupportedOrderTag, "pull-back of an unknown cone");
  OrderTag t(Kind::PulledBack);
  t.via_ = std::make_shared<const Homomorphism>(std::move(via));
  t.first_ = std::make_shared<const OrderTag>(std::move(base));
  return t;
}

OrderTag OrderTag::lex(OrderTag sub, OrderTag quot) {
  OrderTag t(Kind::Lex);
  t.first_ = std::make_shared<const OrderTag>(std::move(sub));
  t.second_ = std::make_shared<const OrderTag>(std::move(quot));
  return t;
}

OrderTag OrderTag::unknown() { return OrderTag(Kind::Unknown); }

const Homomorphism& OrderTag::via() const {
  if (!via_) throw Error(ErrorCode::InvalidInput, "tag has no pull-back map");
  return *via_;
}

const OrderTag& OrderTag::base() const {
  if (kind_ != Kind::PulledBack) throw Error(ErrorCode::InvalidInput, "tag is not a pull-back");
  return *first_;
}

const OrderTag& OrderTag::sub() const {
  if (kind_ != Kind::Lex) throw Error(ErrorCode::InvalidInput, "tag is not lexicographic");
  return *first_;
}

const OrderTag& OrderTag::quot() const {
  if (kind_ != Kind::Lex) throw Error(ErrorCode::InvalidInput, "tag is not lexicographic");
  return *second_;
}

std::string OrderTag::describe() const {
  switch (kind_) {
    case Kind::Trivial: return "trivial";
    case Kind::Simplicial: return "simplicial(" + std::to_string(rank_) + ")";
    case Kind::ZPlus: return "zplus";
    case Kind::PulledBack: return "pulled_back(" + first_->describe() + ")";
    case Kind::Lex: return "lex(" + first_->describe() + ", " + second_->describe() + ")";
    case Kind::Unknown: return "unknown";
  }
  return "?";
}

std::optional<OrderTag> simple_graph_tag(const Graph& e) {
  if (e.size() == 0) return std::nullopt;
  if (!has_cycle(e)) return OrderTag::simplicial(e.singular_vertices().size());
  if (is_transitive(e) && condition_k(e)) return OrderTag::trivial();
  return std::nullopt;
}

OrderTag cone_tag(const Graph& e, const VertexSet& h, ConeCase which, const Budget& budget) {
  if (which == ConeCase::None) return OrderTag::unknown();
  SixTermResult st = six_term(e, h);
  auto quotient_tag = simple_graph_tag(st.split.quotient);
  if (which == ConeCase::LargestIdeal) {
    if (!quotient_tag || quotient_tag->kind() != OrderTag::Kind::Trivial)
      throw Error(ErrorCode::HypothesesNotEvidenced, "quotient graph is not transitive with condition (K) and a cycle");
    GaugeIdeal mine{h, VertexSet(e.size())};
    for (const auto& g : gauge_ideal_lattice(e, budget)) {
      if (g.hereditary == VertexSet::all(e.size())) continue;
      if (!ideal_leq(g, mine))
        throw Error(ErrorCode::HypothesesNotEvidenced, "another proper ideal is not contained in the given one");
    }
    return OrderTag::trivial();
  }
  const Graph& ideal = st.split.ideal;
  if (ideal.size() == 0 || !is_transitive(ideal) || !has_cycle(ideal) || !condition_k(ideal))
    throw Error(ErrorCode::HypothesesNotEvidenced, "ideal graph is not transitive with condition (K) and a cycle");
  if (!condition_k(e)) throw Error(ErrorCode::HypothesesNotEvidenced, "graph fails condition (K)");
  if (!quotient_tag) throw Error(ErrorCode::HypothesesNotEvidenced, "quotient cone is not determined");
  return OrderTag::pulled_back(st.seq.gam(), *quotient_tag);
}

}  // namespace kforge

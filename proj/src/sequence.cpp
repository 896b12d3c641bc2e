#include "kforge/sequence.hpp"

#include "kforge/error.hpp"

namespace kforge {

std::string_view node_name(Node n) {
  switch (n) {
    case Node::G1: return "G1";
    case Node::G2: return "G2";
    case Node::G3: return "G3";
    case Node::F1: return "F1";
    case Node::F2: return "F2";
    case Node::F3: return "F3";
  }
  return "?";
}

namespace {

void require_link(const Homomorphism& in, const Homomorphism& out, Node at) {
  if (!in.codomain().same_presentation(out.domain()))
    throw Error(ErrorCode::ShapeMismatch, "maps do not meet at node " + std::string(node_name(at)));
}

}  // namespace

SixTermSequence::SixTermSequence(Homomorphism eps, Homomorphism gam, Homomorphism del0, Homomorphism eps_p,
                                 Homomorphism gam_p, Homomorphism del1)
    : eps_(std::move(eps)),
      gam_(std::move(gam)),
      del0_(std::move(del0)),
      eps_p_(std::move(eps_p)),
      gam_p_(std::move(gam_p)),
      del1_(std::move(del1)) {
  require_link(eps_, gam_, Node::G2);
  require_link(gam_, del0_, Node::G3);
  require_link(del0_, eps_p_, Node::F1);
  require_link(eps_p_, gam_p_, Node::F2);
  require_link(gam_p_, del1_, Node::F3);
  require_link(del1_, eps_, Node::G1);
}

const PresentedGroup& SixTermSequence::group(Node n) const { return outgoing(n).domain(); }

const Homomorphism& SixTermSequence::outgoing(Node n) const {
  switch (n) {
    case Node::G1: return eps_;
    case Node::G2: return gam_;
    case Node::G3: return del0_;
    case Node::F1: return eps_p_;
    case Node::F2: return gam_p_;
    case Node::F3: return del1_;
  }
  throw Error(ErrorCode::InvalidInput, "bad node");
}

const Homomorphism& SixTermSequence::incoming(Node n) const {
  switch (n) {
    case Node::G1: return del1_;
    case Node::G2: return eps_;
    case Node::G3: return gam_;
    case Node::F1: return del0_;
    case Node::F2: return eps_p_;
    case Node::F3: return gam_p_;
  }
  throw Error(ErrorCode::InvalidInput, "bad node");
}

SixTermSequence SixTermSequence::with_del0(Homomorphism del0) const {
  return SixTermSequence(eps_, gam_, std::move(del0), eps_p_, gam_p_, del1_);
}

ExactnessReport check_exact(const SixTermSequence& seq) {
  ExactnessReport r;
  for (Node n : kNodes) {
    const Homomorphism& in = seq.incoming(n);
    const Homomorphism& out = seq.outgoing(n);
    if (!same_subgroup(seq.group(n), in.matrix(), kernel_generators(out))) r.failing.push_back(n);
  }
  return r;
}

IsoReport check_sequence_iso(const SixTermSequence& src, const SixTermSequence& dst, const SequenceMorphism& m) {
  IsoReport r;
  struct Vertical {
    const Homomorphism* map;
    const char* name;
    Node node;
  };
  const Vertical verticals[] = {{&m.a1, "alpha1", Node::G1}, {&m.a2, "alpha2", Node::G2},
                                {&m.a3, "alpha3", Node::G3}, {&m.b1, "beta1", Node::F1},
                                {&m.b2, "beta2", Node::F2},  {&m.b3, "beta3", Node::F3}};
  for (const auto& v : verticals) {
    if (!v.map->domain().same_presentation(src.group(v.node)) ||
        !v.map->codomain().same_presentation(dst.group(v.node)))
      throw Error(ErrorCode::ShapeMismatch, std::string(v.name) + " does not join the two sequences");
    HomCheck c = hom_check(*v.map);
    if (!c.well_defined)
      r.failures.push_back(std::string(v.name) + " is not well defined");
    else if (!c.is_iso())
      r.failures.push_back(std::string(v.name) + " is not an isomorphism");
  }
  if (!r.passed()) return r;

  struct Square {
    const char* name;
    const Homomorphism& down_before;  // vertical at the source of the row map
    const Homomorphism& src_map;
    const Homomorphism& dst_map;
    const Homomorphism& down_after;
  };
  const Square squares[] = {
      {"eps", m.a1, src.eps(), dst.eps(), m.a2},        {"gam", m.a2, src.gam(), dst.gam(), m.a3},
      {"del0", m.a3, src.del0(), dst.del0(), m.b1},     {"eps_p", m.b1, src.eps_p(), dst.eps_p(), m.b2},
      {"gam_p", m.b2, src.gam_p(), dst.gam_p(), m.b3}, {"del1", m.b3, src.del1(), dst.del1(), m.a1},
  };
  for (const auto& s : squares) {
    if (!same_map(compose(s.down_after, s.src_map), compose(s.dst_map, s.down_before)))
      r.failures.push_back(std::string("square at ") + s.name + " does not commute");
  }
  return r;
}

}  // namespace kforge

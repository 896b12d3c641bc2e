#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "kforge/group.hpp"

namespace kforge {

enum class Node { G1, G2, G3, F1, F2, F3 };

std::string_view node_name(Node n);

// Cyclic sequence
//   G1 -eps-> G2 -gam-> G3 -del0-> F1 -eps_p-> F2 -gam_p-> F3 -del1-> G1
// The groups are the domains of the six maps.
class SixTermSequence {
 public:
  SixTermSequence(Homomorphism eps, Homomorphism gam, Homomorphism del0, Homomorphism eps_p, Homomorphism gam_p,
                  Homomorphism del1);

  const PresentedGroup& g1() const { return eps_.domain(); }
  const PresentedGroup& g2() const { return gam_.domain(); }
  const PresentedGroup& g3() const { return del0_.domain(); }
  const PresentedGroup& f1() const { return eps_p_.domain(); }
  const PresentedGroup& f2() const { return gam_p_.domain(); }
  const PresentedGroup& f3() const { return del1_.domain(); }
  const PresentedGroup& group(Node n) const;

  const Homomorphism& eps() const { return eps_; }
  const Homomorphism& gam() const { return gam_; }
  const Homomorphism& del0() const { return del0_; }
  const Homomorphism& eps_p() const { return eps_p_; }
  const Homomorphism& gam_p() const { return gam_p_; }
  const Homomorphism& del1() const { return del1_; }

  // Map leaving / entering a node.
  const Homomorphism& outgoing(Node n) const;
  const Homomorphism& incoming(Node n) const;

  SixTermSequence with_del0(Homomorphism del0) const;

 private:
  Homomorphism eps_, gam_, del0_, eps_p_, gam_p_, del1_;
};

inline constexpr std::array<Node, 6> kNodes = {Node::G1, Node::G2, Node::G3, Node::F1, Node::F2, Node::F3};

struct ExactnessReport {
  std::vector<Node> failing;
  bool exact() const { return failing.empty(); }
};

ExactnessReport check_exact(const SixTermSequence& seq);

// Vertical maps between two sequences.
struct SequenceMorphism {
  Homomorphism a1, a2, a3, b1, b2, b3;
};

struct IsoReport {
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// All six squares commute and all six vertical maps are isomorphisms.
IsoReport check_sequence_iso(const SixTermSequence& src, const SixTermSequence& dst, const SequenceMorphism& m);

}  // namespace kforge

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kforge/matrix.hpp"
#include "kforge/normal_form.hpp"

namespace kforge {

// Z/m_1 + ... + Z/m_k + Z^n with 1 < m_1 | m_2 | ... | m_k.
struct FgaGroup {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;

  // Validates the divisibility chain.
  static FgaGroup make(std::vector<Integer> torsion, std::size_t free_rank);

  bool is_zero() const { return torsion.empty() && free_rank == 0; }
  bool is_free() const { return torsion.empty(); }
  std::size_t generator_count() const { return torsion.size() + free_rank; }
  Integer torsion_order() const;
  std::string to_string() const;

  bool operator==(const FgaGroup&) const = default;
};

// Z^ambient / im(relations). Normal forms are computed once and shared
// between copies.
class PresentedGroup {
 public:
  PresentedGroup();
  explicit PresentedGroup(IntMatrix relations);

  static PresentedGroup free(std::size_t rank);
  // Z^(k+n) / diag(m_1..m_k)
  static PresentedGroup standard(const FgaGroup& g);

  std::size_t ambient_rank() const;
  const IntMatrix& relations() const;
  const SnfDecomposition& snf() const;
  const FgaGroup& canonical() const;

  // Canonical coordinates: torsion coordinates first (reduced mod m_i),
  // then free coordinates.
  std::size_t coordinate_count() const;
  const std::vector<Integer>& moduli() const;        // m_i, or 0 for free coordinates
  const IntMatrix& coordinate_map() const;           // coordinates x ambient
  const IntMatrix& generators() const;               // ambient x coordinates
  IntVector coordinates(const IntVector& x) const;
  IntVector element(const IntVector& coords) const;  // generators * coords

  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const;

  // Same presentation (not merely isomorphic).
  bool same_presentation(const PresentedGroup& other) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

PresentedGroup cokernel(const IntMatrix& a);

class Homomorphism {
 public:
  // matrix: codomain.ambient_rank() x domain.ambient_rank()
  Homomorphism(PresentedGroup domain, PresentedGroup codomain, IntMatrix matrix);

  static Homomorphism identity(const PresentedGroup& g);
  static Homomorphism zero(const PresentedGroup& domain, const PresentedGroup& codomain);

  const PresentedGroup& domain() const { return domain_; }
  const PresentedGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector operator()(const IntVector& x) const { return matrix_.apply(x); }

 private:
  PresentedGroup domain_;
  PresentedGroup codomain_;
  IntMatrix matrix_;
};

// g after f
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

struct HomCheck {
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;

  bool is_iso() const { return well_defined && injective && surjective; }
};

HomCheck hom_check(const Homomorphism& h);

// Some x with h(x) = y in the codomain group, or empty.
std::optional<IntVector> preimage(const Homomorphism& h, const IntVector& y);

// Ambient vectors generating ker(h) modulo the domain relations.
IntMatrix kernel_generators(const Homomorphism& h);

// Do the generator sets span the same subgroup of g?
bool same_subgroup(const PresentedGroup& g, const IntMatrix& gens_a, const IntMatrix& gens_b);

// f and g agree as maps of groups.
bool same_map(const Homomorphism& f, const Homomorphism& g);

// Sends canonical generator i of `from` to canonical generator i of `to`.
// Both must have the same canonical form.
Homomorphism canonical_iso(const PresentedGroup& from, const PresentedGroup& to);

}  // namespace kforge

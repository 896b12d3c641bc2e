#include "kforge/group.hpp"

#include <sstream>

#include "kforge/error.hpp"

namespace kforge {

FgaGroup FgaGroup::make(std::vector<Integer> torsion, std::size_t free_rank) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] <= 1) throw Error(ErrorCode::InvalidInput, "torsion coefficients must exceed 1");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw Error(ErrorCode::InvalidInput, "torsion coefficients must form a divisibility chain");
  }
  return FgaGroup{std::move(torsion), free_rank};
}

Integer FgaGroup::torsion_order() const {
  Integer p = 1;
  for (const auto& m : torsion) p *= m;
  return p;
}

std::string FgaGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& m : torsion) {
    os << (first ? "" : " + ") << "Z/" << m;
    first = false;
  }
  if (free_rank > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

struct PresentedGroup::Data {
  IntMatrix relations;
  SnfDecomposition snf;
  FgaGroup canonical;
  std::vector<Integer> moduli;
  IntMatrix coordinate_map;
  IntMatrix generators;
};

PresentedGroup::PresentedGroup() : PresentedGroup(IntMatrix(0, 0)) {}

PresentedGroup::PresentedGroup(IntMatrix relations) {
  auto data = std::make_shared<Data>();
  data->snf = smith(relations);
  data->relations = std::move(relations);
  const SnfDecomposition& s = data->snf;
  const std::size_t n = data->relations.rows();
  std::vector<std::size_t> torsion_idx, free_idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < s.rank) {
      if (s.d(i, i) != 1) torsion_idx.push_back(i);
    } else {
      free_idx.push_back(i);
    }
  }
  std::vector<std::size_t> idx = torsion_idx;
  idx.insert(idx.end(), free_idx.begin(), free_idx.end());
  for (std::size_t i : torsion_idx) {
    data->canonical.torsion.push_back(s.d(i, i));
    data->moduli.push_back(s.d(i, i));
  }
  data->canonical.free_rank = free_idx.size();
  data->moduli.resize(idx.size());
  data->coordinate_map = s.u.select_rows(idx);
  data->generators = s.u_inv.select_columns(idx);
  data_ = std::move(data);
}

PresentedGroup PresentedGroup::free(std::size_t rank) { return PresentedGroup(IntMatrix(rank, 0)); }

PresentedGroup PresentedGroup::standard(const FgaGroup& g) {
  const std::size_t k = g.torsion.size();
  IntMatrix rel(k + g.free_rank, k);
  for (std::size_t i = 0; i < k; ++i) rel(i, i) = g.torsion[i];
  return PresentedGroup(std::move(rel));
}

std::size_t PresentedGroup::ambient_rank() const { return data_->relations.rows(); }
const IntMatrix& PresentedGroup::relations() const { return data_->relations; }
const SnfDecomposition& PresentedGroup::snf() const { return data_->snf; }
const FgaGroup& PresentedGroup::canonical() const { return data_->canonical; }
std::size_t PresentedGroup::coordinate_count() const { return data_->moduli.size(); }
const std::vector<Integer>& PresentedGroup::moduli() const { return data_->moduli; }
const IntMatrix& PresentedGroup::coordinate_map() const { return data_->coordinate_map; }
const IntMatrix& PresentedGroup::generators() const { return data_->generators; }

IntVector PresentedGroup::coordinates(const IntVector& x) const {
  IntVector c = data_->coordinate_map.apply(x);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], data_->moduli[i]);
  return c;
}

IntVector PresentedGroup::element(const IntVector& coords) const { return data_->generators.apply(coords); }

bool PresentedGroup::is_zero(const IntVector& x) const { return kforge::is_zero(coordinates(x)); }

bool PresentedGroup::equal(const IntVector& x, const IntVector& y) const { return is_zero(subtract(x, y)); }

bool PresentedGroup::same_presentation(const PresentedGroup& other) const {
  return data_ == other.data_ || data_->relations == other.data_->relations;
}

PresentedGroup cokernel(const IntMatrix& a) { return PresentedGroup(a); }

Homomorphism::Homomorphism(PresentedGroup domain, PresentedGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.ambient_rank() || matrix_.cols() != domain_.ambient_rank())
    throw Error(ErrorCode::ShapeMismatch, "homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                                              std::to_string(matrix_.cols()) + ", expected " +
                                              std::to_string(codomain_.ambient_rank()) + "x" +
                                              std::to_string(domain_.ambient_rank()));
}

Homomorphism Homomorphism::identity(const PresentedGroup& g) {
  return Homomorphism(g, g, IntMatrix::identity(g.ambient_rank()));
}

Homomorphism Homomorphism::zero(const PresentedGroup& domain, const PresentedGroup& codomain) {
  return Homomorphism(domain, codomain, IntMatrix(codomain.ambient_rank(), domain.ambient_rank()));
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  if (g.domain().ambient_rank() != f.codomain().ambient_rank())
    throw Error(ErrorCode::ShapeMismatch, "composition of incompatible maps");
  return Homomorphism(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

namespace {

bool maps_into_zero(const PresentedGroup& g, const IntMatrix& vectors) {
  for (std::size_t c = 0; c < vectors.cols(); ++c)
    if (!g.is_zero(vectors.column(c))) return false;
  return true;
}

}  // namespace

IntMatrix kernel_generators(const Homomorphism& h) {
  const std::size_t n = h.domain().ambient_rank();
  IntMatrix joint = IntMatrix::hcat(h.matrix(), -h.codomain().relations());
  IntMatrix k = kernel_basis(joint);
  return k.block(0, n, 0, k.cols());
}

HomCheck hom_check(const Homomorphism& h) {
  HomCheck r;
  r.well_defined = maps_into_zero(h.codomain(), h.matrix() * h.domain().relations());
  if (!r.well_defined) return r;
  r.injective = maps_into_zero(h.domain(), kernel_generators(h));
  HermiteForm f = hermite(IntMatrix::hcat(h.matrix(), h.codomain().relations()));
  r.surjective = f.rank() == h.codomain().ambient_rank();
  for (std::size_t c = 0; r.surjective && c < f.rank(); ++c)
    if (f.h(f.pivot_rows[c], c) != 1) r.surjective = false;
  return r;
}

std::optional<IntVector> preimage(const Homomorphism& h, const IntVector& y) {
  IntMatrix joint = IntMatrix::hcat(h.matrix(), h.codomain().relations());
  auto sol = solve_linear(joint, y);
  if (!sol) return std::nullopt;
  return slice(*sol, 0, h.domain().ambient_rank());
}

bool same_subgroup(const PresentedGroup& g, const IntMatrix& gens_a, const IntMatrix& gens_b) {
  return same_lattice(IntMatrix::hcat(gens_a, g.relations()), IntMatrix::hcat(gens_b, g.relations()));
}

bool same_map(const Homomorphism& f, const Homomorphism& g) {
  if (f.matrix().rows() != g.matrix().rows() || f.matrix().cols() != g.matrix().cols()) return false;
  return maps_into_zero(f.codomain(), f.matrix() - g.matrix());
}

Homomorphism canonical_iso(const PresentedGroup& from, const PresentedGroup& to) {
  if (!(from.canonical() == to.canonical()))
    throw Error(ErrorCode::InvalidInput, "groups " + from.canonical().to_string() + " and " +
                                             to.canonical().to_string() + " are not isomorphic");
  return Homomorphism(from, to, to.generators() * from.coordinate_map());
}

}  // namespace kforge

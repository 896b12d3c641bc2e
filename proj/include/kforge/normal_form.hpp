#pragma once

#include <optional>
#include <vector>

#include "kforge/matrix.hpp"

namespace kforge {

// u * a * v == d with d diagonal, d_ii >= 0 and d_ii | d_(i+1)(i+1).
// Inverses of the unimodular factors are tracked alongside.
struct SnfDecomposition {
  IntMatrix u, d, v;
  IntMatrix u_inv, v_inv;
  std::size_t rank = 0;

  std::size_t diagonal_length() const { return d.rows() < d.cols() ? d.rows() : d.cols(); }
  std::vector<Integer> diagonal() const;
};

SnfDecomposition smith(const IntMatrix& a);

// Column Hermite form: a * w == h. The first rank() columns of h are in
// echelon form (pivot of column c in row pivot_rows[c], positive, entries
// left of it in that row reduced to [0, pivot)); remaining columns are zero.
struct HermiteForm {
  IntMatrix h;
  IntMatrix w;
  std::vector<std::size_t> pivot_rows;

  std::size_t rank() const { return pivot_rows.size(); }
  IntMatrix basis() const;
};

HermiteForm hermite(const IntMatrix& a);

// Columns spanning {x : a x = 0}; saturated and linearly independent.
IntMatrix kernel_basis(const IntMatrix& a);

// Particular solution of a x = b taken from the Hermite form: the echelon
// coordinates are zero off the pivot columns. Empty if no integer solution.
std::optional<IntVector> solve_linear(const IntMatrix& a, const IntVector& b);
std::optional<IntVector> solve_linear(const HermiteForm& form, const IntVector& b);

// basis spans im(a) and a * section == basis column by column.
struct ImageSection {
  IntMatrix basis;
  IntMatrix section;
};

ImageSection image_section(const IntMatrix& a);

// Equality of the column lattices.
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace kforge

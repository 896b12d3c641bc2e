#include "kforge/normal_form.hpp"

#include "kforge/error.hpp"

namespace kforge {

std::vector<Integer> SnfDecomposition::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < diagonal_length(); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Tracks row operations on d (mirrored into u and u_inv) and column
// operations (mirrored into v and v_inv).
struct SnfState {
  SnfDecomposition s;

  void swap_rows(std::size_t i, std::size_t j) {
    s.d.swap_rows(i, j);
    s.u.swap_rows(i, j);
    s.u_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    s.d.swap_cols(i, j);
    s.v.swap_cols(i, j);
    s.v_inv.swap_rows(i, j);
  }
  // row i += k row t
  void add_row(std::size_t i, std::size_t t, const Integer& k) {
    s.d.add_row_multiple(i, t, k);
    s.u.add_row_multiple(i, t, k);
    s.u_inv.add_col_multiple(t, i, -k);
  }
  // col j += k col t
  void add_col(std::size_t j, std::size_t t, const Integer& k) {
    s.d.add_col_multiple(j, t, k);
    s.v.add_col_multiple(j, t, k);
    s.v_inv.add_row_multiple(t, j, -k);
  }
  void negate_row(std::size_t t) {
    s.d.negate_row(t);
    s.u.negate_row(t);
    s.u_inv.negate_col(t);
  }
};

}  // namespace

SnfDecomposition smith(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfState st;
  st.s.d = a;
  st.s.u = st.s.u_inv = IntMatrix::identity(m);
  st.s.v = st.s.v_inv = IntMatrix::identity(n);
  IntMatrix& d = st.s.d;

  const std::size_t len = m < n ? m : n;
  std::size_t t = 0;
  for (; t < len; ++t) {
    bool found_any = true;
    while (true) {
      // smallest nonzero |entry| in the trailing block
      std::size_t pi = 0, pj = 0;
      bool found = false;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Integer& x = d(i, j);
          if (x == 0) continue;
          if (!found || ::abs(x) < best) {
            best = ::abs(x);
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        found_any = false;
        break;
      }
      st.swap_rows(t, pi);
      st.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        st.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        st.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // pivot must divide the whole trailing block
      std::size_t bad_row = m;
      for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == m) break;
      st.add_row(t, bad_row, 1);
    }
    if (!found_any) break;
    if (d(t, t) < 0) st.negate_row(t);
  }
  st.s.rank = t;
  return st.s;
}

IntMatrix HermiteForm::basis() const { return h.block(0, h.rows(), 0, rank()); }

HermiteForm hermite(const IntMatrix& a) {
  HermiteForm f;
  f.h = a;
  f.w = IntMatrix::identity(a.cols());
  IntMatrix& h = f.h;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t r = 0;
  for (std::size_t i = 0; i < m && r < n; ++i) {
    while (true) {
      std::size_t p = n;
      Integer best;
      for (std::size_t j = r; j < n; ++j) {
        if (h(i, j) == 0) continue;
        if (p == n || ::abs(h(i, j)) < best) {
          best = ::abs(h(i, j));
          p = j;
        }
      }
      if (p == n) break;
      h.swap_cols(r, p);
      f.w.swap_cols(r, p);
      bool clean = true;
      for (std::size_t j = r + 1; j < n; ++j) {
        if (h(i, j) == 0) continue;
        Integer q = h(i, j) / h(i, r);
        h.add_col_multiple(j, r, -q);
        f.w.add_col_multiple(j, r, -q);
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(i, r) == 0) continue;
    if (h(i, r) < 0) {
      h.negate_col(r);
      f.w.negate_col(r);
    }
    for (std::size_t j = 0; j < r; ++j) {
      Integer q = floor_div(h(i, j), h(i, r));
      if (q == 0) continue;
      h.add_col_multiple(j, r, -q);
      f.w.add_col_multiple(j, r, -q);
    }
    f.pivot_rows.push_back(i);
    ++r;
  }
  return f;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SnfDecomposition s = smith(a);
  return s.v.block(0, a.cols(), s.rank, a.cols() - s.rank);
}

std::optional<IntVector> solve_linear(const HermiteForm& f, const IntVector& b) {
  if (b.size() != f.h.rows()) throw Error(ErrorCode::ShapeMismatch, "right-hand side length");
  const std::size_t r = f.rank();
  IntVector y(f.h.cols());
  for (std::size_t c = 0; c < r; ++c) {
    const std::size_t p = f.pivot_rows[c];
    Integer residual = b[p];
    for (std::size_t c2 = 0; c2 < c; ++c2) residual -= f.h(p, c2) * y[c2];
    if (residual % f.h(p, c) != 0) return std::nullopt;
    y[c] = residual / f.h(p, c);
  }
  if (f.h.apply(y) != b) return std::nullopt;
  return f.w.apply(y);
}

std::optional<IntVector> solve_linear(const IntMatrix& a, const IntVector& b) { return solve_linear(hermite(a), b); }

ImageSection image_section(const IntMatrix& a) {
  HermiteForm f = hermite(a);
  return {f.basis(), f.w.block(0, a.cols(), 0, f.rank())};
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "lattices in different ambient ranks");
  return hermite(a).basis() == hermite(b).basis();
}

}  // namespace kforge

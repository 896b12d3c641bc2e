#include "kforge/splice.hpp"

#include <algorithm>

#include "kforge/error.hpp"
#include "kforge/ktheory.hpp"

namespace kforge {

namespace {

IntVector ones(std::size_t n) { return ones_vector(n); }

// Coordinates of each column of `vecs` in the lattice basis `form`.
IntMatrix coordinates_in(const HermiteForm& form, std::size_t basis_size, const IntMatrix& vecs, const char* what) {
  IntMatrix out(basis_size, vecs.cols());
  for (std::size_t c = 0; c < vecs.cols(); ++c) {
    auto x = solve_linear(form, vecs.column(c));
    if (!x) throw Error(ErrorCode::VerificationFailed, what);
    out.set_column(c, *x);
  }
  return out;
}

IntVector lift(const Homomorphism& h, const IntVector& y, const char* what) {
  auto x = preimage(h, y);
  if (!x) throw Error(ErrorCode::TargetNotExact, what);
  return *x;
}

void check_target(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t) {
  const auto& s = t.seq;
  if (!t.a1.domain().same_presentation(cokernel(a)) || !t.a1.codomain().same_presentation(s.g1()))
    throw Error(ErrorCode::ShapeMismatch, "alpha1 must map coker of the ideal block to G1");
  if (!t.a3.domain().same_presentation(cokernel(b)) || !t.a3.codomain().same_presentation(s.g3()))
    throw Error(ErrorCode::ShapeMismatch, "alpha3 must map coker of the quotient block to G3");
  if (!t.b1.domain().same_presentation(PresentedGroup::free(kernel_basis(a).cols())) ||
      !t.b1.codomain().same_presentation(s.f1()))
    throw Error(ErrorCode::ShapeMismatch, "beta1 must map ker of the ideal block to F1");
  if (!t.b3.domain().same_presentation(PresentedGroup::free(kernel_basis(b).cols())) ||
      !t.b3.codomain().same_presentation(s.f3()))
    throw Error(ErrorCode::ShapeMismatch, "beta3 must map ker of the quotient block to F3");

  auto ex = check_exact(s);
  if (!ex.exact()) throw Error(ErrorCode::TargetNotExact, "target sequence fails at " + std::string(node_name(ex.failing.front())));
  const IntMatrix& g3gens = s.g3().generators();
  for (std::size_t c = 0; c < g3gens.cols(); ++c)
    if (!s.f1().is_zero(s.del0()(g3gens.column(c)))) throw Error(ErrorCode::TargetNotExact, "map G3 -> F1 must vanish");
  if (!s.f1().canonical().is_free() || !s.f2().canonical().is_free() || !s.f3().canonical().is_free())
    throw Error(ErrorCode::TargetNotExact, "F groups must be free");

  const std::pair<const Homomorphism*, const char*> ends[] = {
      {&t.a1, "alpha1"}, {&t.b1, "beta1"}, {&t.a3, "alpha3"}, {&t.b3, "beta3"}};
  for (const auto& [h, name] : ends)
    if (!hom_check(*h).is_iso()) throw Error(ErrorCode::EndMapsNotIso, std::string(name) + " is not an isomorphism");
}

// New beta2 from an old one, where `t` carries new kernel vectors into the old kernel.
Homomorphism transport_beta(const IntMatrix& old_x, const Homomorphism& old_b2, const IntMatrix& new_x,
                            const IntMatrix& t) {
  IntMatrix old_k = kernel_basis(old_x), new_k = kernel_basis(new_x);
  IntMatrix coords = coordinates_in(hermite(old_k), old_k.cols(), t * new_k, "kernel transport");
  return Homomorphism(PresentedGroup::free(new_k.cols()), old_b2.codomain(), old_b2.matrix() * coords);
}

IntMatrix shear(std::size_t top, std::size_t bottom, const IntMatrix& q) {
  IntMatrix m = IntMatrix::identity(top + bottom);
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) m(i, top + j) = q(i, j);
  return m;
}

IntMatrix right_shear_result(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& prior,
                             const IntMatrix& q, SpliceResult& out) {
  IntMatrix y = prior.y + q * b;
  IntMatrix old_x = IntMatrix::block_upper(a, prior.y, b), new_x = IntMatrix::block_upper(a, y, b);
  Homomorphism a2(cokernel(new_x), t.seq.g2(), prior.a2.matrix() * shear(a.rows(), b.rows(), -q));
  Homomorphism b2 = transport_beta(old_x, prior.b2, new_x, IntMatrix::identity(a.cols() + b.cols()));
  out = SpliceResult{y, std::move(a2), std::move(b2)};
  return y;
}

void require_iso(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& r) {
  auto rep = check_splice(a, b, t, r);
  if (!rep.passed()) throw Error(ErrorCode::VerificationFailed, rep.failures.front());
}

}  // namespace

Homomorphism extend_hom(const IntMatrix& a, const Homomorphism& eta) {
  IntMatrix kb = kernel_basis(a);
  if (!eta.domain().same_presentation(PresentedGroup::free(kb.cols())))
    throw Error(ErrorCode::ShapeMismatch, "map must be given on kernel coordinates");
  const std::size_t n = a.cols();
  ImageSection is = image_section(a);
  HermiteForm img = hermite(is.basis);
  // I - S a, column by column
  IntMatrix proj = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto c = solve_linear(img, a.column(j));
    if (!c) throw Error(ErrorCode::VerificationFailed, "image section");
    proj.set_column(j, subtract(proj.column(j), is.section.apply(*c)));
  }
  IntMatrix coords = coordinates_in(hermite(kb), kb.cols(), proj, "projection onto the kernel");
  return Homomorphism(PresentedGroup::free(n), eta.codomain(), eta.matrix() * coords);
}

SpliceResult build_y(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t) {
  check_target(a, b, t);
  const auto& s = t.seq;
  const std::size_t n1 = a.rows(), n1p = a.cols(), n3 = b.rows(), n3p = b.cols();

  // mu : Z^n3 -> G2 lifting alpha3 through gam
  IntMatrix mu(s.g2().ambient_rank(), n3);
  for (std::size_t k = 0; k < n3; ++k) mu.set_column(k, lift(s.gam(), t.a3.matrix().column(k), "gam is not onto"));
  Homomorphism eps_pi1 = compose(s.eps(), t.a1);

  // y1 with pi1 y1 = del1 beta3'
  Homomorphism b3_ext = extend_hom(b, t.b3);
  IntMatrix target1 = s.del1().matrix() * b3_ext.matrix();
  IntMatrix y1(n1, n3p);
  for (std::size_t j = 0; j < n3p; ++j) y1.set_column(j, lift(t.a1, target1.column(j), "alpha1 is not onto"));

  // y2 on a basis of im b, then composed with b
  ImageSection img = image_section(b);
  IntMatrix y2(n1, img.basis.cols());
  for (std::size_t c = 0; c < img.basis.cols(); ++c)
    y2.set_column(c, lift(eps_pi1, mu.apply(img.basis.column(c)), "mu leaves the image of eps on im b"));
  IntMatrix b_coords = coordinates_in(hermite(img.basis), img.basis.cols(), b, "image coordinates");
  IntMatrix y = y1 - y2 * b_coords;

  IntMatrix x = IntMatrix::block_upper(a, y, b);
  Homomorphism a2(cokernel(x), s.g2(), IntMatrix::hcat(eps_pi1.matrix(), mu));

  IntMatrix kx = kernel_basis(x), ka = kernel_basis(a), kb = kernel_basis(b);
  // nu : ker x -> F2 with gam_p nu = beta3 P'
  IntMatrix bottoms = kx.block(n1p, n3p, 0, kx.cols());
  IntMatrix b3_vals = t.b3.matrix() * coordinates_in(hermite(kb), kb.cols(), bottoms, "kernel projection");
  IntMatrix nu(s.f2().ambient_rank(), kx.cols());
  for (std::size_t c = 0; c < kx.cols(); ++c) nu.set_column(c, lift(s.gam_p(), b3_vals.column(c), "gam' misses beta3"));

  // eta : ker a -> F1 with eps_p eta = nu I'
  IntMatrix incl = IntMatrix::vcat(ka, IntMatrix(n3p, ka.cols()));
  IntMatrix nu_incl = nu * coordinates_in(hermite(kx), kx.cols(), incl, "kernel inclusion");
  IntMatrix eta(s.f1().ambient_rank(), ka.cols());
  for (std::size_t c = 0; c < ka.cols(); ++c) eta.set_column(c, lift(s.eps_p(), nu_incl.column(c), "eps' misses nu"));

  Homomorphism zeta = extend_hom(a, Homomorphism(t.b1.domain(), s.f1(), t.b1.matrix() - eta));
  IntMatrix tops = kx.block(0, n1p, 0, kx.cols());
  IntMatrix b2m = nu + s.eps_p().matrix() * zeta.matrix() * tops;
  SpliceResult r{y, std::move(a2), Homomorphism(PresentedGroup::free(kx.cols()), s.f2(), b2m)};
  auto rep = check_splice(a, b, t, r);
  if (!rep.passed()) throw Error(ErrorCode::VerificationFailed, "constructed maps: " + rep.failures.front());
  return r;
}

SpliceResult adjust_dominate(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& prior,
                             const IntMatrix& z, Side side, const IntMatrix& dom) {
  if (z.rows() != prior.y.rows() || z.cols() != prior.y.cols()) throw Error(ErrorCode::ShapeMismatch, "floor shape");
  IntMatrix gap = (prior.y - z).abs();
  SpliceResult out = prior;
  if (side == Side::Left) {
    if (dom.rows() != a.cols() || dom.cols() != a.rows()) throw Error(ErrorCode::ShapeMismatch, "left dominator shape");
    if (!(a * dom - IntMatrix::identity(a.rows())).is_nonnegative())
      throw Error(ErrorCode::NoWitness, "a * dominator - I has a negative entry");
    IntMatrix q = dom * gap;
    IntMatrix y = a * q + prior.y;
    IntMatrix old_x = IntMatrix::block_upper(a, prior.y, b), new_x = IntMatrix::block_upper(a, y, b);
    Homomorphism a2(cokernel(new_x), t.seq.g2(), prior.a2.matrix());
    Homomorphism b2 = transport_beta(old_x, prior.b2, new_x, shear(a.cols(), b.cols(), q));
    out = SpliceResult{y, std::move(a2), std::move(b2)};
  } else {
    if (dom.rows() != b.cols() || dom.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "right dominator shape");
    if (!(dom * b - IntMatrix::identity(b.cols())).is_nonnegative())
      throw Error(ErrorCode::NoWitness, "dominator * b - I has a negative entry");
    right_shear_result(a, b, t, prior, gap * dom, out);
  }
  require_iso(a, b, t, out);
  return out;
}

SpliceResult adjust_unit(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& prior,
                         const IntMatrix& z, std::optional<std::pair<std::size_t, std::size_t>> pair) {
  if (!t.unit) throw Error(ErrorCode::InvalidInput, "target has no unit");
  if (z.rows() != prior.y.rows() || z.cols() != prior.y.cols()) throw Error(ErrorCode::ShapeMismatch, "floor shape");
  const auto& s = t.seq;
  const std::size_t n1 = a.rows(), n3 = b.rows();
  if (n3 < 2) throw Error(ErrorCode::NeedsTwoQuotientVertices, "quotient block has " + std::to_string(n3) + " rows");
  auto below = [&](std::size_t i, std::size_t j) {
    if (i == j || i >= n3 || j >= n3) return false;
    for (std::size_t k = 0; k < b.cols(); ++k)
      if (!(b(i, k) < b(j, k))) return false;
    return true;
  };
  if (pair) {
    if (!below(pair->first, pair->second)) throw Error(ErrorCode::NoDominatedRow, "given rows are not strictly ordered");
  } else {
    for (std::size_t i = 0; i < n3 && !pair; ++i)
      for (std::size_t j = 0; j < n3 && !pair; ++j)
        if (below(i, j)) pair = std::make_pair(i, j);
    if (!pair) throw Error(ErrorCode::NoDominatedRow, "no row of the quotient block lies strictly below another");
  }
  if (!s.g3().equal(t.a3(ones(n3)), s.gam()(*t.unit)))
    throw Error(ErrorCode::UnitMismatch, "alpha3 of the unit class differs from gam of the target unit");

  IntVector g2p = subtract(prior.a2(ones(n1 + n3)), *t.unit);
  IntVector xi = lift(compose(s.eps(), t.a1), g2p, "unit defect outside the image of eps");
  IntMatrix q1(n1, n3), q2(n1, n3);
  q1.set_column(0, xi);
  for (std::size_t k = 0; k < n1; ++k) {
    q2(k, pair->second) = 1;
    q2(k, pair->first) = -1;
  }
  // smallest c >= 1 with (q1 + c q2) b >= z - y'
  IntMatrix need = z - prior.y - q1 * b;
  Integer c = 1;
  for (std::size_t k = 0; k < n1; ++k)
    for (std::size_t l = 0; l < b.cols(); ++l) {
      Integer d = b(pair->second, l) - b(pair->first, l);
      c = std::max(c, ceil_div(need(k, l), d));
    }
  SpliceResult out = prior;
  right_shear_result(a, b, t, prior, q1 + c * q2, out);
  if (!s.g2().equal(out.a2(ones(n1 + n3)), *t.unit)) throw Error(ErrorCode::VerificationFailed, "unit not placed");
  require_iso(a, b, t, out);
  return out;
}

SpliceResult adjust_split(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t) {
  check_target(a, b, t);
  const auto& s = t.seq;
  if (!t.splitting) throw Error(ErrorCode::NoSplitting, "no splitting map given");
  if (!s.f3().canonical().is_zero()) throw Error(ErrorCode::NoSplitting, "F3 must vanish");
  const Homomorphism& sigma = *t.splitting;
  if (!sigma.domain().same_presentation(s.g3()) || !sigma.codomain().same_presentation(s.g2()) ||
      !hom_check(sigma).well_defined || !same_map(compose(s.gam(), sigma), Homomorphism::identity(s.g3())))
    throw Error(ErrorCode::NoSplitting, "splitting is not a section of gam");

  IntMatrix y(a.rows(), b.cols());
  IntMatrix x = IntMatrix::block_upper(a, y, b);
  Homomorphism a2(cokernel(x), s.g2(),
                  IntMatrix::hcat(compose(s.eps(), t.a1).matrix(), compose(sigma, t.a3).matrix()));
  IntMatrix kx = kernel_basis(x), ka = kernel_basis(a);
  IntMatrix tops = kx.block(0, a.cols(), 0, kx.cols());
  IntMatrix coords = coordinates_in(hermite(ka), ka.cols(), tops, "kernel of the split block");
  SpliceResult out{y, std::move(a2),
                   Homomorphism(PresentedGroup::free(kx.cols()), s.f2(), s.eps_p().matrix() * t.b1.matrix() * coords)};
  require_iso(a, b, t, out);
  if (t.unit && !s.g2().equal(out.a2(ones(a.rows() + b.rows())), *t.unit))
    throw Error(ErrorCode::UnitMismatch, "split sum of the end units differs from the target unit");
  return out;
}

IsoReport check_splice(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& r) {
  if (r.y.rows() != a.rows() || r.y.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "connecting block shape");
  SixTermSequence src = snake(a, b, r.y);
  return check_sequence_iso(src, t.seq, SequenceMorphism{t.a1, r.a2, t.a3, t.b1, r.b2, t.b3});
}

IntMatrix splice_floor(std::size_t ideal_size, std::size_t quotient_regular, const SpliceOptions& opts) {
  IntMatrix z(ideal_size, quotient_regular);
  if (quotient_regular == 0) return z;
  if (ideal_size == 0) throw Error(ErrorCode::ShapeMismatch, "empty ideal graph");
  switch (opts.mode) {
    case SpliceMode::Essential:
      for (std::size_t j = 0; j < quotient_regular; ++j) z(0, j) = 1;
      break;
    case SpliceMode::StenoticGenerators:
      if (opts.generators.empty()) throw Error(ErrorCode::InvalidInput, "generator mode needs generators");
      for (std::size_t g : opts.generators) {
        if (g >= ideal_size) throw Error(ErrorCode::InvalidInput, "generator out of range");
        for (std::size_t j = 0; j < quotient_regular; ++j) z(g, j) = 1;
      }
      break;
    case SpliceMode::StenoticIdentity:
      for (std::size_t j = 0; j < quotient_regular; ++j) z(j % ideal_size, j) = 1;
      break;
    case SpliceMode::Split:
      break;
  }
  return z;
}

SpliceOutput splice_graphs(const Graph& e1, const Graph& e3, const SpliceTarget& t, const SpliceOptions& opts) {
  IntMatrix a = k_matrix(e1), b = k_matrix(e3);
  IntMatrix z = splice_floor(e1.size(), b.cols(), opts);
  SpliceResult r = [&] {
    if (opts.mode == SpliceMode::Split) return adjust_split(a, b, t);
    SpliceResult base = build_y(a, b, t);
    std::optional<AdhesiveWitness> left = left_adhesive(e1);
    std::optional<AdhesiveWitness> right;
    if (t.unit) {
      bool pair_exists = opts.dominated_pair.has_value();
      if (!pair_exists && b.rows() >= 2)
        for (std::size_t i = 0; i < b.rows() && !pair_exists; ++i)
          for (std::size_t j = 0; j < b.rows() && !pair_exists; ++j) {
            if (i == j) continue;
            bool ok = true;
            for (std::size_t k = 0; k < b.cols() && ok; ++k) ok = b(i, k) < b(j, k);
            pair_exists = ok;
          }
      if (pair_exists) return adjust_unit(a, b, t, base, z, opts.dominated_pair);
      // Left domination keeps alpha2, so the unit must already be in place.
      if (!left) throw Error(ErrorCode::NoDominatedRow, "no dominated quotient row and the ideal graph is not left adhesive");
      SpliceResult out = adjust_dominate(a, b, t, base, z, Side::Left, left_dominator(e1, *left));
      if (!t.seq.g2().equal(out.a2(ones(a.rows() + b.rows())), *t.unit))
        throw Error(ErrorCode::UnitMismatch, "unit class not placed without a dominated quotient row");
      return out;
    }
    if (left) return adjust_dominate(a, b, t, base, z, Side::Left, left_dominator(e1, *left));
    right = right_adhesive(e3);
    if (right) return adjust_dominate(a, b, t, base, z, Side::Right, right_dominator(e3, *right));
    throw Error(ErrorCode::NotAdhesive, "ideal graph is not left adhesive and quotient graph is not right adhesive");
  }();

  std::vector<std::string> labels;
  bool clash = false;
  for (const auto& l : e3.labels()) clash = clash || e1.find(l).has_value();
  for (const auto& l : e1.labels()) labels.push_back(clash ? "1." + l : l);
  for (const auto& l : e3.labels()) labels.push_back(clash ? "3." + l : l);

  const std::size_t n1 = e1.size();
  std::vector<Edge> edges = e1.edges();
  for (const auto& e : e3.edges()) edges.push_back(Edge{e.src + n1, e.dst + n1, e.mult});
  auto reg = e3.regular_vertices();
  for (std::size_t j = 0; j < reg.size(); ++j)
    for (std::size_t i = 0; i < n1; ++i)
      if (r.y(i, j) > 0) edges.push_back(Edge{reg[j] + n1, i, Multiplicity(r.y(i, j))});
      else if (r.y(i, j) < 0) throw Error(ErrorCode::VerificationFailed, "negative connecting entry");
  for (std::size_t v : e3.singular_vertices())
    for (std::size_t i = 0; i < n1; ++i) edges.push_back(Edge{v + n1, i, Multiplicity::infinite()});

  Graph g(std::move(labels), std::move(edges));
  std::vector<std::size_t> ideal(n1);
  for (std::size_t i = 0; i < n1; ++i) ideal[i] = i;
  std::string how = opts.mode == SpliceMode::Split ? "split" : t.unit ? "unit" : "dominate";
  return SpliceOutput{std::move(g), VertexSet(n1 + e3.size(), ideal), std::move(r), std::move(z), how};
}

SpliceReport verify_splice(const Graph& e2, const VertexSet& h, const SpliceTarget& t, const SpliceResult& r,
                           const Budget& budget) {
  SpliceReport rep;
  SixTermResult st = six_term(e2, h);
  rep.exact = check_exact(st.seq).exact();
  IsoReport iso = check_sequence_iso(st.seq, t.seq, SequenceMorphism{t.a1, r.a2, t.a3, t.b1, r.b2, t.b3});
  rep.isomorphic = iso.passed();
  for (const auto& f : iso.failures) rep.notes.push_back(f);
  if (!(st.split.x == r.y)) {
    rep.isomorphic = false;
    rep.notes.push_back("graph edges do not match the connecting block");
  }
  if (t.unit) {
    rep.unit = t.seq.g2().equal(r.a2(ones(e2.size())), *t.unit);
    if (!rep.unit) rep.notes.push_back("unit class misplaced");
  }

  auto lattice = gauge_ideal_lattice(e2, budget);
  rep.lattice_size = lattice.size();
  GaugeIdeal hi{h, VertexSet(e2.size())};
  rep.essential = rep.stenotic = true;
  std::size_t proper = 0;
  bool has_h = false;
  for (const auto& j : lattice) {
    bool zero = j.hereditary.empty() && j.breaking.empty();
    bool full = j.hereditary.count() == e2.size();
    if (!zero && !j.hereditary.intersects(h)) rep.essential = false;
    if (!ideal_leq(j, hi) && !ideal_leq(hi, j)) rep.stenotic = false;
    if (!zero && !full) {
      ++proper;
      has_h = has_h || j == hi;
    }
  }
  rep.unique_nontrivial = proper == 1 && has_h;
  rep.condition_k = condition_k(e2);
  if (!rep.condition_k) rep.notes.push_back("condition (K) fails: verdicts cover gauge-invariant ideals only");
  return rep;
}

}  // namespace kforge

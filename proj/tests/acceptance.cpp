// One line per acceptance criterion; exit status is the number of failures.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kforge/error.hpp"
#include "kforge/json_io.hpp"
#include "kforge/ktheory.hpp"
#include "kforge/normal_form.hpp"
#include "kforge/ranges.hpp"
#include "kforge/realize.hpp"
#include "kforge/splice.hpp"
#include "oracle.hpp"
#include "targets.hpp"

using namespace kforge;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure only; later ones rarely add information.
struct Checker {
  Outcome out;
  void expect(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

Integer abs_det(const IntMatrix& m) {
  Integer d = oracle::determinant(m);
  return d < 0 ? Integer(-d) : d;
}

Outcome snf_suite() {
  Checker c;
  std::mt19937_64 rng(1);
  auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1000 && c.out.pass; ++trial) {
    IntMatrix a = oracle::random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8, 20);
    SnfDecomposition s = smith(a);
    c.expect(s.u * a * s.v == s.d, "u*a*v != d at trial " + std::to_string(trial));
    c.expect(abs_det(s.u) == 1 && abs_det(s.v) == 1, "non-unimodular transform at trial " + std::to_string(trial));
    auto diag = s.diagonal();
    for (std::size_t r = 0; r < s.d.rows(); ++r)
      for (std::size_t col = 0; col < s.d.cols(); ++col)
        if (r != col) c.expect(s.d(r, col) == 0, "off-diagonal entry");
    for (std::size_t i = 0; i < diag.size(); ++i) {
      c.expect(diag[i] >= 0, "negative diagonal entry");
      if (i + 1 < diag.size()) {
        bool divides = diag[i] == 0 ? diag[i + 1] == 0 : mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t());
        c.expect(divides, "divisibility chain broken at trial " + std::to_string(trial));
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 5.0, "took " + std::to_string(secs) + " s");
  if (c.out.pass) c.out.detail = "1000 matrices in " + std::to_string(secs).substr(0, 4) + " s";
  return c.out;
}

struct SweepCount {
  long graphs = 0, subsets = 0;
  std::string failure;
};

// Graphs on n vertices whose first row of counts encodes `slot`.
SweepCount sweep_slice(std::size_t n, long first, long stride) {
  SweepCount out;
  long cells = long(n * n), total = 1;
  for (long i = 0; i < cells; ++i) total *= 4;
  for (long code = first; code < total && out.failure.empty(); code += stride) {
    IntMatrix counts(n, n);
    long x = code;
    for (long i = 0; i < cells; ++i, x /= 4) counts(i / n, i % n) = x % 4;
    Graph e = Graph::from_counts(Graph::numbered_labels(n), counts);
    ++out.graphs;
    if (!rank_identity(e)) out.failure = "rank identity fails for " + counts.to_string();
    for (unsigned mask = 0; mask < (1u << n) && out.failure.empty(); ++mask) {
      VertexSet h(n);
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1) h.insert(v);
      SubsetAnalysis an = analyze_subset(e, h);
      if (!an.hereditary || !an.saturated || !an.breaking.empty()) continue;
      ++out.subsets;
      SixTermResult st = six_term(e, h);
      if (!check_exact(st.seq).exact()) out.failure = "not exact for " + counts.to_string();
      const Homomorphism& d = st.seq.del0();
      for (std::size_t col = 0; col < d.domain().ambient_rank(); ++col)
        if (!d.codomain().is_zero(d(unit_vector(d.domain().ambient_rank(), col))))
          out.failure = "nonzero index map for " + counts.to_string();
    }
  }
  return out;
}

Outcome k_theory_sweep() {
  Checker c;
  long graphs = 0, subsets = 0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::future<SweepCount>> jobs;
    for (unsigned w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, sweep_slice, n, long(w), long(workers)));
    for (auto& j : jobs) {
      SweepCount s = j.get();
      graphs += s.graphs;
      subsets += s.subsets;
      c.expect(s.failure.empty(), s.failure);
    }
  }
  c.expect(graphs == 4 + 256 + 262144, "enumerated " + std::to_string(graphs) + " graphs");
  if (c.out.pass) c.out.detail = std::to_string(graphs) + " graphs, " + std::to_string(subsets) + " ideals";
  return c.out;
}

// Divisibility chains of orders > 1 with product <= bound.
void chains(std::vector<Integer>& cur, long product, long bound, std::vector<std::vector<Integer>>& out) {
  out.push_back(cur);
  long last = cur.empty() ? 1 : cur.back().get_si();
  for (long m = cur.empty() ? 2 : last; product * m <= bound; m += cur.empty() ? 1 : last) {
    if (m < 2) continue;
    cur.push_back(m);
    chains(cur, product * m, bound, out);
    cur.pop_back();
  }
}

// Free unit coordinates range over a window; torsion ones over all residues.
void for_each_unit(const FgaGroup& g, long window, const std::function<void(const IntVector&)>& f) {
  IntVector u(g.generator_count());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == u.size()) return f(u);
    if (i < g.torsion.size()) {
      for (long x = 0; x < g.torsion[i]; ++x) u[i] = x, rec(i + 1);
    } else {
      for (long x = -window; x <= window; ++x) u[i] = x, rec(i + 1);
    }
  };
  rec(0);
}

Outcome unital_realization() {
  Checker c;
  std::vector<std::vector<Integer>> all;
  std::vector<Integer> cur;
  chains(cur, 1, 50, all);
  long count = 0;
  for (const auto& torsion : all)
    for (std::size_t n = 0; n <= 3 && c.out.pass; ++n) {
      FgaGroup g = FgaGroup::make(torsion, n);
      for (std::size_t n1 = 0; n1 <= n; ++n1)
        for_each_unit(g, n <= 1 ? 2 : 1, [&](const IntVector& unit) {
          if (!c.out.pass) return;
          RealizationRequest req{g, n1, unit, RealizationClass::Unital};
          Realization r = realize_unital(req);
          std::string tag = g.to_string() + " unit " + IntMatrix::row_vector(unit).to_string();
          c.expect(r.graph.size() == 1 + g.generator_count(), "vertex count for " + tag);
          KPair k = k_groups(r.graph);
          c.expect(k.k0.canonical() == g, "K0 for " + tag);
          c.expect(k.k1_rank() == n1, "K1 rank for " + tag);
          PresentedGroup target = PresentedGroup::standard(g);
          c.expect(hom_check(r.k0_iso).is_iso(), "iso for " + tag);
          c.expect(target.equal(r.k0_iso(ones_vector(r.graph.size())), target.element(unit)), "unit for " + tag);
          for (std::size_t v = 0; v < r.graph.size(); ++v) c.expect(r.graph.mult(v, v).at_least(2), "loops for " + tag);
          c.expect(is_transitive(r.graph), "transitivity for " + tag);
          c.expect(r.graph.size() >= g.generator_count(), "lower bound for " + tag);
          ++count;
        });
    }
  if (c.out.pass) c.out.detail = std::to_string(all.size()) + " torsion chains, " + std::to_string(count) + " requests";
  return c.out;
}

Outcome paper_matrices() {
  Checker c;
  std::vector<std::vector<Integer>> all;
  std::vector<Integer> cur;
  chains(cur, 1, 24, all);
  for (const auto& torsion : all)
    for (std::size_t n = 0; n <= 2; ++n)
      for (std::size_t n1 = 0; n1 <= n; ++n1) {
        FgaGroup g = FgaGroup::make(torsion, n);
        for_each_unit(g, 2, [&](const IntVector& unit) {
          Realization r = realize_unital(RealizationRequest{g, n1, unit, RealizationClass::Unital});
          std::string tag = g.to_string() + " n'=" + std::to_string(n1);
          std::size_t k = g.torsion.size(), rows = 1 + k + n, cols = 1 + k + n1;
          IntMatrix a0(rows, cols);
          a0(0, 0) = 1;
          for (std::size_t i = 0; i < k; ++i) a0(1 + i, 1 + i) = g.torsion[i];
          c.expect(r.a0 == a0 && presentation_matrix(g, n1) == a0, "A0 pattern for " + tag);
          c.expect(r.a == r.p * r.a0 * r.q, "A != P A0 Q for " + tag);
          c.expect(r.a.rows() == rows && r.a.cols() == cols, "A shape for " + tag);
          if (r.a.rows() != rows || r.a.cols() != cols) return;
          for (std::size_t j = 0; j < cols; ++j) c.expect(r.a(0, j) == 1, "first row of A for " + tag);
          for (std::size_t i = 1; i < rows; ++i) {
            Integer b = r.a(i, 0);
            c.expect(b >= 1 && b == 1 - r.normalized_unit[i - 1], "b_i for " + tag);
            for (std::size_t j = 1; j < cols; ++j) {
              Integer expected = b + (i == j && i <= k ? g.torsion[i - 1] : Integer(0));
              c.expect(r.a(i, j) == expected, "b-pattern entry for " + tag);
            }
          }
          IntMatrix id(rows, cols);
          for (std::size_t i = 0; i < cols; ++i) id(i, i) = 1;
          c.expect(regular_vertex_matrix(r.graph) == r.a + id, "R != A + I for " + tag);
        });
      }
  // g0 = 0 with G free: the displayed (n+2) x (n'+2) matrix
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t n1 = 0; n1 <= n; ++n1) {
      RealizationRequest req{FgaGroup::make({}, n), n1, zero_vector(n), RealizationClass::UnitalDominated};
      Realization r = realize_unital_dominated(req);
      IntMatrix expected(n + 2, n1 + 2);
      for (std::size_t i = 0; i < n + 2; ++i)
        for (std::size_t j = 0; j < n1 + 2; ++j) expected(i, j) = i == 0 ? (j == 0 ? 3 : 2) : (j == 0 ? 2 : 1);
      std::string tag = "n=" + std::to_string(n) + " n'=" + std::to_string(n1);
      c.expect(r.a == expected, "free zero-unit matrix for " + tag);
      auto shape = oracle::cokernel_shape(expected);
      c.expect(shape.torsion.empty() && shape.free_rank == n, "coker for " + tag);
      c.expect(kernel_basis(expected).cols() == n1 && oracle::rank(expected) == 2, "ker for " + tag);
      c.expect(cokernel(expected).is_zero(ones_vector(n + 2)), "unit class for " + tag);
      c.expect(verify_realization(req, r).passed(), "verification for " + tag);
    }
  if (c.out.pass) c.out.detail = "A0, P A0 Q, b-pattern and the free zero-unit matrix";
  return c.out;
}

Outcome snake_roundtrip() {
  Checker c;
  std::mt19937_64 rng(5);
  int dominated = 0;
  for (int trial = 0; trial < 500 && c.out.pass; ++trial) {
    std::size_t n1 = 1 + rng() % 4, n1p = 1 + rng() % 4, n3 = 1 + rng() % 4, n3p = rng() % 5;
    IntMatrix a = oracle::random_matrix(rng, n1, n1p, 3);
    IntMatrix b = oracle::random_matrix(rng, n3, n3p, 3);
    auto t = fixtures::snake_target(a, b, oracle::random_matrix(rng, n1, n3p, 4));
    SpliceResult r = build_y(a, b, t);
    c.expect(check_splice(a, b, t, r).passed(), "build_y roundtrip at trial " + std::to_string(trial));
    // dominators: a positive column of a gives one of all ones on the left,
    // a positive row of b one on the right
    Side side = trial % 2 ? Side::Right : Side::Left;
    IntMatrix dom;
    if (side == Side::Left) {
      std::size_t col = rng() % n1p;
      for (std::size_t i = 0; i < n1; ++i) a(i, col) = 1 + long(rng() % 3);
      dom = IntMatrix(n1p, n1);
      for (std::size_t j = 0; j < n1; ++j) dom(col, j) = 1;
    } else {
      std::size_t row = rng() % n3;
      for (std::size_t j = 0; j < n3p; ++j) b(row, j) = 1 + long(rng() % 3);
      dom = IntMatrix(n3p, n3);
      for (std::size_t i = 0; i < n3p; ++i) dom(i, row) = 1;
    }
    t = fixtures::snake_target(a, b, oracle::random_matrix(rng, n1, n3p, 4));
    r = build_y(a, b, t);
    IntMatrix z = oracle::random_matrix(rng, n1, n3p, 3).abs();
    SpliceResult adj = adjust_dominate(a, b, t, r, z, side, dom);
    c.expect(adj.y.dominates(z), "dominated y below the floor at trial " + std::to_string(trial));
    c.expect(check_splice(a, b, t, adj).passed(), "dominated iso at trial " + std::to_string(trial));
    ++dominated;
  }
  if (c.out.pass) c.out.detail = "500 roundtrips, " + std::to_string(dominated) + " dominations";
  return c.out;
}

SpliceTarget z2_target(const PresentedGroup& g2, const IntMatrix& eps, const IntMatrix& gam) {
  PresentedGroup g1 = cokernel(IntMatrix{{2}}), g3 = cokernel(IntMatrix{{2}}), f = PresentedGroup::free(0);
  SixTermSequence s(Homomorphism(g1, g2, eps), Homomorphism(g2, g3, gam), Homomorphism(g3, f, IntMatrix(0, 1)),
                    Homomorphism(f, f, IntMatrix(0, 0)), Homomorphism(f, f, IntMatrix(0, 0)),
                    Homomorphism(f, g1, IntMatrix(1, 0)));
  return SpliceTarget{s, Homomorphism::identity(g1), Homomorphism::identity(f), Homomorphism::identity(g3),
                      Homomorphism::identity(f), std::nullopt, std::nullopt};
}

Outcome extension_oracle() {
  Checker c;
  IntMatrix a{{2}}, b{{2}};
  // oracle: invariant factors of [[2, y], [0, 2]] for y in {0, 1}
  std::vector<long> odd_ok, even_ok;
  for (long y = 0; y <= 1; ++y) {
    auto f = oracle::invariant_factors(IntMatrix{{2, y}, {0, 2}});
    if (f == std::vector<Integer>{1, 4}) odd_ok.push_back(y);
    if (f == std::vector<Integer>{2, 2}) even_ok.push_back(y);
  }
  c.expect(odd_ok == std::vector<long>{1} && even_ok == std::vector<long>{0}, "oracle disagrees with expectations");
  SpliceTarget cyclic = z2_target(cokernel(IntMatrix{{4}}), IntMatrix{{2}}, IntMatrix{{1}});
  SpliceTarget split = z2_target(cokernel(IntMatrix{{2, 0}, {0, 2}}), IntMatrix{{1}, {0}}, IntMatrix{{0, 1}});
  SpliceResult rc = build_y(a, b, cyclic), rs = build_y(a, b, split);
  long yc = mpz_fdiv_ui(rc.y(0, 0).get_mpz_t(), 2), ys = mpz_fdiv_ui(rs.y(0, 0).get_mpz_t(), 2);
  c.expect(yc == odd_ok.front(), "Z/4 target gave y = " + rc.y(0, 0).get_str());
  c.expect(ys == even_ok.front(), "(Z/2)^2 target gave y = " + rs.y(0, 0).get_str());
  c.expect(check_splice(a, b, cyclic, rc).passed() && check_splice(a, b, split, rs).passed(), "iso check");
  if (c.out.pass) c.out.detail = "Z/4 -> y = " + rc.y(0, 0).get_str() + ", (Z/2)^2 -> y = " + rs.y(0, 0).get_str();
  return c.out;
}

SixTermSequence k0_only(const PresentedGroup& g1, const PresentedGroup& g2, const PresentedGroup& g3,
                        const IntMatrix& eps, const IntMatrix& gam) {
  PresentedGroup f = PresentedGroup::free(0);
  return SixTermSequence(Homomorphism(g1, g2, eps), Homomorphism(g2, g3, gam),
                         Homomorphism(g3, f, IntMatrix(0, g3.ambient_rank())), Homomorphism(f, f, IntMatrix(0, 0)),
                         Homomorphism(f, f, IntMatrix(0, 0)), Homomorphism(f, g1, IntMatrix(g1.ambient_rank(), 0)));
}

Outcome desk_splice() {
  Checker c;
  auto s = k0_only(cokernel(IntMatrix{{2}}), cokernel(IntMatrix{{6}}), cokernel(IntMatrix{{3}}), IntMatrix{{3}},
                   IntMatrix{{1}});
  OrderedSixTerm t{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, std::nullopt};
  RangeCase rc{RangeClass::UniqueIdeal, IdealType::InfInf};
  RangeRealization r = realize_range(rc, t);
  c.expect(r.graph.size() == 4, "graph has " + std::to_string(r.graph.size()) + " vertices");
  auto lattice = gauge_ideal_lattice(r.graph);
  std::size_t nontrivial = 0;
  for (const auto& j : lattice)
    if (!j.hereditary.empty() && j.hereditary.count() != r.graph.size()) ++nontrivial;
  c.expect(nontrivial == 1, std::to_string(nontrivial) + " nontrivial gauge-invariant ideals");
  c.expect(r.report.exact && r.report.isomorphic, "six-term sequence not isomorphic to the target");
  OrderTag tag = cone_tag(r.graph, r.ideal, ConeCase::LargestIdeal);
  c.expect(tag.kind() == OrderTag::Kind::Trivial, "cone tag " + tag.describe());
  if (c.out.pass) c.out.detail = "4 vertices, one nontrivial ideal, cone " + tag.describe();
  return c.out;
}

// m + k + n + l + 2 for the end groups of a sequence
std::size_t stated_count(const SixTermSequence& s) {
  return s.g1().canonical().generator_count() + s.g3().canonical().generator_count() + 2;
}

Outcome vertex_counts() {
  Checker c;
  std::mt19937_64 rng(8);
  RangeCase rc{RangeClass::Unital, IdealType::InfInf};
  int realized = 0;
  for (int trial = 0; trial < 400 && realized < 150 && c.out.pass; ++trial) {
    // ker a has rank <= free rank of coker a when a has no more columns than rows
    std::size_t n1 = 1 + rng() % 3, n3 = 1 + rng() % 3;
    IntMatrix a = oracle::random_matrix(rng, n1, rng() % (n1 + 1), 3);
    IntMatrix b = oracle::random_matrix(rng, n3, rng() % (n3 + 1), 3);
    SixTermSequence s = snake(a, b, oracle::random_matrix(rng, n1, b.cols(), 3));
    IntVector unit = oracle::random_matrix(rng, 1, s.g2().ambient_rank(), 3).row(0);
    OrderedSixTerm t{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, unit};
    if (!check_range(rc, t).admissible) continue;
    RangeRealization r = realize_range(rc, t);
    std::string tag = "G1 " + s.g1().canonical().to_string() + ", G3 " + s.g3().canonical().to_string();
    c.expect(r.graph.size() == stated_count(s),
             std::to_string(r.graph.size()) + " vertices, stated " + std::to_string(stated_count(s)) + " for " + tag);
    c.expect(r.report.unit && r.report.isomorphic && r.report.unique_nontrivial, "verification for " + tag);
    c.expect(r.graph.size() >= s.g2().canonical().generator_count(), "lower bound for " + tag);
    ++realized;
  }
  c.expect(realized >= 50, "only " + std::to_string(realized) + " admissible samples");
  // the worked shape: G1 = Z/2 + Z, G3 = Z/3
  PresentedGroup g1 = cokernel(IntMatrix{{2}, {0}});
  PresentedGroup g2 = cokernel(IntMatrix{{2, 0}, {0, 0}, {0, 3}});
  auto s = k0_only(g1, g2, cokernel(IntMatrix{{3}}), IntMatrix{{1, 0}, {0, 1}, {0, 0}}, IntMatrix{{0, 0, 1}});
  for (long x = 0; x < 2; ++x)
    for (long y = -2; y <= 2; ++y)
      for (long z = 0; z < 3; ++z) {
        OrderedSixTerm t{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, IntVector{x, y, z}};
        RangeRealization r = realize_range(rc, t);
        c.expect(r.graph.size() == 5, "worked shape gave " + std::to_string(r.graph.size()) + " vertices");
        c.expect(r.graph.size() >= g2.canonical().generator_count(), "lower bound on the worked shape");
      }
  // every unital realization: at least k + n vertices
  for (long m = 2; m <= 12; ++m)
    for (std::size_t n = 0; n <= 2; ++n)
      for (auto cls : {RealizationClass::Unital, RealizationClass::UnitalDominated, RealizationClass::CuntzKrieger}) {
        FgaGroup g = FgaGroup::make({Integer(m)}, n);
        for_each_unit(g, 1, [&](const IntVector& unit) {
          RealizationRequest req{g, cls == RealizationClass::CuntzKrieger ? n : 0, unit, cls};
          Realization r = realize(req);
          c.expect(r.graph.size() >= g.generator_count() && verify_realization(req, r).vertex_bound,
                   "lower bound for " + g.to_string());
        });
      }
  if (c.out.pass) c.out.detail = std::to_string(realized) + " random unital [inf inf] inputs at the stated count";
  return c.out;
}

Outcome permanence_table() {
  Checker c;
  PresentedGroup z = PresentedGroup::free(1), o = PresentedGroup::free(0);
  SixTermSequence nonzero_index(Homomorphism(o, o, IntMatrix(0, 0)), Homomorphism(o, z, IntMatrix(1, 0)),
                                Homomorphism(z, z, IntMatrix{{1}}), Homomorphism(z, o, IntMatrix(0, 1)),
                                Homomorphism(o, o, IntMatrix(0, 0)), Homomorphism(o, o, IntMatrix(0, 0)));
  auto s = k0_only(o, z, z, IntMatrix(1, 0), IntMatrix{{1}});
  OrderTag trivial = OrderTag::trivial();
  OrderedSixTerm ex1{nonzero_index, {trivial, trivial, trivial}, std::nullopt};
  OrderedSixTerm ex2{s, {trivial, OrderTag::pulled_back(s.gam(), OrderTag::zplus()), trivial}, std::nullopt};
  OrderedSixTerm ex3{s, {trivial, trivial, trivial}, std::nullopt};
  bool v1 = permanence(ex1, PermanenceFlavor::Stable).admissible;
  bool v2 = permanence(ex2, PermanenceFlavor::Stable).admissible;
  bool v3 = permanence(ex3, PermanenceFlavor::Stable).admissible;
  c.expect(!v1 && !v2 && v3, "verdicts (" + std::to_string(v1) + ", " + std::to_string(v2) + ", " + std::to_string(v3) + ")");

  std::mt19937_64 rng(17);
  int flips = 0;
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = oracle::random_matrix(rng, 1 + rng() % 3, rng() % 4, 2);
    IntMatrix b = oracle::random_matrix(rng, 1 + rng() % 3, rng() % 4, 2);
    SixTermSequence seq = snake(a, b, oracle::random_matrix(rng, a.rows(), b.cols(), 2));
    auto random_tag = [&](const PresentedGroup& g) {
      switch (rng() % 3) {
        case 0: return OrderTag::trivial();
        case 1:
          return g.canonical().is_free() && g.canonical().free_rank > 0 ? OrderTag::simplicial(g.canonical().free_rank)
                                                                         : OrderTag::trivial();
        default: return OrderTag::pulled_back(seq.gam(), OrderTag::zplus());
      }
    };
    OrderedSixTerm t{seq, {random_tag(seq.g1()), random_tag(seq.g2()), OrderTag::trivial()}, std::nullopt};
    if (rng() % 2) t.tags[2] = OrderTag::simplicial(1);
    OrderedSixTerm with_index = t;
    with_index.seq = seq.with_del0(
        Homomorphism(seq.g3(), seq.f1(), oracle::random_matrix(rng, seq.f1().ambient_rank(), seq.g3().ambient_rank(), 2)));
    for (auto flavor : {PermanenceFlavor::Stable, PermanenceFlavor::UnitalPurelyInfinite, PermanenceFlavor::CuntzKrieger}) {
      bool before = permanence(with_index, flavor).admissible;
      bool after = permanence(t, flavor).admissible;
      c.expect(!before || after, "zeroing the index map lost permanence at trial " + std::to_string(trial));
      if (!before && after) ++flips;
    }
  }
  if (c.out.pass) c.out.detail = "(false, false, true); 100 sequences, " + std::to_string(flips) + " verdicts gained";
  return c.out;
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(KFORGE_CLI) + " " + args + " 2>&1";
  Run r{0, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, "popen failed"};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_goldens() {
  Checker c;
  fs::path src = KFORGE_SOURCE_DIR;
  fs::path fixtures = src / "tests" / "fixtures";
  Run golden = run("compute " + (fixtures / "wv.json").string() + " --ideal w");
  c.expect(golden.code == 0, "compute exited " + std::to_string(golden.code));
  c.expect(golden.out == slurp(src / "tests" / "golden" / "compute_wv.json"), "compute report differs from the golden");

  fs::path tmp = fs::temp_directory_path() / ("kforge_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  auto f = [&](const std::string& name) { return (tmp / name).string(); };
  auto fx = [&](const std::string& name) { return (fixtures / name).string(); };
  std::vector<std::pair<std::string, std::string>> producers = {
      {"ck.json", "realize --class ck --group '{\"torsion\":[2],\"rank\":0}' --unit [1] --k1_rank 0"},
      {"unital.json", "realize --class unital --group '{\"torsion\":[6],\"rank\":1}' --unit [5,3] --k1_rank 1"},
      {"singular.json", "realize --class unital --group '{\"torsion\":[],\"rank\":2}' --unit [-1,2] --k1_rank 0"},
      {"dominated.json", "realize --class dominated --group '{\"torsion\":[],\"rank\":2}' --unit [0,0] --k1_rank 1"},
      {"pi.json", "realize --class pi --group '{\"torsion\":[2,6],\"rank\":2}' --k1_rank 2"},
      {"splice.json", "splice " + fx("o3.json") + " " + fx("o4.json") + " " + fx("seq_2_6_3.json")},
      {"range.json", "range " + fx("seq_2_6_3.json") + " --class unique --type inf-inf --realize"},
  };
  int graphs = 0;
  for (const auto& [name, args] : producers) {
    Run r = run(args + " -o " + f(name) + " --dot " + f(name + ".dot"));
    c.expect(r.code == 0, name + ": producer exited " + std::to_string(r.code) + ": " + r.out.substr(0, 200));
    if (r.code != 0) continue;
    c.expect(r.out == slurp(f(name)), name + ": stdout and output file differ");
    Run v = run("verify " + f(name));
    c.expect(v.code == 0, name + ": verify exited " + std::to_string(v.code));
    io::Json j = io::read_file(f(name));
    Graph e = io::graph_from_json(j["graph"]);
    c.expect(io::graph_from_json(io::to_json(e)) == e, name + ": graph does not survive parse/serialize");
    std::ofstream(f(name + ".graph.json")) << io::dump(io::to_json(e));
    c.expect(run("compute " + f(name + ".graph.json")).code == 0, name + ": emitted graph fails compute");
    std::string dot = slurp(f(name + ".dot"));
    c.expect(dot.rfind("digraph", 0) == 0, name + ": DOT output missing");
    ++graphs;
  }
  // a tampered file must not verify
  io::Json j = io::read_file(f("splice.json"));
  j["y"] = io::Json::array({io::Json::array({4})});
  std::ofstream(f("tampered.json")) << io::dump(j);
  c.expect(run("verify " + f("tampered.json")).code == 1, "tampered splice result verified");
  j = io::read_file(f("ck.json"));
  j["graph"]["edges"][0]["mult"] = 3;
  std::ofstream(f("tampered_ck.json")) << io::dump(j);
  c.expect(run("verify " + f("tampered_ck.json")).code == 1, "tampered realization verified");
  Run perm = run("permanence " + fx("perm_del0.json"));
  c.expect(perm.code == 1 && perm.out.find("\"(1)") != std::string::npos, "permanence with a nonzero index map");
  c.expect(run("compute " + f("missing.json")).code == 2, "missing input did not exit 2");
  fs::remove_all(tmp);
  if (c.out.pass) c.out.detail = "golden matches; " + std::to_string(graphs) + " emitted graphs re-verified";
  return c.out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"SNF suite", snf_suite},
      {"K-theory sweep over graphs with at most 3 vertices", k_theory_sweep},
      {"unital realization sweep", unital_realization},
      {"construction matrices reproduced", paper_matrices},
      {"snake / build_y roundtrip and domination", snake_roundtrip},
      {"extension classification oracle", extension_oracle},
      {"splice end-to-end, Z/2 by Z/3", desk_splice},
      {"vertex counts", vertex_counts},
      {"permanence truth table and monotonicity", permanence_table},
      {"CLI goldens and round-trips", cli_goldens},
  };
  int failures = 0, index = 0;
  for (const auto& cr : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << index << ". " << cr.name << " (" << t << "): " << o.detail << std::endl;
  }
  return failures;
}

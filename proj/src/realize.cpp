#include "kforge/realize.hpp"

#include <set>

#include "kforge/error.hpp"
#include "kforge/ktheory.hpp"

namespace kforge {

IntMatrix presentation_matrix(const FgaGroup& g, std::size_t k1_rank) {
  const std::size_t k = g.torsion.size();
  if (k1_rank > g.free_rank)
    throw Error(ErrorCode::RankViolation, "K1 rank " + std::to_string(k1_rank) + " exceeds the free rank " +
                                              std::to_string(g.free_rank) + " of K0");
  IntMatrix a0(1 + k + g.free_rank, 1 + k + k1_rank);
  a0(0, 0) = 1;
  for (std::size_t i = 0; i < k; ++i) a0(1 + i, 1 + i) = g.torsion[i];
  return a0;
}

namespace {

IntVector requested_unit(const RealizationRequest& req) {
  const std::size_t len = req.group.generator_count();
  if (!req.unit) return zero_vector(len);
  if (req.unit->size() != len)
    throw Error(ErrorCode::ShapeMismatch, "unit has " + std::to_string(req.unit->size()) + " coordinates, group has " +
                                              std::to_string(len) + " generators");
  return *req.unit;
}

// Regular vertices 0..cols-1 with R = a + I'; the rest emit infinitely many
// edges to every vertex.
Graph graph_from_matrix(const IntMatrix& a) {
  const std::size_t n = a.rows(), reg = a.cols();
  std::vector<Edge> edges;
  for (std::size_t src = 0; src < n; ++src)
    for (std::size_t dst = 0; dst < n; ++dst) {
      if (src < reg) {
        Integer count = a(dst, src) + (dst == src ? 1 : 0);
        if (count < 0) throw Error(ErrorCode::VerificationFailed, "negative edge count");
        if (count != 0) edges.push_back({src, dst, Multiplicity(count)});
      } else {
        edges.push_back({src, dst, Multiplicity::infinite()});
      }
    }
  return Graph(Graph::numbered_labels(n), edges);
}

void require_passed(const RealizationRequest& req, const Realization& r) {
  RealizationReport rep = verify_realization(req, r);
  if (!rep.passed()) throw Error(ErrorCode::VerificationFailed, "constructed graph fails its postconditions");
}

// Unital construction with the coefficients a_i already chosen (a_i <= 0).
Realization unital_from_coefficients(const RealizationRequest& req, const IntVector& a, const std::vector<int>& sign) {
  const FgaGroup& g = req.group;
  const std::size_t len = g.generator_count();
  Realization r{Graph(), Homomorphism::identity(PresentedGroup()), std::nullopt, {}, {}, {}, {}, a};
  r.a0 = presentation_matrix(g, req.k1_rank);
  const std::size_t rows = r.a0.rows(), cols = r.a0.cols();
  r.p = IntMatrix::identity(rows);
  for (std::size_t i = 0; i < len; ++i) r.p(1 + i, 0) = 1 - a[i];
  r.q = IntMatrix::identity(cols);
  for (std::size_t j = 0; j < cols; ++j) r.q(0, j) = 1;
  r.a = r.p * r.a0 * r.q;
  r.graph = graph_from_matrix(r.a);

  // pi = pi_0 after P^{-1}; P^{-1} = I - b e_0^t
  IntMatrix pi(len, rows);
  for (std::size_t i = 0; i < len; ++i) {
    pi(i, 1 + i) = sign[i];
    pi(i, 0) = -sign[i] * (1 - a[i]);
  }
  r.k0_iso = Homomorphism(cokernel(k_matrix(r.graph)), PresentedGroup::standard(g), pi);
  return r;
}

struct Normalized {
  IntVector a;
  std::vector<int> sign;
};

Normalized normalize(const FgaGroup& g, const IntVector& unit) {
  const std::size_t k = g.torsion.size();
  Normalized n{unit, std::vector<int>(unit.size(), 1)};
  for (std::size_t i = 0; i < unit.size(); ++i) {
    if (i < k) {
      if (n.a[i] > 0) n.a[i] -= g.torsion[i] * ceil_div(n.a[i], g.torsion[i]);
    } else if (n.a[i] > 0) {
      n.a[i] = -n.a[i];
      n.sign[i] = -1;
    }
  }
  return n;
}

}  // namespace

Realization realize_unital(const RealizationRequest& req) {
  Normalized n = normalize(req.group, requested_unit(req));
  Realization r = unital_from_coefficients(req, n.a, n.sign);
  require_passed(req, r);
  return r;
}

Realization realize_unital_dominated(const RealizationRequest& req) {
  const FgaGroup& g = req.group;
  IntVector unit = requested_unit(req);
  Normalized n = normalize(g, unit);
  for (std::size_t i = 0; i < n.a.size(); ++i) {
    if (n.a[i] < 0) {
      Realization r = unital_from_coefficients(req, n.a, n.sign);
      r.dominated_pair = {{1 + i, 0}};
      require_passed(req, r);
      return r;
    }
  }
  if (!g.torsion.empty()) {
    n.a[0] -= g.torsion[0];
    Realization r = unital_from_coefficients(req, n.a, n.sign);
    r.dominated_pair = {{1, 0}};
    require_passed(req, r);
    return r;
  }
  // zero unit in a free group: one extra vertex
  const std::size_t rank = g.free_rank;
  if (req.k1_rank > rank) presentation_matrix(g, req.k1_rank);
  IntMatrix a(rank + 2, req.k1_rank + 2);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = (i == 0 ? 2 : 1) + (j == 0 ? 1 : 0);
  Realization r{graph_from_matrix(a), Homomorphism::identity(PresentedGroup()), std::pair<std::size_t, std::size_t>{0, 1},
                {}, {}, {}, a, n.a};
  // im a is spanned by the all-ones vector and e_0; read off x_j - x_1
  IntMatrix pi(rank, rank + 2);
  for (std::size_t i = 0; i < rank; ++i) {
    pi(i, 2 + i) = 1;
    pi(i, 1) = -1;
  }
  r.k0_iso = Homomorphism(cokernel(k_matrix(r.graph)), PresentedGroup::standard(g), pi);
  require_passed(req, r);
  return r;
}

Realization realize_simple_pi(const RealizationRequest& req) {
  const FgaGroup& g = req.group;
  if (req.k1_rank > g.free_rank) presentation_matrix(g, req.k1_rank);
  if (req.k1_rank < g.free_rank) {
    RealizationRequest unital = req;
    unital.unit.reset();
    Realization r = realize_unital(unital);
    require_passed(req, r);
    return r;
  }
  const std::size_t k = g.torsion.size();
  std::size_t n = g.generator_count();
  IntMatrix a0;
  if (n == 0) {
    n = 1;
    a0 = IntMatrix{{1}};
  } else {
    a0 = IntMatrix(n, n);
    for (std::size_t i = 0; i < k; ++i) a0(i, i) = g.torsion[i];
  }
  IntMatrix a1 = a0.abs();
  for (std::size_t i = 0; i < n; ++i) {
    a1(i, i) += 1;
    if (i + 1 < n) {
      a1(i, i + 1) += 1;
      a1(i + 1, i) += 1;
    }
  }
  IntMatrix id = IntMatrix::identity(n);
  IntMatrix top = IntMatrix::hcat(a0 + a1 + id, a1);
  IntMatrix bottom = IntMatrix::hcat(id, 2 * id);
  IntMatrix a = IntMatrix::vcat(top, bottom);
  // all vertices regular, R = a
  Graph graph = graph_from_matrix(a - IntMatrix::identity(2 * n));
  // (a - I) = [[I, a1], [0, I]] diag(a0, I) [[I, 0], [I, I]]; undo the left factor
  IntMatrix pi = IntMatrix::hcat(id, -a1);
  if (g.generator_count() == 0) pi = IntMatrix(0, 2 * n);
  Realization r{graph, Homomorphism(cokernel(k_matrix(graph)), PresentedGroup::standard(g), pi), std::nullopt,
                a0, {}, {}, a, {}};
  require_passed(req, r);
  return r;
}

Realization realize_cuntz_krieger(const RealizationRequest& req) {
  if (req.k1_rank != req.group.free_rank)
    throw Error(ErrorCode::RankViolation, "finite graphs without singular vertices need rank K1 = rank K0");
  return realize_unital(req);
}

Realization realize(const RealizationRequest& req) {
  switch (req.cls) {
    case RealizationClass::SimplePurelyInfinite: return realize_simple_pi(req);
    case RealizationClass::Unital: return realize_unital(req);
    case RealizationClass::UnitalDominated: return realize_unital_dominated(req);
    case RealizationClass::CuntzKrieger: return realize_cuntz_krieger(req);
  }
  throw Error(ErrorCode::InvalidInput, "unknown realization class");
}

RealizationReport verify_realization(const RealizationRequest& req, const Realization& r) {
  RealizationReport rep;
  const Graph& e = r.graph;
  KPair k = k_groups(e);
  rep.k_theory = k.k0.canonical() == req.group && k.k1_rank() == req.k1_rank;
  PresentedGroup target = PresentedGroup::standard(req.group);
  rep.iso = r.k0_iso.domain().same_presentation(k.k0) && r.k0_iso.codomain().same_presentation(target) &&
            hom_check(r.k0_iso).is_iso();
  rep.unit = true;
  if (req.cls != RealizationClass::SimplePurelyInfinite)
    rep.unit = rep.iso && target.equal(r.k0_iso(ones_vector(e.size())), requested_unit(req));
  rep.loops = true;
  for (std::size_t v = 0; v < e.size(); ++v)
    if (!e.mult(v, v).at_least(2)) rep.loops = false;
  rep.transitive = is_transitive(e);
  rep.vertex_bound = e.size() >= req.group.generator_count();
  if (r.dominated_pair) {
    auto [v, w] = *r.dominated_pair;
    IntMatrix m = k_matrix(e);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(w, j) < m(v, j))) rep.dominated = false;
  }
  return rep;
}

Graph add_heads_tails(const Graph& e, const HeadTailOptions& opts) {
  std::vector<std::string> labels = e.labels();
  std::set<std::string> used(labels.begin(), labels.end());
  std::vector<Edge> edges = e.edges();
  auto fresh = [&](std::string base) {
    while (used.count(base)) base += "'";
    used.insert(base);
    labels.push_back(base);
    return labels.size() - 1;
  };
  for (std::size_t v = 0; v < e.size(); ++v) {
    bool source = true;
    for (std::size_t u = 0; u < e.size(); ++u)
      if (!e.mult(u, v).is_zero()) source = false;
    if (e.is_sink(v)) {
      std::size_t prev = v;
      for (std::size_t i = 1; i <= opts.tail_length; ++i) {
        std::size_t t = fresh(e.label(v) + ".t" + std::to_string(i));
        edges.push_back({prev, t, 1});
        prev = t;
      }
    }
    if (source) {
      std::size_t next = v;
      for (std::size_t i = 1; i <= opts.head_length; ++i) {
        std::size_t h = fresh(e.label(v) + ".h" + std::to_string(i));
        edges.push_back({h, next, 1});
        next = h;
      }
    }
  }
  return Graph(labels, edges);
}

Graph simplicial_graph(std::size_t k) { return Graph(Graph::numbered_labels(k), {}); }

Graph integer_unit_graph(const Integer& n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "unit must be positive");
  if (n == 1) return Graph({"w"}, {});
  return Graph({"v", "w"}, {{0, 1, Multiplicity(n - 1)}});
}

}  // namespace kforge

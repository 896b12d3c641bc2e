#include "kforge/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

#include "kforge/error.hpp"

namespace kforge {

Multiplicity::Multiplicity(long n) : Multiplicity(Integer(n)) {}

Multiplicity::Multiplicity(Integer n) : count_(std::move(n)) {
  if (count_ < 0) throw Error(ErrorCode::InvalidInput, "negative edge multiplicity");
}

Multiplicity Multiplicity::infinite() {
  Multiplicity m;
  m.infinite_ = true;
  return m;
}

const Integer& Multiplicity::count() const {
  if (infinite_) throw Error(ErrorCode::InvalidInput, "infinite multiplicity has no count");
  return count_;
}

std::string Multiplicity::to_string() const { return infinite_ ? "inf" : count_.get_str(); }

VertexSet::VertexSet(std::size_t universe, const std::vector<std::size_t>& members) : member_(universe, false) {
  for (std::size_t v : members) insert(v);
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  s.member_.assign(universe, true);
  return s;
}

std::size_t VertexSet::count() const { return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true)); }

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < member_.size(); ++v)
    if (member_[v]) out.push_back(v);
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet s(universe());
  for (std::size_t v = 0; v < universe(); ++v) s.member_[v] = !member_[v];
  return s;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  for (std::size_t v = 0; v < universe(); ++v)
    if (member_[v] && !other.member_.at(v)) return false;
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
  for (std::size_t v = 0; v < universe(); ++v)
    if (member_[v] && other.member_.at(v)) return true;
  return false;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet s = *this;
  for (std::size_t v = 0; v < universe(); ++v)
    if (other.member_.at(v)) s.member_[v] = true;
  return s;
}

Graph::Graph(std::vector<std::string> labels, const std::vector<Edge>& edges)
    : labels_(std::move(labels)), mult_(labels_.size() * labels_.size()) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw Error(ErrorCode::InvalidInput, "duplicate vertex label");
  std::vector<bool> set(mult_.size(), false);
  for (const auto& e : edges) {
    if (e.src >= size() || e.dst >= size()) throw Error(ErrorCode::InvalidInput, "edge endpoint out of range");
    std::size_t k = e.src * size() + e.dst;
    if (set[k])
      throw Error(ErrorCode::InvalidInput, "repeated edge entry " + labels_[e.src] + " -> " + labels_[e.dst]);
    set[k] = true;
    mult_[k] = e.mult;
  }
}

Graph Graph::from_counts(std::vector<std::string> labels, const IntMatrix& counts) {
  if (counts.rows() != labels.size() || counts.cols() != labels.size())
    throw Error(ErrorCode::ShapeMismatch, "edge count matrix does not match the vertex list");
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < counts.rows(); ++s)
    for (std::size_t d = 0; d < counts.cols(); ++d)
      if (counts(s, d) != 0) edges.push_back({s, d, Multiplicity(counts(s, d))});
  return Graph(std::move(labels), edges);
}

std::vector<std::string> Graph::numbered_labels(std::size_t n, std::size_t first) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(first + i));
  return out;
}

std::optional<std::size_t> Graph::find(std::string_view label) const {
  for (std::size_t v = 0; v < size(); ++v)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (std::size_t s = 0; s < size(); ++s)
    for (std::size_t d = 0; d < size(); ++d)
      if (!mult(s, d).is_zero()) out.push_back({s, d, mult(s, d)});
  return out;
}

bool Graph::is_sink(std::size_t v) const {
  for (std::size_t w = 0; w < size(); ++w)
    if (!mult(v, w).is_zero()) return false;
  return true;
}

bool Graph::is_infinite_emitter(std::size_t v) const {
  for (std::size_t w = 0; w < size(); ++w)
    if (mult(v, w).is_infinite()) return true;
  return false;
}

std::vector<std::size_t> Graph::regular_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (is_regular(v)) out.push_back(v);
  return out;
}

std::vector<std::size_t> Graph::singular_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (!is_regular(v)) out.push_back(v);
  return out;
}

bool Graph::row_finite() const {
  for (std::size_t v = 0; v < size(); ++v)
    if (is_infinite_emitter(v)) return false;
  return true;
}

Graph Graph::induced(const std::vector<std::size_t>& keep) const {
  std::vector<std::string> labels;
  for (std::size_t v : keep) labels.push_back(label(v));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (!mult(keep[i], keep[j]).is_zero()) edges.push_back({i, j, mult(keep[i], keep[j])});
  return Graph(std::move(labels), edges);
}

Graph Graph::relabeled(std::vector<std::string> labels) const {
  if (labels.size() != size()) throw Error(ErrorCode::ShapeMismatch, "relabel length");
  return Graph(std::move(labels), edges());
}

IntMatrix regular_vertex_matrix(const Graph& e) {
  auto reg = e.regular_vertices();
  IntMatrix r(e.size(), reg.size());
  for (std::size_t v = 0; v < e.size(); ++v)
    for (std::size_t j = 0; j < reg.size(); ++j) r(v, j) = e.mult(reg[j], v).count();
  return r;
}

IntMatrix regular_inclusion(const Graph& e) {
  auto reg = e.regular_vertices();
  IntMatrix m(e.size(), reg.size());
  for (std::size_t j = 0; j < reg.size(); ++j) m(reg[j], j) = 1;
  return m;
}

SubsetAnalysis analyze_subset(const Graph& e, const VertexSet& h) {
  if (h.universe() != e.size()) throw Error(ErrorCode::ShapeMismatch, "vertex set universe");
  SubsetAnalysis a;
  a.hereditary = true;
  for (std::size_t v : h.members())
    for (std::size_t w = 0; w < e.size(); ++w)
      if (!e.mult(v, w).is_zero() && !h.contains(w)) a.hereditary = false;
  a.saturated = true;
  a.breaking = VertexSet(e.size());
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (h.contains(v)) continue;
    bool outside_infinite = false;
    bool outside_any = false;
    for (std::size_t w = 0; w < e.size(); ++w) {
      if (h.contains(w) || e.mult(v, w).is_zero()) continue;
      outside_any = true;
      if (e.mult(v, w).is_infinite()) outside_infinite = true;
    }
    if (e.is_regular(v) && !outside_any) a.saturated = false;
    if (e.is_infinite_emitter(v) && outside_any && !outside_infinite) a.breaking.insert(v);
  }
  return a;
}

VertexSet hereditary_closure(const Graph& e, const VertexSet& h) {
  VertexSet s = h;
  std::vector<std::size_t> stack = h.members();
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < e.size(); ++w)
      if (!e.mult(v, w).is_zero() && !s.contains(w)) {
        s.insert(w);
        stack.push_back(w);
      }
  }
  return s;
}

VertexSet saturation_closure(const Graph& e, const VertexSet& h) {
  VertexSet s = h;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (s.contains(v) || !e.is_regular(v)) continue;
      bool inside = true;
      for (std::size_t w = 0; w < e.size() && inside; ++w)
        if (!e.mult(v, w).is_zero() && !s.contains(w)) inside = false;
      if (inside) {
        s.insert(v);
        changed = true;
      }
    }
  }
  return s;
}

Split split_at(const Graph& e, const VertexSet& h) {
  SubsetAnalysis a = analyze_subset(e, h);
  if (!a.hereditary) throw Error(ErrorCode::NotHereditary, "edges leave the vertex set");
  if (!a.saturated) throw Error(ErrorCode::NotSaturated, "a regular vertex outside the set emits only into it");
  if (!a.breaking.empty()) throw Error(ErrorCode::HasBreakingVertices, "the quotient gains regular vertices");
  Split s;
  auto inside = h.members();
  auto outside = h.complement().members();
  s.ideal = e.induced(inside);
  s.quotient = e.induced(outside);
  s.order = inside;
  s.order.insert(s.order.end(), outside.begin(), outside.end());
  auto qreg = s.quotient.regular_vertices();
  s.x = IntMatrix(inside.size(), qreg.size());
  for (std::size_t i = 0; i < inside.size(); ++i)
    for (std::size_t j = 0; j < qreg.size(); ++j) s.x(i, j) = e.mult(outside[qreg[j]], inside[i]).count();
  return s;
}

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("KFORGE_BUDGET")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') b.lattice_vertices = v;
  }
  return b;
}

std::vector<GaugeIdeal> gauge_ideal_lattice(const Graph& e, const Budget& budget) {
  const std::size_t n = e.size();
  if (n > budget.lattice_vertices || n >= 63)
    throw Error(ErrorCode::BudgetExceeded, std::to_string(n) + " vertices exceed the lattice bound of " +
                                               std::to_string(budget.lattice_vertices));
  std::vector<GaugeIdeal> out;
  for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
    VertexSet h(n);
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1ULL) h.insert(v);
    SubsetAnalysis a = analyze_subset(e, h);
    if (!a.hereditary || !a.saturated) continue;
    auto b = a.breaking.members();
    for (unsigned long long bm = 0; bm < (1ULL << b.size()); ++bm) {
      VertexSet chosen(n);
      for (std::size_t i = 0; i < b.size(); ++i)
        if (bm >> i & 1ULL) chosen.insert(b[i]);
      out.push_back({h, chosen});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const GaugeIdeal& x, const GaugeIdeal& y) {
    std::size_t cx = x.hereditary.count() + x.breaking.count();
    std::size_t cy = y.hereditary.count() + y.breaking.count();
    return cx < cy;
  });
  return out;
}

bool ideal_leq(const GaugeIdeal& a, const GaugeIdeal& b) {
  return a.hereditary.subset_of(b.hereditary) && a.breaking.subset_of(b.hereditary.united(b.breaking));
}

namespace {

bool has_edge(const Graph& e, std::size_t s, std::size_t d) { return !e.mult(s, d).is_zero(); }

// Largest S inside `allowed` in which every member receives (left) or
// emits (right) an edge within S.
VertexSet greatest_closed(const Graph& e, VertexSet s, Side side) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t w : s.members()) {
      bool ok = false;
      for (std::size_t u : s.members()) {
        if (side == Side::Left ? has_edge(e, u, w) : has_edge(e, w, u)) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        s.erase(w);
        changed = true;
      }
    }
  }
  return s;
}

// Edges between v0 and S (into v0 on the left, out of v0 on the right), as
// references, stopping after `limit`.
std::vector<EdgeRef> edges_at(const Graph& e, std::size_t v0, const VertexSet& s, Side side, std::size_t limit) {
  std::vector<EdgeRef> out;
  for (std::size_t u : s.members()) {
    std::size_t src = side == Side::Left ? u : v0;
    std::size_t dst = side == Side::Left ? v0 : u;
    const Multiplicity& m = e.mult(src, dst);
    for (long k = 0; out.size() < limit && m.at_least(k + 1); ++k) out.push_back({src, dst, k});
    if (out.size() >= limit) break;
  }
  return out;
}

std::optional<VertexWitness> witness_at(const Graph& e, std::size_t v0, Side side) {
  const std::size_t n = e.size();
  // two loops at v0 suffice on either side
  if (e.is_regular(v0) && e.mult(v0, v0).at_least(2))
    return VertexWitness{v0, {{v0, v0, 0}, {v0, v0, 1}}, VertexSet(n, {v0})};

  VertexSet pool = side == Side::Left ? VertexSet(n, e.regular_vertices()) : VertexSet::all(n);
  VertexSet support;
  std::vector<EdgeRef> chosen;
  VertexSet without = pool;
  without.erase(v0);
  VertexSet closed = greatest_closed(e, without, side);
  auto first = edges_at(e, v0, closed, side, 1);
  if (!first.empty()) {
    support = closed;
    chosen = first;
  } else {
    closed = greatest_closed(e, pool, side);
    if (!closed.contains(v0)) return std::nullopt;
    auto two = edges_at(e, v0, closed, side, 2);
    if (two.size() < 2) return std::nullopt;
    support = closed;
    chosen = two;  // the second one is the member edge for v0 itself
  }
  for (std::size_t w : support.members()) {
    if (w == v0) continue;
    for (std::size_t u : support.members()) {
      if (side == Side::Left ? has_edge(e, u, w) : has_edge(e, w, u)) {
        chosen.push_back(side == Side::Left ? EdgeRef{u, w, 0} : EdgeRef{w, u, 0});
        break;
      }
    }
  }
  return VertexWitness{v0, chosen, support};
}

std::optional<AdhesiveWitness> adhesive(const Graph& e, Side side) {
  AdhesiveWitness w{side, "two-loops", {}};
  std::vector<std::size_t> targets;
  if (side == Side::Left) {
    for (std::size_t v = 0; v < e.size(); ++v) targets.push_back(v);
  } else {
    targets = e.regular_vertices();
    if (targets.empty()) w.rule = "no-regular-vertices";
  }
  for (std::size_t v0 : targets) {
    auto vw = witness_at(e, v0, side);
    if (!vw) return std::nullopt;
    if (vw->support.count() != 1 || !vw->support.contains(v0)) w.rule = "closed-support";
    w.vertices.push_back(std::move(*vw));
  }
  return w;
}

}  // namespace

std::optional<AdhesiveWitness> left_adhesive(const Graph& e) { return adhesive(e, Side::Left); }

std::optional<AdhesiveWitness> right_adhesive(const Graph& e) { return adhesive(e, Side::Right); }

bool validate_witness(const Graph& e, const AdhesiveWitness& w) {
  const bool left = w.side == Side::Left;
  std::vector<std::size_t> expected;
  if (left) {
    for (std::size_t v = 0; v < e.size(); ++v) expected.push_back(v);
  } else {
    expected = e.regular_vertices();
  }
  if (w.vertices.size() != expected.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const VertexWitness& vw = w.vertices[i];
    if (vw.v0 != expected[i] || vw.edges.empty()) return false;
    for (std::size_t a = 0; a < vw.edges.size(); ++a) {
      const EdgeRef& r = vw.edges[a];
      if (r.src >= e.size() || r.dst >= e.size() || r.ordinal < 0) return false;
      if (!e.mult(r.src, r.dst).at_least(r.ordinal + 1)) return false;
      for (std::size_t b = 0; b < a; ++b)
        if (vw.edges[b] == r) return false;
    }
    VertexSet support(e.size());
    for (std::size_t k = 1; k < vw.edges.size(); ++k)
      support.insert(left ? vw.edges[k].dst : vw.edges[k].src);
    if (!(support == vw.support)) return false;
    const EdgeRef& e0 = vw.edges[0];
    if ((left ? e0.dst : e0.src) != vw.v0) return false;
    for (const auto& r : vw.edges)
      if (!support.contains(left ? r.src : r.dst)) return false;
    if (left)
      for (std::size_t v : support.members())
        if (!e.is_regular(v)) return false;
  }
  return true;
}

IntMatrix left_dominator(const Graph& e, const AdhesiveWitness& w) {
  if (w.side != Side::Left) throw Error(ErrorCode::InvalidInput, "left certificate required");
  auto reg = e.regular_vertices();
  IntMatrix a(reg.size(), e.size());
  for (const auto& vw : w.vertices)
    for (std::size_t j = 0; j < reg.size(); ++j)
      if (vw.support.contains(reg[j])) a(j, vw.v0) = 1;
  return a;
}

IntMatrix right_dominator(const Graph& e, const AdhesiveWitness& w) {
  if (w.side != Side::Right) throw Error(ErrorCode::InvalidInput, "right certificate required");
  auto reg = e.regular_vertices();
  IntMatrix b(reg.size(), e.size());
  for (std::size_t i = 0; i < w.vertices.size(); ++i)
    for (std::size_t v : w.vertices[i].support.members()) b(i, v) = 1;
  return b;
}

std::vector<std::vector<bool>> reachability(const Graph& e) {
  const std::size_t n = e.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) r[v][w] = has_edge(e, v, w);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t v = 0; v < n; ++v)
      if (r[v][k])
        for (std::size_t w = 0; w < n; ++w)
          if (r[k][w]) r[v][w] = true;
  return r;
}

bool is_transitive(const Graph& e) {
  auto r = reachability(e);
  for (std::size_t v = 0; v < e.size(); ++v)
    for (std::size_t w = 0; w < e.size(); ++w)
      if (v != w && !r[v][w]) return false;
  return true;
}

bool has_cycle(const Graph& e) {
  auto r = reachability(e);
  for (std::size_t v = 0; v < e.size(); ++v)
    if (r[v][v]) return true;
  return false;
}

// Counts return paths at each vertex (paths v -> ... -> v meeting v only at
// the ends), saturating at 2. A cycle among the intermediate vertices gives
// infinitely many.
bool condition_k(const Graph& e) {
  const std::size_t n = e.size();
  auto reach = reachability(e);
  for (std::size_t v = 0; v < n; ++v) {
    if (!reach[v][v]) continue;
    // intermediate vertices: reachable from v and reaching v, avoiding v
    std::vector<bool> from(n, false), to(n, false);
    std::vector<std::size_t> stack{v};
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n; ++y)
        if (y != v && !from[y] && has_edge(e, x, y)) {
          from[y] = true;
          stack.push_back(y);
        }
    }
    stack = {v};
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n; ++y)
        if (y != v && !to[y] && has_edge(e, y, x)) {
          to[y] = true;
          stack.push_back(y);
        }
    }
    std::vector<std::size_t> mid;
    for (std::size_t x = 0; x < n; ++x)
      if (x != v && from[x] && to[x]) mid.push_back(x);
    // a cycle inside mid: some edge x -> y with y leading back to x within mid
    bool mid_cycle = false;
    for (std::size_t x : mid)
      for (std::size_t y : mid) {
        if (mid_cycle || !has_edge(e, x, y)) continue;
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> st{y};
        seen[y] = true;
        while (!st.empty() && !mid_cycle) {
          std::size_t a = st.back();
          st.pop_back();
          if (a == x) mid_cycle = true;
          for (std::size_t b : mid)
            if (!seen[b] && has_edge(e, a, b)) {
              seen[b] = true;
              st.push_back(b);
            }
        }
      }
    if (mid_cycle) continue;
    // acyclic middle: count paths v -> mid* -> v with saturation at 2
    std::vector<int> ways(n, -1);  // paths from x to v through mid, capped
    auto cap = [](const Multiplicity& m, int paths) {
      if (paths == 0 || m.is_zero()) return 0;
      if (m.at_least(2)) return 2;
      return std::min(paths, 2);
    };
    std::function<int(std::size_t)> count = [&](std::size_t x) -> int {
      if (ways[x] >= 0) return ways[x];
      int total = cap(e.mult(x, v), 1);
      for (std::size_t y : mid)
        if (has_edge(e, x, y)) total = std::min(2, total + cap(e.mult(x, y), count(y)));
      return ways[x] = total;
    };
    int total = cap(e.mult(v, v), 1);
    for (std::size_t y : mid)
      if (has_edge(e, v, y)) total = std::min(2, total + cap(e.mult(v, y), count(y)));
    if (total == 1) return false;
  }
  return true;
}

StructureFlags structure_flags(const Graph& e) {
  StructureFlags f;
  f.transitive = is_transitive(e);
  f.has_cycle = has_cycle(e);
  f.condition_k = condition_k(e);
  f.left = left_adhesive(e);
  f.right = right_adhesive(e);
  return f;
}

}  // namespace kforge

#include "kforge/ranges.hpp"

#include "kforge/error.hpp"
#include "kforge/realize.hpp"

namespace kforge {

namespace {

using Kind = OrderTag::Kind;

std::size_t rank_of(const PresentedGroup& g) { return g.canonical().free_rank; }

bool is_zero_map(const Homomorphism& h) {
  const IntMatrix& gens = h.domain().generators();
  for (std::size_t c = 0; c < gens.cols(); ++c)
    if (!h.codomain().is_zero(h(gens.column(c)))) return false;
  return true;
}

bool is_integers(const PresentedGroup& g) { return g.canonical().is_free() && g.canonical().free_rank == 1; }

// Simplicial(k) and ZPlus are the supported Riesz cones. Zero groups count
// as degenerate Riesz groups under any tag.
bool riesz(const OrderTag& tag, const PresentedGroup& g) {
  if (g.canonical().is_zero()) return true;
  switch (tag.kind()) {
    case Kind::Simplicial:
    case Kind::ZPlus: return true;
    case Kind::Trivial: return false;
    default: throw Error(ErrorCode::UnsupportedOrderTag, "Riesz property of a " + tag.describe() + " cone");
  }
}

bool simple_riesz(const OrderTag& tag, const PresentedGroup& g) {
  if (!riesz(tag, g)) return false;
  return g.canonical().is_zero() || tag.rank() == 1;
}

bool is_z_plus(const OrderTag& tag, const PresentedGroup& g) {
  return (tag.kind() == Kind::ZPlus || (tag.kind() == Kind::Simplicial && tag.rank() == 1)) && is_integers(g);
}

// Simplicial(k) only fits groups isomorphic to Z^k.
std::optional<std::string> tag_mismatch(const OrderTag& tag, const PresentedGroup& g) {
  if (tag.kind() != Kind::Simplicial && tag.kind() != Kind::ZPlus) return std::nullopt;
  if (g.canonical().is_free() && g.canonical().free_rank == tag.rank()) return std::nullopt;
  return tag.describe() + " on " + g.canonical().to_string();
}

// Cone equality on g, where all cones of the zero group coincide.
bool cone_matches(const OrderTag& tag, const OrderTag& expected, const SixTermSequence& s) {
  if (s.g2().canonical().is_zero()) return true;
  if (cone_is_everything(tag, s.g2()) && cone_is_everything(expected, s.g2())) return true;
  return same_cone(tag, expected, s.gam(), s.g3());
}

struct Violations {
  std::vector<std::string> list;
  void add(const std::string& label, const std::string& detail) { list.push_back(label + " " + detail); }
};

void require_trivial(Violations& v, const OrderTag& tag, const PresentedGroup& g, const char* node) {
  if (!cone_is_everything(tag, g)) v.add("(order)", std::string(node) + " must be trivially ordered");
}

void require_zero(Violations& v, const PresentedGroup& g, const char* label, const char* node) {
  if (!g.canonical().is_zero()) v.add(label, std::string(node) + " must vanish");
}

void type_conditions(Violations& v, IdealType type, const OrderedSixTerm& t) {
  const auto& s = t.seq;
  switch (type) {
    case IdealType::InfInf:
      require_trivial(v, t.tags[0], s.g1(), "G1");
      require_trivial(v, t.tags[1], s.g2(), "G2");
      require_trivial(v, t.tags[2], s.g3(), "G3");
      break;
    case IdealType::OneInf:
      require_zero(v, s.f1(), "(F1)", "F1");
      if (!simple_riesz(t.tags[0], s.g1())) v.add("(riesz)", "G1 must be a simple Riesz group");
      require_trivial(v, t.tags[1], s.g2(), "G2");
      require_trivial(v, t.tags[2], s.g3(), "G3");
      break;
    case IdealType::InfOne:
      require_zero(v, s.f3(), "(F3)", "F3");
      if (!simple_riesz(t.tags[2], s.g3())) v.add("(riesz)", "G3 must be a simple Riesz group");
      require_trivial(v, t.tags[0], s.g1(), "G1");
      if (!cone_matches(t.tags[1], OrderTag::lex(OrderTag::trivial(), t.tags[2]), s))
        v.add("(order)", "G2 must be eps(G1) together with the strictly positive preimages of G3");
      break;
    case IdealType::OneOne:
      require_zero(v, s.f1(), "(F1)", "F1");
      require_zero(v, s.f2(), "(F2)", "F2");
      require_zero(v, s.f3(), "(F3)", "F3");
      if (!simple_riesz(t.tags[0], s.g1())) v.add("(riesz)", "G1 must be a simple Riesz group");
      if (!simple_riesz(t.tags[2], s.g3())) v.add("(riesz)", "G3 must be a simple Riesz group");
      if (!cone_matches(t.tags[1], OrderTag::lex(t.tags[0], t.tags[2]), s))
        v.add("(lex)", "G2 must carry the lexicographic cone of the sequence");
      break;
  }
}

void finite_conditions(Violations& v, const OrderedSixTerm& t, bool ck) {
  const auto& s = t.seq;
  std::size_t f1 = rank_of(s.f1()), f2 = rank_of(s.f2()), f3 = rank_of(s.f3());
  std::size_t g1 = rank_of(s.g1()), g2 = rank_of(s.g2()), g3 = rank_of(s.g3());
  if (ck) {
    if (f1 != g1 || f3 != g3) v.add("(2')", "rank F1 = rank G1 and rank F3 = rank G3 required");
  } else if (f1 > g1 || f3 > g3) {
    v.add("(2)", "rank F1 <= rank G1 and rank F3 <= rank G3 required");
  }
  for (auto [tag, g, node] : {std::tuple{&t.tags[0], &s.g1(), "G1"}, std::tuple{&t.tags[2], &s.g3(), "G3"}}) {
    bool tagged_riesz = tag->kind() == Kind::Simplicial || tag->kind() == Kind::ZPlus;
    if (tagged_riesz && !is_z_plus(*tag, *g)) v.add("(3)", std::string(node) + " is Riesz but not the integers");
  }
  if (t.unit && is_z_plus(t.tags[2], s.g3()) && !strictly_positive(t.tags[2], s.g3(), s.gam()(*t.unit)))
    v.add("(4)", "gam(g2) must be strictly positive");

  // consequences of exactness
  if (f2 < f1 || f2 > f1 + f3) v.add("(derived)", "rank F1 <= rank F2 <= rank F1 + rank F3 fails");
  if (long(f2) - long(g2) != long(f3) - long(g3) + long(f1) - long(g1)) v.add("(derived)", "rank balance fails");
  if (ck && f2 != g2) v.add("(derived)", "rank F2 = rank G2 fails");
}

OrderTag normalize(const OrderTag& t, const Homomorphism& gam) {
  if (t.kind() == Kind::Lex && t.sub().kind() == Kind::Trivial) return OrderTag::pulled_back(gam, t.quot());
  if (t.kind() == Kind::ZPlus) return OrderTag::simplicial(1);
  return t;
}

}  // namespace

std::string case_name(const RangeCase& c) {
  static const char* types[] = {"[inf inf]", "[1 inf]", "[inf 1]", "[1 1]"};
  switch (c.cls) {
    case RangeClass::LargestAf: return "largest-af";
    case RangeClass::SmallestAf: return "smallest-af";
    case RangeClass::UniqueIdeal: return std::string("unique-ideal ") + types[int(c.type)];
    case RangeClass::Unital: return std::string("unital ") + types[int(c.type)];
    case RangeClass::CuntzKrieger: return std::string("ck ") + types[int(c.type)];
  }
  return "?";
}

bool cone_is_everything(const OrderTag& tag, const PresentedGroup& g) {
  switch (tag.kind()) {
    case Kind::Trivial: return true;
    case Kind::Simplicial:
    case Kind::ZPlus: return g.canonical().is_zero();
    case Kind::PulledBack:
      return g.canonical().is_zero() || is_zero_map(tag.via()) || cone_is_everything(tag.base(), tag.via().codomain());
    case Kind::Lex:
      return g.canonical().is_zero() || (tag.sub().kind() == Kind::Trivial && tag.quot().kind() == Kind::Trivial);
    case Kind::Unknown: break;
  }
  throw Error(ErrorCode::UnsupportedOrderTag, "cone is unknown");
}

bool strictly_positive(const OrderTag& tag, const PresentedGroup& g, const IntVector& x) {
  if (!is_z_plus(tag, g)) throw Error(ErrorCode::UnsupportedOrderTag, "positivity in a " + tag.describe() + " cone");
  int orientation = 0;
  for (std::size_t j = 0; j < g.ambient_rank() && orientation == 0; ++j)
    orientation = sgn(g.coordinates(unit_vector(g.ambient_rank(), j))[0]);
  return sgn(g.coordinates(x)[0]) * orientation > 0;
}

bool same_cone(const OrderTag& a, const OrderTag& b, const Homomorphism& gam, const PresentedGroup& g3) {
  if (a.kind() == Kind::Unknown || b.kind() == Kind::Unknown)
    throw Error(ErrorCode::UnsupportedOrderTag, "comparison with an unknown cone");
  OrderTag x = normalize(a, gam), y = normalize(b, gam);
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Kind::Trivial: return true;
    case Kind::Simplicial:
    case Kind::ZPlus: return x.rank() == y.rank();
    case Kind::PulledBack:
      return x.via().domain().same_presentation(y.via().domain()) &&
             x.via().codomain().same_presentation(y.via().codomain()) && same_map(x.via(), y.via()) &&
             same_cone(x.base(), y.base(), gam, g3);
    case Kind::Lex: return same_cone(x.sub(), y.sub(), gam, g3) && same_cone(x.quot(), y.quot(), gam, g3);
    case Kind::Unknown: break;
  }
  return false;
}

Verdict check_range(const RangeCase& c, const OrderedSixTerm& t) {
  Violations v;
  const auto& s = t.seq;
  auto ex = check_exact(s);
  if (!ex.exact()) v.add("(exact)", "sequence fails at " + std::string(node_name(ex.failing.front())));
  if (!is_zero_map(s.del0())) v.add("(d0)", "map G3 -> F1 is nonzero");
  for (Node n : {Node::F1, Node::F2, Node::F3})
    if (!s.group(n).canonical().is_free()) v.add("(F)", std::string(node_name(n)) + " has torsion");
  const std::pair<const OrderTag*, Node> tagged[] = {{&t.tags[0], Node::G1}, {&t.tags[1], Node::G2}, {&t.tags[2], Node::G3}};
  for (const auto& [tag, n] : tagged)
    if (auto m = tag_mismatch(*tag, s.group(n))) v.add("(tag)", *m);

  switch (c.cls) {
    case RangeClass::LargestAf:
      require_zero(v, s.f1(), "(F1)", "F1");
      if (!riesz(t.tags[0], s.g1())) v.add("(riesz)", "G1 must be a Riesz group");
      require_trivial(v, t.tags[1], s.g2(), "G2");
      require_trivial(v, t.tags[2], s.g3(), "G3");
      break;
    case RangeClass::SmallestAf:
      require_zero(v, s.f3(), "(F3)", "F3");
      if (!riesz(t.tags[2], s.g3())) v.add("(riesz)", "G3 must be a Riesz group");
      require_trivial(v, t.tags[0], s.g1(), "G1");
      if (!cone_matches(t.tags[1], OrderTag::pulled_back(s.gam(), t.tags[2]), s))
        v.add("(order)", "G2 must carry the cone pulled back from G3");
      break;
    case RangeClass::UniqueIdeal: type_conditions(v, c.type, t); break;
    case RangeClass::Unital:
      type_conditions(v, c.type, t);
      finite_conditions(v, t, false);
      break;
    case RangeClass::CuntzKrieger:
      type_conditions(v, c.type, t);
      finite_conditions(v, t, true);
      break;
  }
  return Verdict{v.list.empty(), std::move(v.list), std::nullopt};
}

Verdict permanence(const OrderedSixTerm& t, PermanenceFlavor flavor) {
  Violations v;
  if (!is_zero_map(t.seq.del0())) v.add("(1)", "index map G3 -> F1 is nonzero");
  if (flavor == PermanenceFlavor::Stable && cone_is_everything(t.tags[2], t.seq.g3()) &&
      !cone_is_everything(t.tags[1], t.seq.g2()))
    v.add("(2)", "quotient K0 is trivially ordered but the middle K0 is not");
  return Verdict{v.list.empty(), std::move(v.list), std::nullopt};
}

OrderedSixTerm graph_invariant(const Graph& e, const VertexSet& h, const RangeCase& c, const Budget& budget) {
  SixTermResult st = six_term(e, h);
  OrderTag g1 = simple_graph_tag(st.split.ideal).value_or(OrderTag::unknown());
  OrderTag g3 = simple_graph_tag(st.split.quotient).value_or(OrderTag::unknown());
  IdealType type = c.type;
  if (c.cls == RangeClass::LargestAf) type = IdealType::OneInf;
  if (c.cls == RangeClass::SmallestAf) type = IdealType::InfOne;
  OrderTag g2 = OrderTag::unknown();
  switch (type) {
    case IdealType::InfInf:
    case IdealType::OneInf: g2 = cone_tag(e, h, ConeCase::LargestIdeal, budget); break;
    case IdealType::InfOne: g2 = cone_tag(e, h, ConeCase::SimpleIdeal, budget); break;
    case IdealType::OneOne:
      // acyclic with a unique ideal and simple ends: lexicographic
      if (g1.kind() == Kind::Simplicial && g3.kind() == Kind::Simplicial && !has_cycle(e)) g2 = OrderTag::lex(g1, g3);
      break;
  }
  std::optional<IntVector> unit;
  if (c.cls == RangeClass::Unital || c.cls == RangeClass::CuntzKrieger) unit = unit_class(e).ambient;
  return OrderedSixTerm{std::move(st.seq), {g1, g2, g3}, unit};
}

namespace {

struct EndGraph {
  Graph graph;
  Homomorphism k0;  // K0(graph) -> target group
};

Homomorphism kernel_iso(const Graph& e, const PresentedGroup& f) {
  std::size_t k = k_groups(e).k1_rank();
  if (!f.canonical().is_free() || f.canonical().free_rank != k)
    throw Error(ErrorCode::VerificationFailed, "K1 of the realization has the wrong rank");
  return canonical_iso(PresentedGroup::free(k), f);
}

EndGraph purely_infinite(const PresentedGroup& g, const PresentedGroup& f, RealizationClass cls,
                     std::optional<IntVector> unit = std::nullopt) {
  RealizationRequest req{g.canonical(), rank_of(f), unit ? std::optional(g.coordinates(*unit)) : std::nullopt, cls};
  Realization r = realize(req);
  Homomorphism k0 = compose(canonical_iso(PresentedGroup::standard(g.canonical()), g), r.k0_iso);
  return EndGraph{r.graph, k0};
}

// Orient an iso between copies of Z so that vertex classes are positive.
Homomorphism oriented(const Graph& e, const PresentedGroup& g, const OrderTag& tag) {
  PresentedGroup k0 = cokernel(k_matrix(e));
  Homomorphism iso = canonical_iso(k0, g);
  if (!strictly_positive(tag, g, iso(unit_vector(e.size(), 0))))
    iso = Homomorphism(k0, g, -iso.matrix());
  return iso;
}

EndGraph approximately_finite(const PresentedGroup& g, const OrderTag& tag) {
  if (g.canonical().is_zero()) throw Error(ErrorCode::UnsupportedRieszInput, "zero AF side");
  if (tag.kind() != Kind::Simplicial && tag.kind() != Kind::ZPlus)
    throw Error(ErrorCode::UnsupportedRieszInput, "AF side with a " + tag.describe() + " cone");
  if (tag.rank() == 1) {
    Graph e = simplicial_graph(1);
    return EndGraph{e, oriented(e, g, tag)};
  }
  Graph e = simplicial_graph(tag.rank());
  return EndGraph{e, Homomorphism(cokernel(k_matrix(e)), g, g.generators())};
}

// Z with unit n > 0 where the target cone is ZPlus; n read off `x`.
EndGraph integer_side(const PresentedGroup& g, const OrderTag& tag, const IntVector& x) {
  if (!is_z_plus(tag, g)) throw Error(ErrorCode::UnsupportedRieszInput, "AF side is not the integers");
  Integer n = g.coordinates(x)[0];
  if (!strictly_positive(tag, g, x)) throw Error(ErrorCode::InvalidInput, "unit of the AF side is not positive");
  if (n < 0) n = -n;
  Graph e = integer_unit_graph(n);
  return EndGraph{e, oriented(e, g, tag)};
}

// A section of gam when G3 is free: lifts of the canonical generators.
Homomorphism free_splitting(const SixTermSequence& s) {
  const PresentedGroup& g3 = s.g3();
  if (!g3.canonical().is_free()) throw Error(ErrorCode::NoSplitting, "G3 has torsion");
  IntMatrix lifts(s.g2().ambient_rank(), g3.coordinate_count());
  for (std::size_t i = 0; i < g3.coordinate_count(); ++i) {
    auto x = preimage(s.gam(), g3.generators().column(i));
    if (!x) throw Error(ErrorCode::NoSplitting, "gam is not onto");
    lifts.set_column(i, *x);
  }
  return Homomorphism(g3, s.g2(), lifts * g3.coordinate_map());
}

IntVector lift_or_throw(const Homomorphism& h, const IntVector& y, const char* what) {
  auto x = preimage(h, y);
  if (!x) throw Error(ErrorCode::VerificationFailed, what);
  return *x;
}

SpliceTarget make_target(const OrderedSixTerm& t, const EndGraph& e1, const EndGraph& e3) {
  const auto& s = t.seq;
  return SpliceTarget{s, e1.k0, kernel_iso(e1.graph, s.f1()), e3.k0, kernel_iso(e3.graph, s.f3()), std::nullopt,
                      std::nullopt};
}

bool has_dominated_row(const IntMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      if (i == j) continue;
      bool ok = true;
      for (std::size_t k = 0; k < b.cols() && ok; ++k) ok = b(i, k) < b(j, k);
      if (ok) return true;
    }
  return false;
}

struct Plan {
  EndGraph e1, e3;
  SpliceTarget target;
  SpliceOptions opts;
  std::string route;
};

// Purely infinite ends with a unit: fix the unit on the quotient side when a
// dominated row is available, otherwise choose the ideal's unit so the
// unadjusted lift already sends the unit class to g2.
Plan unital_inf_inf(const OrderedSixTerm& t, RealizationClass cls) {
  const auto& s = t.seq;
  const IntVector& g2 = *t.unit;
  IntVector g3u = s.gam()(g2);
  std::size_t bound = 1 + s.g3().canonical().generator_count();
  EndGraph e3 = purely_infinite(s.g3(), s.f3(), cls, g3u);
  if (!has_dominated_row(k_matrix(e3.graph)) && cls == RealizationClass::Unital) {
    EndGraph dom = purely_infinite(s.g3(), s.f3(), RealizationClass::UnitalDominated, g3u);
    if (dom.graph.size() <= bound) e3 = dom;
  }
  EndGraph e1 = purely_infinite(s.g1(), s.f1(), cls);
  SpliceTarget target = make_target(t, e1, e3);
  target.unit = g2;
  if (has_dominated_row(k_matrix(e3.graph))) return Plan{e1, e3, target, {}, "unit-fix"};

  IntMatrix a = k_matrix(e1.graph), b = k_matrix(e3.graph);
  SpliceTarget probe = target;
  probe.unit.reset();
  SpliceResult trial = build_y(a, b, probe);
  IntVector ones_all = ones_vector(e1.graph.size() + e3.graph.size());
  IntVector quotient_part = subtract(trial.a2(ones_all), s.eps()(e1.k0(ones_vector(e1.graph.size()))));
  IntVector g1 = lift_or_throw(s.eps(), subtract(g2, quotient_part), "unit defect outside the image of eps");
  e1 = purely_infinite(s.g1(), s.f1(), cls, g1);
  target = make_target(t, e1, e3);
  target.unit = g2;
  return Plan{e1, e3, target, {}, "unit-through-ideal"};
}

Plan unital_one_inf(const OrderedSixTerm& t) {
  const auto& s = t.seq;
  IntVector g3u = s.gam()(*t.unit);
  EndGraph e1 = approximately_finite(s.g1(), t.tags[0]);
  EndGraph e3 = purely_infinite(s.g3(), s.f3(), RealizationClass::Unital, g3u);
  std::string route = "unit-fix";
  if (!has_dominated_row(k_matrix(e3.graph))) {
    e3 = purely_infinite(s.g3(), s.f3(), RealizationClass::UnitalDominated, g3u);
    route = "unit-fix-extra-vertex";
  }
  SpliceTarget target = make_target(t, e1, e3);
  target.unit = *t.unit;
  return Plan{e1, e3, target, {}, route};
}

// Positive generator of a group isomorphic to Z.
IntVector positive_generator(const PresentedGroup& g, const OrderTag& tag) {
  IntVector t = g.generators().column(0);
  return strictly_positive(tag, g, t) ? t : scale(Integer(-1), t);
}

// Quotient is Z+ and F3 = 0: split with Y = 0.
Plan split_plan(const OrderedSixTerm& t, bool af_ideal) {
  const auto& s = t.seq;
  Homomorphism sigma = free_splitting(s);
  IntVector t3 = positive_generator(s.g3(), t.tags[2]);
  IntVector g2 = t.unit ? *t.unit : sigma(t3);
  if (!t.unit && af_ideal) g2 = add(g2, s.eps()(positive_generator(s.g1(), t.tags[0])));
  IntVector g3u = s.gam()(g2);
  IntVector g1 = lift_or_throw(s.eps(), subtract(g2, sigma(g3u)), "split remainder outside the image of eps");

  EndGraph e3 = integer_side(s.g3(), t.tags[2], g3u);
  std::optional<EndGraph> e1;
  if (af_ideal) {
    // Move the splitting by eps(c t1) so the ideal part of the unit is positive.
    IntVector t1 = positive_generator(s.g1(), t.tags[0]);
    Integer p = s.g1().coordinates(g1)[0] * s.g1().coordinates(t1)[0];
    Integer n = s.g3().coordinates(g3u)[0] * s.g3().coordinates(t3)[0];
    if (p < 1) {
      Integer c = ceil_div(1 - p, n);
      IntMatrix along = IntMatrix::column_vector(s.eps()(scale(c, t1)));
      IntMatrix coord = s.g3().coordinates(t3)[0] * s.g3().coordinate_map();
      sigma = Homomorphism(s.g3(), s.g2(), sigma.matrix() - along * coord);
      g1 = lift_or_throw(s.eps(), subtract(g2, sigma(g3u)), "split remainder outside the image of eps");
    }
    e1 = integer_side(s.g1(), t.tags[0], g1);
  } else {
    e1 = purely_infinite(s.g1(), s.f1(), RealizationClass::Unital, g1);
  }
  SpliceTarget target = make_target(t, *e1, e3);
  target.unit = g2;
  target.splitting = sigma;
  return Plan{*e1, e3, target, SpliceOptions{SpliceMode::Split, {}, {}}, "split"};
}

// Cone description up to isomorphism of the underlying group.
std::string cone_shape(const OrderTag& tag) {
  switch (tag.kind()) {
    case Kind::Trivial: return "all";
    case Kind::ZPlus: return "simplicial(1)";
    case Kind::Simplicial: return tag.describe();
    case Kind::PulledBack: return "pull(" + cone_shape(tag.base()) + ")";
    case Kind::Lex:
      if (tag.sub().kind() == Kind::Trivial) return "pull(" + cone_shape(tag.quot()) + ")";
      return "lex(" + cone_shape(tag.sub()) + "," + cone_shape(tag.quot()) + ")";
    case Kind::Unknown: break;
  }
  return "unknown";
}

std::string cone_shape(const OrderTag& tag, const PresentedGroup& g) {
  return cone_is_everything(tag, g) ? "all" : cone_shape(tag);
}

std::vector<std::size_t> all_vertices(const Graph& e) {
  std::vector<std::size_t> v(e.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

RangeRealization realize_range(const RangeCase& c, const OrderedSixTerm& t, const Budget& budget) {
  Verdict pre = check_range(c, t);
  if (!pre.admissible) throw Error(ErrorCode::InvalidInput, "inadmissible invariant: " + pre.violations.front());
  const auto& s = t.seq;
  bool finite = c.cls == RangeClass::Unital || c.cls == RangeClass::CuntzKrieger;
  if (finite && !t.unit) throw Error(ErrorCode::InvalidInput, "a unit class is required for " + case_name(c));

  IdealType type = c.type;
  if (c.cls == RangeClass::LargestAf) type = IdealType::OneInf;
  if (c.cls == RangeClass::SmallestAf) type = IdealType::InfOne;

  std::optional<Plan> plan;
  if (c.cls == RangeClass::CuntzKrieger) {
    if (type != IdealType::InfInf) throw Error(ErrorCode::UnsupportedRieszInput, "Cuntz-Krieger ends are purely infinite");
    plan = unital_inf_inf(t, RealizationClass::CuntzKrieger);
  } else if (finite) {
    switch (type) {
      case IdealType::InfInf: plan = unital_inf_inf(t, RealizationClass::Unital); break;
      case IdealType::OneInf: plan = unital_one_inf(t); break;
      case IdealType::InfOne: plan = split_plan(t, false); break;
      case IdealType::OneOne: plan = split_plan(t, true); break;
    }
  } else {
    switch (type) {
      case IdealType::InfInf: {
        EndGraph e1 = purely_infinite(s.g1(), s.f1(), RealizationClass::SimplePurelyInfinite);
        EndGraph e3 = purely_infinite(s.g3(), s.f3(), RealizationClass::SimplePurelyInfinite);
        plan = Plan{e1, e3, make_target(t, e1, e3), {}, "essential"};
        break;
      }
      case IdealType::OneInf: {
        EndGraph e1 = approximately_finite(s.g1(), t.tags[0]);
        EndGraph e3 = purely_infinite(s.g3(), s.f3(), RealizationClass::SimplePurelyInfinite);
        plan = Plan{e1, e3, make_target(t, e1, e3),
                    SpliceOptions{SpliceMode::StenoticGenerators, all_vertices(e1.graph), {}}, "stenotic"};
        break;
      }
      case IdealType::InfOne: {
        EndGraph e1 = purely_infinite(s.g1(), s.f1(), RealizationClass::SimplePurelyInfinite);
        EndGraph e3 = approximately_finite(s.g3(), t.tags[2]);
        plan = Plan{e1, e3, make_target(t, e1, e3), {}, "essential"};
        break;
      }
      case IdealType::OneOne: plan = split_plan(t, true); break;
    }
  }

  SpliceOutput out = splice_graphs(plan->e1.graph, plan->e3.graph, plan->target, plan->opts);
  SpliceReport rep = verify_splice(out.graph, out.ideal, plan->target, out.result, budget);
  bool ok = rep.exact && rep.isomorphic && rep.unit;
  switch (c.cls) {
    case RangeClass::LargestAf: ok = ok && rep.stenotic; break;
    case RangeClass::SmallestAf: ok = ok && rep.essential; break;
    default: ok = ok && rep.unique_nontrivial; break;
  }
  if (!ok) throw Error(ErrorCode::VerificationFailed, "spliced graph fails verification for " + case_name(c));

  OrderedSixTerm produced = graph_invariant(out.graph, out.ideal, c, budget);
  Verdict back = check_range(c, produced);
  const Node nodes[] = {Node::G1, Node::G2, Node::G3};
  for (int i = 0; i < 3; ++i)
    if (cone_shape(produced.tags[i], produced.seq.group(nodes[i])) != cone_shape(t.tags[i], s.group(nodes[i]))) {
      back.admissible = false;
      back.violations.push_back("(order-iso) " + std::string(node_name(nodes[i])) + " cone differs from the target");
    }
  back.vertex_count = out.graph.size();
  std::string route = plan->route;
  return RangeRealization{out.graph, out.ideal, plan->target, std::move(out), rep, std::move(produced), std::move(back),
                          route};
}

}  // namespace kforge

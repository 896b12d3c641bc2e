#include <doctest.h>

#include <random>

#include "kforge/error.hpp"
#include "kforge/ranges.hpp"
#include "oracle.hpp"

using namespace kforge;

namespace {

PresentedGroup zero_group() { return PresentedGroup::free(0); }
PresentedGroup cyclic(long m) { return cokernel(IntMatrix{{m}}); }

// G1 -> G2 -> G3 with all F groups zero.
SixTermSequence k0_only(const PresentedGroup& g1, const PresentedGroup& g2, const PresentedGroup& g3,
                        const IntMatrix& eps, const IntMatrix& gam) {
  PresentedGroup f = zero_group();
  return SixTermSequence(Homomorphism(g1, g2, eps), Homomorphism(g2, g3, gam),
                         Homomorphism(g3, f, IntMatrix(0, g3.ambient_rank())), Homomorphism(f, f, IntMatrix(0, 0)),
                         Homomorphism(f, f, IntMatrix(0, 0)), Homomorphism(f, g1, IntMatrix(g1.ambient_rank(), 0)));
}

bool has_violation(const Verdict& v, const std::string& label) {
  for (const auto& s : v.violations)
    if (s.rfind(label + " ", 0) == 0) return true;
  return false;
}

OrderedSixTerm z6_target() {
  auto s = k0_only(cyclic(2), cyclic(6), cyclic(3), IntMatrix{{3}}, IntMatrix{{1}});
  return OrderedSixTerm{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, std::nullopt};
}

const RangeCase kAllCases[] = {
    {RangeClass::LargestAf, IdealType::InfInf},    {RangeClass::SmallestAf, IdealType::InfInf},
    {RangeClass::UniqueIdeal, IdealType::InfInf},  {RangeClass::UniqueIdeal, IdealType::OneInf},
    {RangeClass::UniqueIdeal, IdealType::InfOne},  {RangeClass::UniqueIdeal, IdealType::OneOne},
    {RangeClass::Unital, IdealType::InfInf},       {RangeClass::Unital, IdealType::OneInf},
    {RangeClass::Unital, IdealType::InfOne},       {RangeClass::Unital, IdealType::OneOne},
    {RangeClass::CuntzKrieger, IdealType::InfInf},
};

void check_realization(const RangeCase& c, const OrderedSixTerm& t, const RangeRealization& r) {
  INFO(case_name(c));
  CHECK(r.report.exact);
  CHECK(r.report.isomorphic);
  CHECK(r.report.unit);
  CHECK(r.roundtrip.admissible);
  for (const auto& v : r.roundtrip.violations) MESSAGE(v);
  if (c.cls != RangeClass::LargestAf && c.cls != RangeClass::SmallestAf) CHECK(r.report.unique_nontrivial);
  // vertex lower bound: K0 needs at least as many generators as vertices
  CHECK(r.graph.size() >= t.seq.g2().canonical().generator_count());
  CHECK(*r.roundtrip.vertex_count == r.graph.size());
}

}  // namespace

TEST_CASE("zero invariant is admissible in every case") {
  auto s = k0_only(zero_group(), zero_group(), zero_group(), IntMatrix(0, 0), IntMatrix(0, 0));
  OrderedSixTerm t{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, IntVector{}};
  for (const auto& c : kAllCases) {
    INFO(case_name(c));
    CHECK(check_range(c, t).admissible);
  }
}

TEST_CASE("unital admissibility needs a positive quotient unit") {
  auto s = k0_only(zero_group(), PresentedGroup::free(1), PresentedGroup::free(1), IntMatrix(1, 0), IntMatrix{{1}});
  OrderTag lex = OrderTag::lex(OrderTag::trivial(), OrderTag::zplus());
  OrderedSixTerm t{s, {OrderTag::trivial(), lex, OrderTag::zplus()}, IntVector{0}};
  RangeCase c{RangeClass::Unital, IdealType::InfOne};
  Verdict v = check_range(c, t);
  CHECK(!v.admissible);
  CHECK(has_violation(v, "(4)"));
  t.unit = IntVector{-2};
  CHECK(has_violation(check_range(c, t), "(4)"));
  t.unit = IntVector{2};
  CHECK(check_range(c, t).admissible);
  // the pull-back form of the same cone is accepted too
  t.tags[1] = OrderTag::pulled_back(s.gam(), OrderTag::zplus());
  CHECK(check_range(c, t).admissible);
  t.tags[1] = OrderTag::trivial();
  CHECK(has_violation(check_range(c, t), "(order)"));
}

TEST_CASE("Cuntz-Krieger admissibility needs equal ranks") {
  auto s = k0_only(PresentedGroup::free(1), PresentedGroup::free(1), zero_group(), IntMatrix{{1}}, IntMatrix(0, 1));
  OrderedSixTerm t{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, IntVector{1}};
  Verdict v = check_range({RangeClass::CuntzKrieger, IdealType::InfInf}, t);
  CHECK(!v.admissible);
  CHECK(has_violation(v, "(2')"));
  CHECK(check_range({RangeClass::Unital, IdealType::InfInf}, t).admissible);
}

TEST_CASE("range checks flag structural failures") {
  auto t = z6_target();
  CHECK(check_range({RangeClass::UniqueIdeal, IdealType::InfInf}, t).admissible);
  auto riesz = t;
  riesz.tags[0] = OrderTag::zplus();
  CHECK(has_violation(check_range({RangeClass::UniqueIdeal, IdealType::OneInf}, riesz), "(tag)"));
  auto d0 = t;
  d0.seq = t.seq.with_del0(Homomorphism(t.seq.g3(), PresentedGroup::free(0), IntMatrix(0, 1)));
  CHECK(check_range({RangeClass::UniqueIdeal, IdealType::InfInf}, d0).admissible);

  OrderedSixTerm unknown = t;
  unknown.tags[0] = OrderTag::unknown();
  CHECK_THROWS_WITH_AS(check_range({RangeClass::LargestAf, IdealType::InfInf}, unknown),
                       doctest::Contains("UnsupportedOrderTag"), Error);
  unknown.tags[0] = OrderTag::pulled_back(Homomorphism::identity(t.seq.g1()), OrderTag::trivial());
  CHECK_THROWS_WITH_AS(check_range({RangeClass::LargestAf, IdealType::InfInf}, unknown),
                       doctest::Contains("UnsupportedOrderTag"), Error);
}

TEST_CASE("permanence truth table") {
  PresentedGroup z = PresentedGroup::free(1), o = zero_group();
  SixTermSequence nonzero_index(Homomorphism(o, o, IntMatrix(0, 0)), Homomorphism(o, z, IntMatrix(1, 0)),
                                Homomorphism(z, z, IntMatrix{{1}}), Homomorphism(z, o, IntMatrix(0, 1)),
                                Homomorphism(o, o, IntMatrix(0, 0)), Homomorphism(o, o, IntMatrix(0, 0)));
  OrderedSixTerm a{nonzero_index, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, std::nullopt};
  Verdict va = permanence(a, PermanenceFlavor::Stable);
  CHECK(!va.admissible);
  CHECK(has_violation(va, "(1)"));

  auto s = k0_only(o, z, z, IntMatrix(1, 0), IntMatrix{{1}});
  OrderedSixTerm b{s, {OrderTag::trivial(), OrderTag::pulled_back(s.gam(), OrderTag::zplus()), OrderTag::trivial()},
                   std::nullopt};
  Verdict vb = permanence(b, PermanenceFlavor::Stable);
  CHECK(!vb.admissible);
  CHECK(has_violation(vb, "(2)"));

  OrderedSixTerm c{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, std::nullopt};
  CHECK(permanence(c, PermanenceFlavor::Stable).admissible);

  CHECK(permanence(b, PermanenceFlavor::UnitalPurelyInfinite).admissible);
  CHECK(!permanence(a, PermanenceFlavor::CuntzKrieger).admissible);
}

TEST_CASE("zeroing the index map never loses permanence") {
  std::mt19937_64 rng(17);
  int flips = 0;
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = oracle::random_matrix(rng, 1 + rng() % 3, rng() % 4, 2);
    IntMatrix b = oracle::random_matrix(rng, 1 + rng() % 3, rng() % 4, 2);
    SixTermSequence s = snake(a, b, oracle::random_matrix(rng, a.rows(), b.cols(), 2));
    auto random_tag = [&](const PresentedGroup& g) {
      switch (rng() % 3) {
        case 0: return OrderTag::trivial();
        case 1: return g.canonical().is_free() && g.canonical().free_rank > 0 ? OrderTag::simplicial(g.canonical().free_rank) : OrderTag::trivial();
        default: return OrderTag::pulled_back(s.gam(), OrderTag::zplus());
      }
    };
    OrderedSixTerm t{s, {random_tag(s.g1()), random_tag(s.g2()), OrderTag::trivial()}, std::nullopt};
    if (rng() % 2) t.tags[2] = OrderTag::simplicial(1);
    Homomorphism index(s.g3(), s.f1(), oracle::random_matrix(rng, s.f1().ambient_rank(), s.g3().ambient_rank(), 2));
    OrderedSixTerm with_index = t;
    with_index.seq = s.with_del0(index);
    for (auto flavor : {PermanenceFlavor::Stable, PermanenceFlavor::UnitalPurelyInfinite, PermanenceFlavor::CuntzKrieger}) {
      bool before = permanence(with_index, flavor).admissible;
      bool after = permanence(t, flavor).admissible;
      REQUIRE((!before || after));
      if (!before && after) ++flips;
    }
  }
  CHECK(flips > 0);
}

TEST_CASE("unique ideal [inf inf]: Z/2 by Z/3") {
  RangeCase c{RangeClass::UniqueIdeal, IdealType::InfInf};
  auto t = z6_target();
  RangeRealization r = realize_range(c, t);
  check_realization(c, t, r);
  CHECK(r.graph.size() == 4);
  CHECK(r.report.lattice_size == 3);
  CHECK(r.produced.tags[1].kind() == OrderTag::Kind::Trivial);
}

TEST_CASE("largest AF ideal with a simplicial ideal") {
  PresentedGroup g2 = cokernel(IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}.transpose());
  auto s = k0_only(PresentedGroup::free(2), cokernel(IntMatrix{{0, 0, 0}, {0, 0, 0}, {0, 0, 2}}), cyclic(2),
                   IntMatrix{{1, 0}, {0, 1}, {0, 0}}, IntMatrix{{0, 0, 1}});
  (void)g2;
  OrderedSixTerm t{s, {OrderTag::simplicial(2), OrderTag::trivial(), OrderTag::trivial()}, std::nullopt};
  RangeCase c{RangeClass::LargestAf, IdealType::OneInf};
  REQUIRE(check_range(c, t).admissible);
  RangeRealization r = realize_range(c, t);
  check_realization(c, t, r);
  CHECK(r.report.stenotic);
  CHECK(r.route == "stenotic");
}

TEST_CASE("smallest ideal with an AF quotient") {
  auto s = k0_only(cyclic(3), cokernel(IntMatrix{{3, 0}, {0, 0}}), PresentedGroup::free(1), IntMatrix{{1}, {0}},
                   IntMatrix{{0, 1}});
  OrderedSixTerm t{s, {OrderTag::trivial(), OrderTag::pulled_back(s.gam(), OrderTag::zplus()), OrderTag::zplus()},
                   std::nullopt};
  for (auto c : {RangeCase{RangeClass::SmallestAf, IdealType::InfOne}, RangeCase{RangeClass::UniqueIdeal, IdealType::InfOne}}) {
    REQUIRE(check_range(c, t).admissible);
    RangeRealization r = realize_range(c, t);
    check_realization(c, t, r);
    CHECK(r.report.essential);
    CHECK(r.produced.tags[1].kind() == OrderTag::Kind::PulledBack);
  }
}

TEST_CASE("unique ideal [1 inf]") {
  auto s = k0_only(PresentedGroup::free(1), cokernel(IntMatrix{{0, 0}, {0, 2}}), cyclic(2), IntMatrix{{1}, {0}},
                   IntMatrix{{0, 1}});
  OrderedSixTerm t{s, {OrderTag::zplus(), OrderTag::trivial(), OrderTag::trivial()}, std::nullopt};
  RangeCase c{RangeClass::UniqueIdeal, IdealType::OneInf};
  RangeRealization r = realize_range(c, t);
  check_realization(c, t, r);
}

TEST_CASE("type [1 1] lexicographic extension uses the four-vertex pattern") {
  auto s = k0_only(PresentedGroup::free(1), PresentedGroup::free(2), PresentedGroup::free(1), IntMatrix{{1}, {0}},
                   IntMatrix{{0, 1}});
  OrderTag lex = OrderTag::lex(OrderTag::zplus(), OrderTag::zplus());
  OrderedSixTerm t{s, {OrderTag::zplus(), lex, OrderTag::zplus()}, IntVector{3, 2}};
  RangeCase c{RangeClass::Unital, IdealType::OneOne};
  REQUIRE(check_range(c, t).admissible);
  RangeRealization r = realize_range(c, t);
  check_realization(c, t, r);
  CHECK(r.graph.size() == 4);
  CHECK(!has_cycle(r.graph));
  // a unit whose ideal part is negative is moved by the splitting
  t.unit = IntVector{-5, 1};
  RangeRealization r2 = realize_range(c, t);
  check_realization(c, t, r2);

  RangeCase stable{RangeClass::UniqueIdeal, IdealType::OneOne};
  t.unit.reset();
  check_realization(stable, t, realize_range(stable, t));
}

TEST_CASE("unital vertex count on the stated shape") {
  // G1 = Z/2 + Z (k = 1, m = 1), G3 = Z/3 (l = 1, n = 0): 5 vertices
  PresentedGroup g1 = cokernel(IntMatrix{{2}, {0}});
  PresentedGroup g2 = cokernel(IntMatrix{{2, 0}, {0, 0}, {0, 3}});
  auto s = k0_only(g1, g2, cyclic(3), IntMatrix{{1, 0}, {0, 1}, {0, 0}}, IntMatrix{{0, 0, 1}});
  RangeCase c{RangeClass::Unital, IdealType::InfInf};
  for (long x = 0; x < 2; ++x)
    for (long y = -2; y <= 2; ++y)
      for (long z = 0; z < 3; ++z) {
        OrderedSixTerm t{s, {OrderTag::trivial(), OrderTag::trivial(), OrderTag::trivial()}, IntVector{x, y, z}};
        RangeRealization r = realize_range(c, t);
        check_realization(c, t, r);
        CHECK(r.graph.size() == 5);
      }
}

TEST_CASE("unital [inf 1] splits off the integers") {
  auto s = k0_only(cyclic(2), cokernel(IntMatrix{{2, 0}, {0, 0}}), PresentedGroup::free(1), IntMatrix{{1}, {0}},
                   IntMatrix{{0, 1}});
  OrderTag lex = OrderTag::lex(OrderTag::trivial(), OrderTag::zplus());
  RangeCase c{RangeClass::Unital, IdealType::InfOne};
  for (long n = 1; n <= 3; ++n) {
    OrderedSixTerm t{s, {OrderTag::trivial(), lex, OrderTag::zplus()}, IntVector{1, n}};
    RangeRealization r = realize_range(c, t);
    check_realization(c, t, r);
    // m + k + n + l + 2 = 4 here; one vertex fewer when the quotient unit is 1
    CHECK(r.graph.size() == (n == 1 ? 3u : 4u));
  }
}

TEST_CASE("unital [1 inf] and Cuntz-Krieger pipelines") {
  auto s = k0_only(PresentedGroup::free(1), cokernel(IntMatrix{{0, 0}, {0, 3}}), cyclic(3), IntMatrix{{1}, {0}},
                   IntMatrix{{0, 1}});
  OrderedSixTerm t{s, {OrderTag::zplus(), OrderTag::trivial(), OrderTag::trivial()}, IntVector{0, 1}};
  RangeCase c{RangeClass::Unital, IdealType::OneInf};
  RangeRealization r = realize_range(c, t);
  check_realization(c, t, r);
  CHECK(r.graph.size() == 3);

  RangeCase ck{RangeClass::CuntzKrieger, IdealType::InfInf};
  for (long u = 0; u < 6; ++u) {
    auto z6 = z6_target();
    z6.unit = IntVector{u};
    RangeRealization rc = realize_range(ck, z6);
    check_realization(ck, z6, rc);
    CHECK(rc.graph.singular_vertices().empty());
    CHECK(rc.graph.size() <= 4);
  }
}

TEST_CASE("inadmissible invariants are refused") {
  auto t = z6_target();
  t.tags[1] = OrderTag::pulled_back(t.seq.gam(), OrderTag::zplus());
  CHECK_THROWS_WITH_AS(realize_range({RangeClass::UniqueIdeal, IdealType::InfInf}, t), doctest::Contains("InvalidInput"),
                       Error);
  CHECK_THROWS_WITH_AS(realize_range({RangeClass::Unital, IdealType::InfInf}, z6_target()),
                       doctest::Contains("unit class is required"), Error);
}

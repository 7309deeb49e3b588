#include <doctest.h>

#include "brute.hpp"
#include "common.hpp"
#include "qfilt/spectrum.hpp"

using namespace qfilt;
using namespace fx;

TEST_CASE("closed points of A1 over F2 up to degree 2") {
  const Scheme a1 = Scheme::affine_line(F2());
  const SpecPoset poset = spec(a1, 2);
  std::vector<SpecPoint> want;
  for (unsigned d = 1; d <= 2; ++d)
    for (const auto& g : brute::irreducibles(2, d)) want.push_back(SpecPoint::closed(brute::to_poly(g, 2)));
  want.push_back(SpecPoint::generic());
  CHECK(poset.points == want);
  std::vector<std::string> names;
  for (const auto& x : poset.points) names.push_back(x.to_string());
  CHECK(names == std::vector<std::string>{"pt:x", "pt:x+1", "pt:x^2+x+1", "gen"});
  CHECK_FALSE(poset.family.empty());
}

TEST_CASE("irreducible counts agree with trial division") {
  const SpecPoset poset = spec(Scheme::affine_line(F3()), 3);
  std::size_t want = 0;
  for (unsigned d = 1; d <= 3; ++d) want += brute::irreducibles(3, d).size();
  CHECK(poset.points.size() == want + 1);
}

TEST_CASE("spectra of quotients") {
  const SpecPoset local = spec(QuotientRing(parse_poly("x^3", F2())));
  REQUIRE(local.points.size() == 1);
  CHECK(local.points[0].to_string() == "pt:x");
  CHECK(local.family.empty());

  // a field has a single point, which is generic as well as closed
  const SpecPoset field = spec(QuotientRing(parse_poly("x^2+x+1", F2())));
  REQUIRE(field.points.size() == 1);
  CHECK(field.leq(field.points[0], field.points[0]));

  const SpecPoset two = spec(QuotientRing(parse_poly("x^2*(x+1)", F2())));
  CHECK(two.points.size() == 2);
  CHECK_FALSE(two.leq(two.points[0], two.points[1]));
}

TEST_CASE("specialization is containment of prime ideals") {
  const Scheme a1 = Scheme::affine_line(F2());
  const SpecPoset poset = spec(a1, 3);
  for (const auto& x : poset.points)
    for (const auto& y : poset.points)
      CHECK(poset.leq(x, y) == contains(prime_ideal(a1, y), prime_ideal(a1, x)));
  for (const auto& y : poset.points) CHECK(poset.leq(SpecPoint::generic(), y));
}

TEST_CASE("supports and associated points") {
  const Scheme a1 = A1();
  const TorsionSheafData m(a1, {{pt(a1, "a"), 2}, {pt(a1, "b"), 1}});
  const SuppAss sa = supp_ass(m);
  CHECK(sa.supp == SpecClosedSet::make(a1, {}, PointSet::finite({pt(a1, "a"), pt(a1, "b")})));
  CHECK(sa.ass.points == std::set<SpecPoint>{pt(a1, "a"), pt(a1, "b")});

  const SuppAss z = supp_ass(TorsionSheafData::zero(a1));
  CHECK(z.supp.shape() == SpecClosedSet::Shape::Empty);
  CHECK(z.ass.points.empty());

  const SuppAss f = supp_ass(TorsionSheafData(a1, {}, ComponentSet::all()));
  CHECK(f.supp.is_all());
  CHECK(f.ass.contains(SpecPoint::generic()));
}

TEST_CASE("direct sums unite supports") {
  const Scheme a1 = A1();
  const TorsionSheafData m(a1, {{pt(a1, "a"), 2}});
  const TorsionSheafData n(a1, {{pt(a1, "b"), 3}, {pt(a1, "a"), 1}});
  const TorsionSheafData s = direct_sum(m, n);
  CHECK(supp_ass(s).supp == (supp_ass(m).supp | supp_ass(n).supp));
  CHECK(s.torsion_length() == 6);
  CHECK(s.annihilator() == IdealSheaf::from_orders(a1, {{pt(a1, "a"), L(2)}, {pt(a1, "b"), L(3)}}));
  for (const auto& x : supp_ass(s).ass.points) CHECK(supp_ass(s).supp.contains(x));
}

TEST_CASE("specialization-closed subsets") {
  const Scheme a1 = A1();
  CHECK_FALSE(is_specialization_closed(a1, {{}, PointSet::finite({SpecPoint::generic()})}));
  CHECK(is_specialization_closed(a1, {{}, PointSet::finite({pt(a1, "a")})}));
  CHECK(is_specialization_closed(a1, {ComponentSet::all(), {}}));
  CHECK(is_specialization_closed(a1, {{}, PointSet::cofinite({SpecPoint::generic(), pt(a1, "a")})}));
  CHECK_FALSE(is_specialization_closed(a1, {{}, PointSet::cofinite({pt(a1, "a")})}));
  CHECK_THROWS(SpecClosedSet::from_subset(a1, {{}, PointSet::finite({SpecPoint::generic()})}));
}

TEST_CASE("points outside a scheme are rejected") {
  const Scheme q = quotient("x^3");
  CHECK_THROWS_WITH(q.require(SpecPoint::closed(parse_prime_poly("x+1", 2))),
                    doctest::Contains("point outside scheme"));
}

#include <doctest.h>

#include "common.hpp"
#include "qfilt/error.hpp"
#include "qfilt/gluing.hpp"
#include "qfilt/laws.hpp"
#include "qfilt/oracle.hpp"

using namespace qfilt;
using namespace fx;
namespace orc = qfilt::oracle;

namespace {

std::uint32_t mask_of(const orc::FiniteRingTable& r, const std::vector<const char*>& gens) {
  std::uint32_t m = 0;
  for (const char* g : gens) m |= 1U << r.principal_ideal(r.element_of(parse_prime_poly(g, r.characteristic())));
  return m;
}

}  // namespace

TEST_CASE("membership examples") {
  const Scheme a1 = A1();
  const LocalFilter f = expo(a1, L(0), {{"a", L(2)}});
  CHECK(contains(f, ideal(a1, "(x-a)^2")));
  CHECK_FALSE(contains(f, ideal(a1, "(x-a)^3")));
  CHECK_FALSE(contains(f, ideal(a1, "(x-a)*(x-b)")));
  CHECK(contains(f, IdealSheaf::unit(a1)));
  CHECK_FALSE(contains(f, IdealSheaf::zero(a1)));
  CHECK(contains(LocalFilter::improper(a1), IdealSheaf::zero(a1)));
  CHECK(contains(expo(a1, inf()), ideal(a1, "(x-a)^9*(x-c)")));
}

TEST_CASE("generation matches the oracle closure") {
  const Scheme a1 = A1();
  const LocalFilter g = generate(a1, {ideal(a1, "(x-a)^2"), ideal(a1, "(x-a)*(x-b)")});
  CHECK(g == expo(a1, L(0), {{"a", L(2)}, {"b", L(1)}}));
  CHECK(generate(a1, {IdealSheaf::unit(a1)}) == LocalFilter::trivial(a1));

  // the same generators over F2 with a = 0, b = 1, inside a ring deep enough
  // not to truncate them
  const Scheme q = quotient("x^3*(x+1)^2");
  const auto table = orc::FiniteRingTable::build(q.quotient());
  const LocalFilter gq = generate(q, {ideal(q, "x^2"), ideal(q, "x*(x+1)")});
  CHECK(orc::to_explicit(table, gq).members == orc::filter_closure(table, mask_of(table, {"x^2", "x^2+x"})).members);
  CHECK(gq == expo(q, L(0), {{"x", L(2)}, {"x+1", L(1)}}));

  const FilterBase cofinite{DUZ(), {}, true};
  CHECK(generate(cofinite).is_improper());
}

TEST_CASE("meet and join match the oracle on a chain of length 6") {
  const Scheme q = quotient("x^6");
  const auto table = orc::FiniteRingTable::build(q.quotient());
  const LocalFilter f2 = expo(q, L(0), {{"x", L(2)}});
  const LocalFilter f5 = expo(q, L(0), {{"x", L(5)}});
  CHECK(meet(f2, f5) == f2);
  CHECK(orc::to_explicit(table, meet(f2, f5)).members ==
        (orc::to_explicit(table, f2).members & orc::to_explicit(table, f5).members));
  CHECK(orc::to_explicit(table, join(f2, f5)).members ==
        orc::filter_closure(table, orc::to_explicit(table, f2).members | orc::to_explicit(table, f5).members).members);

  const Scheme a1 = A1();
  const LocalFilter f = expo(a1, L(0), {{"a", L(2)}, {"b", inf()}});
  CHECK(join(f, LocalFilter::improper(a1)).is_improper());
  CHECK(meet(f, f) == f);
  CHECK(meet(f, LocalFilter::improper(a1)) == f);
  CHECK(join(f, LocalFilter::trivial(a1)) == f);
}

TEST_CASE("products") {
  const Scheme a1 = A1();
  const LocalFilter f = expo(a1, L(0), {{"a", L(2)}, {"b", L(1)}});
  CHECK(product(expo(a1, L(0), {{"a", L(2)}}), expo(a1, L(0), {{"a", L(3)}})) == expo(a1, L(0), {{"a", L(5)}}));
  CHECK(product(f, LocalFilter::trivial(a1)) == f);
  CHECK(is_subfilter(f, product(f, expo(a1, L(0), {{"c", L(4)}}))));

  const Scheme q = quotient("x^3");
  const auto table = orc::FiniteRingTable::build(q.quotient());
  const LocalFilter fx1 = expo(q, L(0), {{"x", L(1)}});
  const auto two = orc::product_two_ways(table, orc::to_explicit(table, fx1), orc::to_explicit(table, fx1));
  CHECK(two.equal);
  CHECK(orc::to_explicit(table, product(fx1, fx1)) == two.via_ideals);
  CHECK(orc::describe(table, two.via_ideals) == "{(1),(x),(x^2)}");
}

TEST_CASE("restriction and localization") {
  const Scheme p1 = P1();
  const LocalFilter f = expo(p1, L(0), {{"inf", L(3)}, {"a", L(1)}});
  const LocalFilter r0 = restrict(f, 0);
  CHECK(r0.scheme() == p1.chart(0));
  CHECK(r0 == LocalFilter::from_exponents(p1.chart(0), ExponentFunction(L(0), {{pt(p1, "a"), L(1)}})));
  CHECK(localize(restrict(f, 1), pt(p1, "inf")).level() == L(3));
  CHECK_THROWS_WITH(restrict(f, 2), doctest::Contains("unknown chart"));

  const Scheme a1 = A1();
  const LocalFilter g = expo(a1, L(0), {{"a", L(2)}});
  CHECK(localize(g, pt(a1, "a")).kind() == StalkFilter::Kind::UpToPower);
  CHECK(localize(g, pt(a1, "a")).to_string() == "UpToPower(2)");
  CHECK(localize(LocalFilter::improper(a1), pt(a1, "b")).kind() == StalkFilter::Kind::Everything);
  CHECK(localize(expo(a1, inf()), pt(a1, "b")).kind() == StalkFilter::Kind::AllPowers);
}

TEST_CASE("principal, product-closed and prime filters") {
  const Scheme a1 = A1();
  const auto p = is_principal(expo(a1, L(0), {{"a", L(2)}, {"b", L(1)}}));
  REQUIRE(p);
  CHECK(*p == ideal(a1, "(x-a)^2*(x-b)"));

  const LocalFilter f = expo(a1, inf(), {{"a", L(3)}});
  CHECK_FALSE(is_principal(f));
  CHECK_FALSE(is_product_closed(f));
  CHECK(is_product_closed(expo(a1, L(0), {{"a", inf()}})));

  CHECK(is_prime(expo(a1, inf(), {{"a", L(0)}})) == pt(a1, "a"));
  CHECK(is_prime(expo(a1, inf())) == SpecPoint::generic());
  CHECK_FALSE(is_prime(expo(a1, L(0), {{"a", inf()}})));
  CHECK_FALSE(is_prime(LocalFilter::improper(a1)));

  const Scheme du = Scheme::disjoint_union({F2(), K(), F3()});
  const LocalFilter kill02 = LocalFilter::from_exponents(du, ExponentFunction(), ComponentSet::finite({0, 2}));
  CHECK(is_prime(kill02) == du.component_point(1));
}

TEST_CASE("canonical forms") {
  const Scheme q = quotient("x^3");
  CHECK(expo(q, L(0), {{"x", L(3)}}).is_improper());
  CHECK(expo(q, L(0), {{"x", inf()}}).is_improper());
  const Scheme a1 = A1();
  CHECK(expo(a1, L(0), {{"a", L(0)}}) == LocalFilter::trivial(a1));
  CHECK(LocalFilter::from_exponents(a1, ExponentFunction(), ComponentSet::all()).is_improper());
  CHECK(expo(a1, L(0), {{"a", L(2)}}).to_string() == expo(a1, L(0), {{"a", L(2)}, {"b", L(0)}}).to_string());
}

TEST_CASE("unsupported families") {
  const FilterBase on_line{A1(), {}, true};
  CHECK_THROWS_WITH_AS(generate(on_line), doctest::Contains("unsupported symbolic family"), Error);
  CHECK_THROWS_WITH_AS(meet(LocalFilter::trivial(A1()), LocalFilter::trivial(P1())),
                       doctest::Contains("scheme mismatch"), Error);
}

TEST_CASE("law suite smoke run") {
  for (const auto& [name, scheme] : laws::standard_shapes()) {
    const laws::LawReport rep = laws::run_laws(name, scheme, 300, 7);
    CHECK_MESSAGE(rep.failures == 0, name << ": " << rep.first_failure);
    CHECK(rep.instances == 300);
  }
}

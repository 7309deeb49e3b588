#include <doctest.h>

#include "common.hpp"
#include "qfilt/error.hpp"
#include "qfilt/oracle.hpp"

using namespace qfilt;
using namespace fx;
using namespace qfilt::oracle;

namespace {

FiniteRingTable table(const char* mod, const BaseField& k = F2()) {
  return FiniteRingTable::build(QuotientRing(parse_poly(mod, k)));
}

SubcategoryCounts counts(const SubcategoryLattice& lat) {
  SubcategoryCounts c;
  for (const auto& s : lat.subcategories) {
    ++c.prelocalizing;
    c.localizing += s.localizing;
    c.closed += s.closed;
    c.bilocalizing += s.bilocalizing;
  }
  return c;
}

}  // namespace

TEST_CASE("ring tables") {
  const FiniteRingTable r = table("x^3");
  CHECK(r.size() == 8);
  CHECK(r.ideal_count() == 4);
  CHECK(r.ideal_name(r.zero_ideal()) == "0");
  CHECK(r.ideal_name(r.unit_ideal()) == "(1)");
  const unsigned x = r.x();
  CHECK(r.mul(x, r.mul(x, x)) == 0);
  CHECK(r.ideal_product(r.principal_ideal(x), r.principal_ideal(x)) == r.principal_ideal(r.mul(x, x)));
  REQUIRE(r.primes().size() == 1);
  CHECK(r.primes()[0].length == 3);

  // sums and products read off the tables agree with polynomial arithmetic
  const FiniteRingTable s = table("x^2*(x+2)", F3());
  for (unsigned a = 0; a < s.size(); ++a)
    for (unsigned b = 0; b < s.size(); ++b) {
      const PrimePoly pa = s.poly_of(a), pb = s.poly_of(b);
      const PrimePoly mod = s.ring().modulus().prime();
      REQUIRE(s.poly_of(s.add(a, b)) == (pa + pb) % mod);
      REQUIRE(s.poly_of(s.mul(a, b)) == (pa * pb) % mod);
    }
}

TEST_CASE("ideals of a principal ideal ring are its divisor lattice") {
  for (const char* mod : {"x^3", "x^2+x", "x^2*(x+1)^2", "x^3+x+1"}) {
    const FiniteRingTable r = table(mod);
    const DivisorLattice lat = divisor_lattice(r.ring());
    CHECK(r.ideal_count() == lat.size());
    for (std::size_t i = 0; i < r.ideal_count(); ++i) {
      const Poly g(r.ideal_generator(i));
      CHECK(r.principal_ideal(r.element_of(g.prime())) == i);
      CHECK(lat.index_of(i == 0 ? r.ring().modulus() : g) < lat.size());
    }
  }
}

TEST_CASE("filter counts") {
  CHECK(enumerate_filters(table("x^3")).size() == 4);
  CHECK(enumerate_filters(table("x^2+x")).size() == 4);
  CHECK(enumerate_filters(table("x")).size() == 2);
  CHECK(enumerate_filters(table("x^2+x+1")).size() == 2);
  const FiniteRingTable r = table("x^2*(x+2)", F3());
  CHECK(enumerate_filters(r).size() == enumerate_symbolic_filters(quotient("x^2*(x+2)", F3())).size());
}

TEST_CASE("every filter is prelocalizing") {
  const FiniteRingTable r = table("x^3");
  for (const auto f : enumerate_filters(r)) CHECK(check_prelocalizing(r, f));
  for (std::size_t i = 0; i < r.ideal_count(); ++i) {
    std::uint32_t up = 0;
    for (std::size_t j = 0; j < r.ideal_count(); ++j)
      if (r.ideal_contains(j, i)) up |= 1U << j;
    CHECK(check_prelocalizing(r, {up}));
    CHECK(filter_closure(r, 1U << i).members == up);
    CHECK(least_member(r, {up}) == i);
  }
  CHECK(check_prelocalizing(r, {1U << r.unit_ideal()}));
}

TEST_CASE("products two ways") {
  const FiniteRingTable r = table("x^3");
  const std::size_t x = r.principal_ideal(r.x());
  const ExplicitFilter fx{(1U << x) | (1U << r.unit_ideal())};
  const ProductTwoWays p = product_two_ways(r, fx, fx);
  CHECK(p.equal);
  CHECK(describe(r, p.via_inverse) == "{(1),(x),(x^2)}");
  const ExplicitFilter unit{1U << r.unit_ideal()};
  const auto filters = enumerate_filters(r);
  std::size_t pairs = 0;
  for (const auto f : filters) {
    CHECK(product_two_ways(r, f, unit).via_ideals == f);
    CHECK(product_two_ways(r, unit, f).via_inverse == f);
    for (const auto g : filters) pairs += product_two_ways(r, f, g).equal;
  }
  CHECK(pairs == 16);
}

TEST_CASE("Gabriel filters are the product-closed ones") {
  for (const char* mod : {"x^3", "x^2+x", "x^2*(x+1)"}) {
    const FiniteRingTable r = table(mod);
    for (const auto f : enumerate_filters(r)) CHECK(is_gabriel(r, f) == is_closed_under_products(r, f));
  }
}

TEST_CASE("subcategory lattices") {
  const SubcategoryCounts c3 = counts(enumerate_subcategories(table("x^3"), 4));
  CHECK(c3.prelocalizing == 4);
  CHECK(c3.localizing == 2);
  CHECK(c3.closed == 4);
  CHECK(c3.bilocalizing == 2);
  const SubcategoryCounts c2 = counts(enumerate_subcategories(table("x^2+x"), 4));
  CHECK(c2.prelocalizing == 4);
  CHECK(c2.localizing == 4);
  CHECK(c2.closed == 4);
  CHECK(c2.bilocalizing == 4);
  const SubcategoryCounts c1 = counts(enumerate_subcategories(table("x"), 4));
  CHECK(c1.prelocalizing == 2);
  CHECK(c1.localizing == 2);
  CHECK(c1.bilocalizing == 2);
  CHECK_THROWS(enumerate_subcategories(table("x^3"), 9));
}

TEST_CASE("modules of bounded length") {
  const FiniteRingTable r = table("x^3");
  // partitions of n with parts <= 3, for n = 0..4
  CHECK(modules_up_to(r, 4).size() == 1 + 1 + 2 + 3 + 4);
  const FiniteModule m = FiniteModule::from_type(r, {{0, 2}, {0, 1}});
  CHECK(m.size() == 8);
  CHECK(m.annihilator() == r.principal_ideal(r.mul(r.x(), r.x())));
  const FiniteModule reg = FiniteModule::regular(r);
  CHECK(reg.annihilator() == r.zero_ideal());
}

TEST_CASE("verification reports") {
  const OracleReport rep = verify(QuotientRing(parse_poly("x^3", F2())), 4);
  CHECK(rep.passed());
  CHECK(rep.ideals == 4);
  CHECK(rep.filters == 4);
  CHECK(rep.checks.size() >= 10);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.counterexample);

  CHECK_THROWS_WITH(verify(QuotientRing(parse_poly("(x-a)^2", K())), 2), doctest::Contains("prime field"));
}

#include <doctest.h>

#include <random>
#include <set>

#include "brute.hpp"
#include "qfilt/error.hpp"
#include "qfilt/ideal.hpp"
#include "qfilt/poly.hpp"

using namespace qfilt;

namespace {

const BaseField F2 = BaseField::prime(2);
const BaseField F3 = BaseField::prime(3);
const BaseField K = BaseField::symbolic();

Poly P(const char* text, const BaseField& k) { return parse_poly(text, k); }

AffineIdeal I(const char* text, const BaseField& k) {
  const std::string s = text;
  if (s == "0") return AffineIdeal::zero(k);
  if (s == "1") return AffineIdeal::unit(k);
  return AffineIdeal::principal(P(text, k));
}

std::map<brute::Coeffs, unsigned> as_map(const Factorization& f) {
  std::map<brute::Coeffs, unsigned> out;
  for (const auto& [g, m] : f.factors) out[brute::of(g.prime())] = m;
  return out;
}

AffineIdeal random_ideal(std::mt19937& rng, const BaseField& k) {
  const int roll = std::uniform_int_distribution<int>(0, 19)(rng);
  if (roll == 0) return AffineIdeal::zero(k);
  if (roll == 1) return AffineIdeal::unit(k);
  if (k.is_symbolic()) {
    std::map<std::string, unsigned> f;
    for (const char* l : {"a", "b", "c"}) {
      const unsigned m = std::uniform_int_distribution<unsigned>(0, 2)(rng);
      if (m) f[l] = m;
    }
    if (f.empty()) f["a"] = 1;
    return AffineIdeal::principal(Poly(k, FactoredPoly(f)));
  }
  const unsigned p = k.characteristic();
  const int deg = std::uniform_int_distribution<int>(1, 4)(rng);
  std::vector<PrimePoly::Coeff> c(deg + 1);
  for (auto& x : c) x = std::uniform_int_distribution<unsigned>(0, p - 1)(rng);
  c.back() = 1;
  return AffineIdeal::principal(Poly(PrimePoly(p, c)));
}

}  // namespace

TEST_CASE("factor x^3+x over F2") {
  const Poly f = P("x^3+x", F2);
  const auto expected = brute::factor(brute::of(f.prime()), 2);
  CHECK(as_map(factor(f)) == expected);
  CHECK(expected == std::map<brute::Coeffs, unsigned>{{{0, 1}, 1}, {{1, 1}, 2}});
  CHECK(expand(factor(f), F2) == f);
}

TEST_CASE("factor of an irreducible and of a split symbolic polynomial") {
  const Factorization fx = factor(P("x", F2));
  REQUIRE(fx.factors.size() == 1);
  CHECK(fx.factors[0].factor == P("x", F2));
  CHECK(fx.factors[0].multiplicity == 1);

  const Factorization fs = factor(P("(x-a)^2*(x-b)", K));
  REQUIRE(fs.factors.size() == 2);
  CHECK(fs.factors[0].factor.to_string() == "(x-a)");
  CHECK(fs.factors[0].multiplicity == 2);
  CHECK(fs.factors[1].multiplicity == 1);
}

TEST_CASE("symbolic fields accept only factored input") {
  CHECK_THROWS_AS(P("x^2+1", K), ParseError);
  CHECK_THROWS_AS(P("x^^2", F2), ParseError);
}

TEST_CASE("factor round trip on random products over F3") {
  std::mt19937 rng(11);
  std::vector<brute::Coeffs> irr;
  for (unsigned d = 1; d <= 2; ++d)
    for (auto& g : brute::irreducibles(3, d)) irr.push_back(g);
  for (int t = 0; t < 300; ++t) {
    std::map<brute::Coeffs, unsigned> want;
    brute::Coeffs prod{1};
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < n; ++i) {
      const auto& g = irr[std::uniform_int_distribution<std::size_t>(0, irr.size() - 1)(rng)];
      ++want[g];
      prod = brute::mul(prod, g, 3);
    }
    CHECK(as_map(factor(Poly(brute::to_poly(prod, 3)))) == want);
  }
}

TEST_CASE("ideal arithmetic examples") {
  CHECK(product(I("x", F2), I("x", F2)) == I("x^2", F2));
  // lcm by searching the smallest common multiple
  brute::Coeffs lcm_brute;
  for (unsigned d = 1; d <= 2 && lcm_brute.empty(); ++d)
    for (const auto& g : brute::monics(2, d))
      if (brute::divides({0, 1}, g, 2) && brute::divides({1, 1}, g, 2)) {
        lcm_brute = g;
        break;
      }
  CHECK(intersection(I("x", F2), I("x+1", F2)) == AffineIdeal::principal(Poly(brute::to_poly(lcm_brute, 2))));
  CHECK(intersection(I("x", F2), I("x+1", F2)) == I("x^2+x", F2));
  CHECK(contains(AffineIdeal::unit(F2), AffineIdeal::zero(F2)));
  CHECK(sum(I("x^2", F2), I("x*(x+1)", F2)) == I("x", F2));
  CHECK(colon(I("x^3", F2), I("x", F2)) == I("x^2", F2));
  CHECK_THROWS_WITH_AS(sum(I("x", F2), I("x", F3)), "ring mismatch", Error);
  const IdealOps ops = ideal_ops(I("(x-a)^2", K), I("(x-a)*(x-b)", K));
  CHECK(ops.sum == I("(x-a)", K));
  CHECK(ops.intersection == I("(x-a)^2*(x-b)", K));
  CHECK(ops.product == I("(x-a)^3*(x-b)", K));
  CHECK_FALSE(ops.contains);
}

TEST_CASE("ideal laws on random triples") {
  for (const BaseField& k : {F2, F3, K}) {
    std::mt19937 rng(5 + k.characteristic());
    for (int t = 0; t < 10000; ++t) {
      const AffineIdeal a = random_ideal(rng, k), b = random_ideal(rng, k), c = random_ideal(rng, k);
      REQUIRE(sum(a, b) == sum(b, a));
      REQUIRE(product(a, b) == product(b, a));
      REQUIRE(intersection(a, b) == intersection(b, a));
      REQUIRE(sum(sum(a, b), c) == sum(a, sum(b, c)));
      REQUIRE(product(product(a, b), c) == product(a, product(b, c)));
      REQUIRE(intersection(intersection(a, b), c) == intersection(a, intersection(b, c)));
      REQUIRE(product(a, sum(b, c)) == sum(product(a, b), product(a, c)));
      // containment is the order with sum as join and intersection as meet
      REQUIRE(contains(sum(a, b), a));
      REQUIRE(contains(a, intersection(a, b)));
      REQUIRE(contains(a, b) == (sum(a, b) == a));
      REQUIRE(contains(a, b) == (intersection(a, b) == b));
      if (contains(a, b) && contains(b, c)) REQUIRE(contains(a, c));
      if (contains(a, b) && contains(b, a)) REQUIRE(a == b);
    }
  }
}

TEST_CASE("divisor lattices") {
  auto brute_divisors = [](const char* mod) {
    const brute::Coeffs f = brute::of(parse_prime_poly(mod, 2));
    std::set<brute::Coeffs> out;
    for (unsigned d = 0; d + 1 <= f.size(); ++d)
      for (const auto& g : brute::monics(2, d))
        if (brute::divides(g, f, 2)) out.insert(g);
    return out;
  };
  for (const char* mod : {"x^3", "x^2+x", "x"}) {
    const DivisorLattice lat = divisor_lattice(QuotientRing(P(mod, F2)));
    std::set<brute::Coeffs> got;
    for (const auto& d : lat.divisors) got.insert(brute::of(d.prime()));
    CHECK(got == brute_divisors(mod));
    CHECK(got.size() == lat.size());
    CHECK(lat.divisors.front() == P(mod, F2));
    for (std::size_t i = 0; i < lat.size(); ++i)
      for (std::size_t j = 0; j < lat.size(); ++j)
        CHECK(lat.contains[i][j] == brute::divides(brute::of(lat.divisors[i].prime()), brute::of(lat.divisors[j].prime()), 2));
  }
  // the 4-chain and the Boolean square
  const DivisorLattice chain = divisor_lattice(QuotientRing(P("x^3", F2)));
  std::size_t comparable = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) comparable += chain.contains[i][j] || chain.contains[j][i];
  CHECK(comparable == 16);
  const DivisorLattice square = divisor_lattice(QuotientRing(P("x^2+x", F2)));
  CHECK_FALSE(square.contains[square.index_of(P("x", F2))][square.index_of(P("x+1", F2))]);
  CHECK_THROWS_WITH_AS(divisor_lattice(QuotientRing(P("x^7", F2))), "lattice too large", Error);
}

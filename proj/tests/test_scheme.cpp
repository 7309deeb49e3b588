#include <doctest.h>

#include "common.hpp"
#include "qfilt/error.hpp"
#include "qfilt/gluing.hpp"
#include "qfilt/laws.hpp"

using namespace qfilt;
using namespace fx;

TEST_CASE("ideal sheaves on the affine line") {
  const Scheme a1 = A1();
  const IdealSheaf i = ideal(a1, "(x-a)^2*(x-b)");
  CHECK(i.order_at(pt(a1, "a")) == L(2));
  CHECK(i.order_at(pt(a1, "c")) == L(0));
  CHECK(i.order_at(SpecPoint::generic()) == L(0));
  CHECK(i.to_affine() == AffineIdeal::principal(parse_poly("(x-a)^2*(x-b)", K())));
  CHECK(IdealSheaf::zero(a1).order_at(pt(a1, "a")) == Level::top());
  CHECK(contains(ideal(a1, "(x-a)"), i));
  CHECK(product(ideal(a1, "(x-a)"), ideal(a1, "(x-a)*(x-b)")) == i);
  CHECK(sum(i, ideal(a1, "(x-b)^3")) == ideal(a1, "(x-b)"));
  CHECK_FALSE(is_idempotent(i));
  CHECK(is_idempotent(IdealSheaf::zero(a1)));
}

TEST_CASE("ideal sheaves on quotients fold into vanishing components") {
  const Scheme q = quotient("x^2*(x+1)");
  const IdealSheaf i = ideal(q, "x^2");
  CHECK(i.is_zero() == false);
  CHECK(i.zero_components().contains(q.component_of(pt(q, "x"))));
  CHECK(is_idempotent(i));
  CHECK_FALSE(is_idempotent(ideal(q, "x")));
  CHECK(ideal(q, "x^2*(x+1)").is_zero());
}

TEST_CASE("P1 charts use intrinsic point names") {
  const Scheme p1 = P1();
  CHECK(*p1.chart_count() == 2);
  CHECK(p1.chart_contains(0, pt(p1, "0")));
  CHECK_FALSE(p1.chart_contains(0, pt(p1, "inf")));
  CHECK(p1.chart_contains(1, pt(p1, "inf")));
  CHECK_FALSE(p1.chart_contains(1, pt(p1, "0")));
  CHECK(p1.chart_contains(1, pt(p1, "a")));
}

TEST_CASE("gluing ideals on P1") {
  const Scheme p1 = P1();
  const SpecPoint a = pt(p1, "a");
  const Scheme c0 = p1.chart(0), c1 = p1.chart(1);

  const IdealSheaf g = glue_ideals(p1, {{{0, ideal(c0, "(x-a)^2")}, {1, IdealSheaf::from_orders(c1, {{a, L(2)}})}}, {}});
  CHECK(g.order_at(a) == L(2));
  CHECK(g.order_at(pt(p1, "inf")) == L(0));

  // the origin is outside chart 1, so chart 1 need not see it
  const IdealSheaf o = glue_ideals(p1, {{{0, ideal(c0, "x^3")}, {1, IdealSheaf::unit(c1)}}, {}});
  CHECK(o.order_at(pt(p1, "0")) == L(3));

  CHECK(glue_ideals(p1, {{{0, IdealSheaf::unit(c0)}, {1, IdealSheaf::unit(c1)}}, {}}) == IdealSheaf::unit(p1));

  CHECK_THROWS_WITH_AS(glue_ideals(p1, {{{0, ideal(c0, "(x-a)")}, {1, IdealSheaf::from_orders(c1, {{a, L(2)}})}}, {}}),
                       "overlap mismatch at point pt:a: 1 vs 2", Error);
}

TEST_CASE("gluing filters on P1") {
  const Scheme p1 = P1();
  const SpecPoint a = pt(p1, "a");
  const Scheme c0 = p1.chart(0), c1 = p1.chart(1);
  const LocalFilter r0 = LocalFilter::from_exponents(c0, ExponentFunction(L(0), {{a, L(1)}, {pt(p1, "0"), L(4)}}));
  const LocalFilter r1 = LocalFilter::from_exponents(c1, ExponentFunction(L(0), {{a, L(1)}, {pt(p1, "inf"), L(2)}}));
  const LocalFilter g = glue_filters(p1, {{{0, r0}, {1, r1}}, {}});
  CHECK(g == expo(p1, L(0), {{"a", L(1)}, {"0", L(4)}, {"inf", L(2)}}));

  CHECK(glue_filters(p1, {{{0, LocalFilter::improper(c0)}, {1, LocalFilter::improper(c1)}}, {}}).is_improper());

  const LocalFilter bad = LocalFilter::from_exponents(c1, ExponentFunction(L(0), {{a, L(2)}}));
  CHECK_THROWS_WITH_AS(glue_filters(p1, {{{0, r0}, {1, bad}}, {}}), "incompatible at point pt:a: 1 vs 2", Error);
  CHECK_THROWS_WITH_AS(glue_filters(p1, {{{0, r0}, {1, LocalFilter::improper(c1)}}, {}}),
                       doctest::Contains("incompatible at point"), Error);
  CHECK_THROWS_WITH_AS(glue_filters(p1, {{{0, r0}, {5, r1}}, {}}), doctest::Contains("unknown chart 5"), Error);
}

TEST_CASE("gluing on the integer-indexed union") {
  const Scheme z = DUZ();
  const Scheme chart = Scheme::disjoint_union({BaseField::symbolic()});
  ChartFamily<LocalFilter> data;
  data.charts.emplace(3, LocalFilter::improper(chart));
  data.charts.emplace(-1, LocalFilter::improper(chart));
  data.rest = LocalFilter::trivial(chart);
  const LocalFilter g = glue_filters(z, data);
  CHECK(g.killed() == ComponentSet::finite({-1, 3}));
  CHECK(is_principal(g));

  data.rest = LocalFilter::improper(chart);
  data.charts.at(3) = LocalFilter::trivial(chart);
  const LocalFilter h = glue_filters(z, data);
  CHECK(h.killed() == ComponentSet::cofinite({3}));
  CHECK_FALSE(h.is_improper());
  CHECK_THROWS_WITH(glue_filters(z, {{{0, LocalFilter::trivial(chart)}}, {}}),
                    doctest::Contains("needs data for unlisted charts"));
}

TEST_CASE("locality of filter bases") {
  const auto [local_z, closure_z] = is_local(FilterBase{DUZ(), {}, true});
  CHECK_FALSE(local_z);
  CHECK(closure_z.is_improper());

  const Scheme q = quotient("x^3*(x+1)");
  const IdealSheaf i = ideal(q, "x^2"), j = ideal(q, "x*(x+1)");
  const auto [local_q, closure_q] = is_local(FilterBase{q, {i, j}, false});
  CHECK(local_q);
  CHECK(closure_q == LocalFilter::principal(intersection(i, j)));

  const Scheme a1 = A1();
  const auto [local_u, closure_u] = is_local(FilterBase{a1, {IdealSheaf::unit(a1)}, false});
  CHECK(local_u);
  CHECK(closure_u == LocalFilter::trivial(a1));
}

TEST_CASE("restrict then glue is the identity") {
  for (const auto& [name, scheme] : laws::standard_shapes()) {
    laws::Generator gen(scheme, 99);
    for (int t = 0; t < 200; ++t) {
      const LocalFilter f = gen.filter();
      CHECK_MESSAGE(glue_filters(scheme, restrict_all(f)) == f, name << ": " << f.to_string());
      const IdealSheaf i = gen.ideal();
      CHECK_MESSAGE(glue_ideals(scheme, restrict_all(i)) == i, name << ": " << i.to_string());
    }
  }
}

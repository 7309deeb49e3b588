#include "qfilt/laws.hpp"

#include <functional>
#include <sstream>

#include "qfilt/classify.hpp"
#include "qfilt/error.hpp"
#include "qfilt/gluing.hpp"

namespace qfilt::laws {

namespace {

constexpr std::int64_t kIntegerWindow = 3;

}  // namespace

Generator::Generator(Scheme scheme, std::uint64_t seed) : scheme_(std::move(scheme)), rng_(seed) {
  switch (scheme_.kind()) {
    case Scheme::Kind::AffineLine:
    case Scheme::Kind::ProjLine:
    case Scheme::Kind::ProjChart: {
      const SpecPoset poset = scheme_.field().is_symbolic() ? spec(scheme_, 1, {"0", "a", "b", "c"}) : spec(scheme_, 3);
      for (const auto& x : poset.points)
        if (x.is_closed()) pool_.push_back(x);
      break;
    }
    case Scheme::Kind::AffineQuotient: pool_ = scheme_.finite_points(); break;
    case Scheme::Kind::DisjointUnion:
      if (scheme_.is_integer_family())
        for (std::int64_t i = -kIntegerWindow; i <= kIntegerWindow; ++i) pool_.push_back(SpecPoint::component(i));
      else
        pool_ = scheme_.finite_points();
      break;
  }
}

std::size_t Generator::below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

SpecPoint Generator::closed_point() { return pool_[below(pool_.size())]; }

SpecPoint Generator::point() {
  if (scheme_.is_line_like() && chance(0.1)) return SpecPoint::generic();
  return closed_point();
}

Level Generator::level() {
  if (chance(0.15)) return Level::infinity();
  return Level::finite(below(5));
}

ComponentSet Generator::component_pattern(double density) {
  std::set<std::int64_t> picked;
  for (const auto& x : pool_)
    if (chance(density)) picked.insert(x.component_index());
  if (scheme_.is_integer_family() && chance(0.5)) return ComponentSet::cofinite(std::move(picked));
  return scheme_.normalize(ComponentSet::finite(std::move(picked)));
}

IdealSheaf Generator::ideal() {
  if (chance(0.05)) return IdealSheaf::zero(scheme_);
  std::map<SpecPoint, Level> orders;
  switch (scheme_.kind()) {
    case Scheme::Kind::DisjointUnion: return IdealSheaf::from_orders(scheme_, {}, component_pattern(0.3));
    case Scheme::Kind::AffineQuotient:
      for (const auto& x : pool_) orders[x] = Level::finite(below(scheme_.stalk(x).length + 1));
      return IdealSheaf::from_orders(scheme_, orders);
    default: {
      const std::size_t n = below(4);
      for (std::size_t i = 0; i < n; ++i) orders[closed_point()] = Level::finite(1 + below(4));
      return IdealSheaf::from_orders(scheme_, orders);
    }
  }
}

LocalFilter Generator::filter() {
  if (chance(0.08)) return LocalFilter::improper(scheme_);
  std::map<SpecPoint, Level> ex;
  switch (scheme_.kind()) {
    case Scheme::Kind::DisjointUnion: return LocalFilter::from_exponents(scheme_, {}, component_pattern(0.3));
    case Scheme::Kind::AffineQuotient:
      for (const auto& x : pool_) ex[x] = Level::finite(below(scheme_.stalk(x).length + 1));
      return LocalFilter::from_exponents(scheme_, ExponentFunction(Level::finite(0), std::move(ex)));
    default: {
      Level fallback = Level::finite(0);
      if (chance(0.35))
        fallback = Level::infinity();
      else if (chance(0.2))
        fallback = Level::finite(1 + below(3));
      const std::size_t n = below(4);
      for (std::size_t i = 0; i < n; ++i) ex[closed_point()] = level();
      return LocalFilter::from_exponents(scheme_, ExponentFunction(fallback, std::move(ex)));
    }
  }
}

LocalFilter Generator::localizing_filter() {
  if (chance(0.08)) return LocalFilter::improper(scheme_);
  std::map<SpecPoint, Level> ex;
  switch (scheme_.kind()) {
    case Scheme::Kind::DisjointUnion: return LocalFilter::from_exponents(scheme_, {}, component_pattern(0.4));
    case Scheme::Kind::AffineQuotient:
      for (const auto& x : pool_)
        if (chance(0.5)) ex[x] = Level::finite(scheme_.stalk(x).length);
      return LocalFilter::from_exponents(scheme_, ExponentFunction(Level::finite(0), std::move(ex)));
    default: {
      const Level fallback = chance(0.4) ? Level::infinity() : Level::finite(0);
      const std::size_t n = below(4);
      for (std::size_t i = 0; i < n; ++i) ex[closed_point()] = chance(0.5) ? Level::infinity() : Level::finite(0);
      return LocalFilter::from_exponents(scheme_, ExponentFunction(fallback, std::move(ex)));
    }
  }
}

TorsionSheafData Generator::module() {
  std::vector<TorsionSheafData::Divisor> divs;
  ComponentSet free;
  if (scheme_.kind() == Scheme::Kind::DisjointUnion) return TorsionSheafData(scheme_, {}, component_pattern(0.25));
  const std::size_t n = below(4);
  for (std::size_t i = 0; i < n; ++i) {
    const SpecPoint x = closed_point();
    const unsigned cap = scheme_.kind() == Scheme::Kind::AffineQuotient ? scheme_.stalk(x).length : 4;
    divs.emplace_back(x, 1 + static_cast<unsigned>(below(cap)));
  }
  if (scheme_.is_line_like() && chance(0.1)) free = scheme_.all_components();
  return TorsionSheafData(scheme_, std::move(divs), std::move(free));
}

std::vector<std::int64_t> Generator::charts() {
  if (scheme_.is_integer_family()) return {-2, 0, static_cast<std::int64_t>(kIntegerWindow + 5)};
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < *scheme_.chart_count(); ++i) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

std::vector<std::pair<std::string, Scheme>> standard_shapes() {
  return {
      {"A1(k)", Scheme::affine_line(BaseField::symbolic())},
      {"A1(F2)", Scheme::affine_line(BaseField::prime(2))},
      {"F2[x]/(x^3)", Scheme::affine_quotient(QuotientRing(parse_poly("x^3", BaseField::prime(2))))},
      {"F3[x]/(x^2*(x-1))",
       Scheme::affine_quotient(QuotientRing(parse_poly("x^2*(x-1)", BaseField::prime(3))))},
      {"P1(k)", Scheme::proj_line(BaseField::symbolic())},
      {"P1(F3)", Scheme::proj_line(BaseField::prime(3))},
      {"DU(F2,k,F3)", Scheme::disjoint_union({BaseField::prime(2), BaseField::symbolic(), BaseField::prime(3)})},
      {"DU(Z)", Scheme::integer_disjoint_union()},
  };
}

namespace {

class Checker {
 public:
  explicit Checker(LawReport& report) : report_(report) {}

  void check(bool ok, const std::string& law, const std::function<std::string()>& detail) {
    ++report_.checks;
    if (ok) return;
    if (report_.failures++ == 0) report_.first_failure = law + ": " + detail();
  }

 private:
  LawReport& report_;
};

std::string show(std::initializer_list<const LocalFilter*> fs) {
  std::ostringstream out;
  const char* sep = "";
  for (const auto* f : fs) {
    out << sep << "[" << f->to_string() << "]";
    sep = " ";
  }
  return out.str();
}

}  // namespace

LawReport run_laws(const std::string& name, const Scheme& scheme, std::size_t count, std::uint64_t seed) {
  LawReport report;
  report.shape = name;
  Checker c(report);
  Generator gen(scheme, seed);
  const LocalFilter bottom = LocalFilter::trivial(scheme);
  const LocalFilter top = LocalFilter::improper(scheme);
  const IdealSheaf unit = IdealSheaf::unit(scheme);
  const auto charts = gen.charts();

  for (std::size_t n = 0; n < count; ++n) {
    ++report.instances;
    const LocalFilter f = gen.filter(), g = gen.filter(), h = gen.filter();
    const IdealSheaf i = gen.ideal(), j = gen.ideal(), k = gen.ideal();
    const auto fi = [&] { return show({&f}) + " I=" + i.to_string() + " J=" + j.to_string(); };
    const auto fg = [&] { return show({&f, &g}); };
    const auto fgh = [&] { return show({&f, &g, &h}); };

    // filter axioms
    c.check(contains(f, unit), "unit member", fi);
    const IdealSheaf bigger = sum(i, k);
    c.check(!contains(f, i) || contains(f, bigger), "upward closed", fi);
    c.check(!(contains(f, i) && contains(f, j)) || contains(f, intersection(i, j)), "intersection closed", fi);
    c.check(contains(generate(scheme, {i, j}), i) && contains(generate(scheme, {i, j}), j), "generate contains", fi);
    c.check(contains(f, i) == is_subfilter(LocalFilter::principal(i), f), "membership is principal inclusion", fi);

    // lattice
    const LocalFilter m = meet(f, g), jn = join(f, g);
    c.check(m == meet(g, f) && jn == join(g, f), "commutative", fg);
    c.check(meet(meet(f, g), h) == meet(f, meet(g, h)), "meet associative", fgh);
    c.check(join(join(f, g), h) == join(f, join(g, h)), "join associative", fgh);
    c.check(meet(f, jn) == f && join(f, m) == f, "absorption", fg);
    c.check(meet(f, f) == f && join(f, f) == f, "idempotent", fg);
    c.check(meet(f, top) == f && join(f, bottom) == f && join(f, top) == top && meet(f, bottom) == bottom, "bounds",
            fg);
    c.check(contains(m, i) == (contains(f, i) && contains(g, i)), "meet membership", fi);
    c.check(!(contains(f, i) || contains(g, i)) || contains(jn, i), "join membership", fi);

    // product
    const LocalFilter p = product(f, g);
    c.check(is_subfilter(f, p) && is_subfilter(g, p), "F1, F2 inside F1*F2", fg);
    c.check(p == product(g, f), "product commutative", fg);
    c.check(product(p, h) == product(f, product(g, h)), "product associative", fgh);
    c.check(product(f, bottom) == f && product(f, top) == top, "product units", fg);
    c.check(!(contains(f, i) && contains(g, j)) || contains(p, product(i, j)), "products of members", fi);
    c.check(product(LocalFilter::principal(i), LocalFilter::principal(j)) == LocalFilter::principal(product(i, j)),
            "principal product", fi);
    c.check(is_product_closed(gen.localizing_filter()), "localizing generator", fg);

    // restriction and localization
    for (auto chart : charts) {
      const auto rf = restrict(f, chart), rg = restrict(g, chart);
      c.check(restrict(m, chart) == meet(rf, rg), "restrict meet", fg);
      c.check(restrict(jn, chart) == join(rf, rg), "restrict join", fg);
      c.check(restrict(p, chart) == product(rf, rg), "restrict product", fg);
    }
    const SpecPoint x = gen.point();
    const auto lf = localize(f, x), lg = localize(g, x);
    const auto at = [&] { return fg() + " at " + x.to_string(); };
    c.check(localize(m, x) == meet(lf, lg), "localize meet", at);
    c.check(localize(jn, x) == join(lf, lg), "localize join", at);
    c.check(localize(p, x) == product(lf, lg), "localize product", at);

    // gluing
    c.check(glue_filters(scheme, restrict_all(f)) == f, "glue restrict filter", fi);
    c.check(glue_ideals(scheme, restrict_all(i)) == i, "glue restrict ideal", fi);

    // membership
    const TorsionSheafData ma = gen.module(), mb = gen.module();
    const auto mod = [&] { return fg() + " M=" + ma.to_string() + " N=" + mb.to_string(); };
    c.check(member(ma, m) == (member(ma, f) && member(ma, g)), "member meet", mod);
    c.check(member(direct_sum(ma, mb), f) == (member(ma, f) && member(mb, f)), "member direct sum", mod);
    c.check(member(ma, filter_from_modules(scheme, {ma})), "member generated", mod);
  }
  return report;
}

}  // namespace qfilt::laws

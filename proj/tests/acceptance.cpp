// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "brute.hpp"
#include "common.hpp"
#include "qfilt/classify.hpp"
#include "qfilt/gluing.hpp"
#include "qfilt/laws.hpp"
#include "qfilt/oracle.hpp"
#include "qfilt/spectrum.hpp"

using namespace qfilt;
using namespace fx;
namespace orc = qfilt::oracle;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.ok && secs > limit_s) out.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  std::printf("%s  %d. %s  (%.3f s)  %s\n", out.ok ? "PASS" : "FAIL", n, title, secs, out.detail.str().c_str());
  std::fflush(stdout);
  failures += !out.ok;
}

Level sum_level(Level a, Level b) {
  if (a.is_infinite() || b.is_infinite()) return inf();
  return L(static_cast<unsigned>(a.value() + b.value()));
}

void affine_table(Outcome& out) {
  const Scheme a1 = A1();
  const std::vector<Level> values{L(0), L(1), L(2), L(3), inf()};
  std::size_t n = 0, fam_loc = 0, fam_closed = 0, fam_biloc = 0;
  for (const Level d : {L(0), inf()})
    for (const Level ra : values)
      for (const Level rb : values)
        for (const Level rc : values) {
          const LocalFilter f = expo(a1, d, {{"a", ra}, {"b", rb}, {"c", rc}});
          const ClassificationReport r = classify(f);
          const auto in01 = [](Level v) { return v == L(0) || v.is_infinite(); };
          const bool loc = in01(d) && in01(ra) && in01(rb) && in01(rc);
          const bool closed = d == L(0) && ra.is_finite() && rb.is_finite() && rc.is_finite();
          const bool biloc = d == L(0) && ra == L(0) && rb == L(0) && rc == L(0);
          if (r.localizing != loc || r.closed != closed || r.bilocalizing != biloc || !r.prelocalizing)
            out.fail("wrong flags for " + f.to_string());
          fam_loc += r.localizing;
          fam_closed += r.closed;
          fam_biloc += r.bilocalizing;
          ++n;
        }
  const ClassificationReport imp = classify(LocalFilter::improper(a1));
  if (!(imp.localizing && imp.closed && imp.bilocalizing)) out.fail("Improper not flagged in every family");
  ++n;
  // 2^4 localizing assignments, 4^3 closed (default 0, finite values), one bilocalizing, plus Improper
  if (fam_loc + 1 != 17 || fam_closed + 1 != 65 || fam_biloc + 1 != 2) out.fail("family sizes differ");
  out.detail << n << " filters";
}

void product_law(Outcome& out) {
  const Scheme a1 = A1();
  std::vector<Level> ms;
  for (unsigned m = 0; m <= 8; ++m) ms.push_back(L(m));
  ms.push_back(inf());
  std::size_t n = 0;
  for (const Level m : ms)
    for (const Level k : ms) {
      const LocalFilter got = product(expo(a1, L(0), {{"a", m}}), expo(a1, L(0), {{"a", k}}));
      if (!(got == expo(a1, L(0), {{"a", sum_level(m, k)}})))
        out.fail("F_a^" + m.to_string() + " * F_a^" + k.to_string() + " = " + got.to_string());
      ++n;
    }
  out.detail << n << " pairs";
}

void projective_line(Outcome& out) {
  const Scheme p1 = P1();
  const std::vector<Level> values{L(0), L(1), L(2), inf()};
  std::vector<LocalFilter> biloc;
  for (const Level d : {L(0), inf()})
    for (const Level r0 : values)
      for (const Level ra : values)
        for (const Level ri : values) {
          const LocalFilter f = expo(p1, d, {{"0", r0}, {"a", ra}, {"inf", ri}});
          if (classify(f).bilocalizing) biloc.push_back(f);
        }
  if (classify(LocalFilter::improper(p1)).bilocalizing) biloc.push_back(LocalFilter::improper(p1));
  if (biloc.size() != 2 || !(biloc[0] == LocalFilter::trivial(p1)) || !biloc[1].is_improper())
    out.fail(std::to_string(biloc.size()) + " bilocalizing filters");

  // random localizing filters: r takes values in {0, inf} off a small pool, or Improper
  std::mt19937 rng(2024);
  const std::vector<const char*> pool{"0", "a", "b", "c", "d", "inf"};
  std::size_t trips = 0;
  for (int t = 0; t < 500; ++t) {
    LocalFilter f = LocalFilter::improper(p1);
    if (rng() % 20 != 0) {
      std::vector<std::pair<const char*, Level>> ex;
      for (const char* x : pool)
        if (rng() % 3 == 0) ex.emplace_back(x, rng() % 2 ? inf() : L(0));
      f = expo(p1, rng() % 2 ? inf() : L(0), ex);
    }
    const SpecClosedSet phi = localizing_to_specclosed(f);
    if (!(specclosed_to_localizing(phi) == f) || !(localizing_to_specclosed(specclosed_to_localizing(phi)) == phi))
      out.fail("round trip broke on " + f.to_string());
    ++trips;
  }
  out.detail << "2 bilocalizing, " << trips << " round trips";
}

void integer_union(Outcome& out) {
  const Scheme z = DUZ();
  const auto [local, closure] = is_local(FilterBase{z, {}, true});
  if (local || !closure.is_improper()) out.fail("cofinite family judged local or closure not Improper");

  std::mt19937 rng(7);
  auto random_set = [&] {
    std::set<std::int64_t> s;
    const int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) s.insert(static_cast<std::int64_t>(rng() % 21) - 10);
    return rng() % 3 == 0 ? ComponentSet::cofinite(s) : ComponentSet::finite(s);
  };
  std::size_t n = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<IdealSheaf> gens;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(IdealSheaf::from_orders(z, {}, random_set()));
    const LocalFilter f = generate(z, gens);
    // the generated filter is principal on the intersection of its generators
    IdealSheaf meet_all = gens[0];
    for (const auto& g : gens) meet_all = intersection(meet_all, g);
    const auto p = is_principal(f);
    if (!p || !(*p == meet_all)) out.fail("not principal: " + f.to_string());
    ++n;
  }
  out.detail << "(false, Improper); " << n << " presented filters principal";
}

void oracle_rings(Outcome& out) {
  struct Want {
    const char* ring;
    unsigned p;
    std::size_t filters;
    orc::SubcategoryCounts counts;
  };
  const std::vector<Want> rings{{"x^3", 2, 4, {4, 2, 4, 2}}, {"x^2+x", 2, 4, {4, 4, 4, 4}}, {"x^2*(x-1)", 3, 0, {}}};
  for (const auto& w : rings) {
    const QuotientRing ring(parse_poly(w.ring, BaseField::prime(w.p)));
    const orc::OracleReport rep = orc::verify(ring, 4);
    const std::string name = ring.to_string();
    for (const auto& c : rep.checks)
      if (!c.passed) out.fail(name + " " + c.name + ": " + c.counterexample);
    const auto table = orc::FiniteRingTable::build(ring);
    const auto explicit_filters = orc::enumerate_filters(table);
    const auto symbolic = orc::enumerate_symbolic_filters(Scheme::affine_quotient(ring));
    std::set<orc::ExplicitFilter> image;
    for (const auto& f : symbolic) image.insert(orc::to_explicit(table, f));
    if (image.size() != symbolic.size() || image != std::set<orc::ExplicitFilter>(explicit_filters.begin(), explicit_filters.end()))
      out.fail(name + ": symbolic filters not in bijection with the lattice");
    for (const auto f : explicit_filters) {
      if (orc::is_gabriel(table, f) != orc::is_closed_under_products(table, f)) out.fail(name + ": Gabriel differs");
      for (const auto g : explicit_filters)
        if (!orc::product_two_ways(table, f, g).equal) out.fail(name + ": products differ");
    }
    const auto& c = rep.subcategories;
    if (c.prelocalizing != explicit_filters.size()) out.fail(name + ": subcategory count differs from filter count");
    if (w.filters && (explicit_filters.size() != w.filters || c.localizing != w.counts.localizing ||
                      c.closed != w.counts.closed || c.bilocalizing != w.counts.bilocalizing))
      out.fail(name + ": counts differ");
    out.detail << name << " " << explicit_filters.size() << " filters " << c.prelocalizing << "/" << c.localizing << "/"
               << c.closed << "/" << c.bilocalizing << "; ";
  }
}

void membership(Outcome& out) {
  const Scheme q = quotient("x^3");
  const auto table = orc::FiniteRingTable::build(q.quotient());
  const auto filters = orc::enumerate_symbolic_filters(q);
  std::size_t n = 0;
  for (const auto& summands : orc::modules_up_to(table, 4)) {
    const orc::FiniteModule m = orc::FiniteModule::from_type(table, summands);
    const TorsionSheafData data = orc::to_sheaf_data(table, q, summands);
    for (const auto& f : filters) {
      const orc::ExplicitFilter e = orc::to_explicit(table, f);
      bool every = true;
      for (unsigned u = 0; u < m.size() && every; ++u) every = e.contains(m.element_annihilator(u));
      if (member(data, f) != every) out.fail("disagree on " + data.to_string() + " in " + f.to_string());
      ++n;
    }
  }
  out.detail << n << " module/filter pairs";
}

void spectrum_counts(Outcome& out) {
  const Scheme a1 = Scheme::affine_line(F2());
  const SpecPoset poset = spec(a1, 4);
  std::vector<std::size_t> by_degree(5, 0);
  for (const auto& x : poset.points)
    if (x.kind() == SpecPoint::Kind::Closed) ++by_degree[x.poly().degree()];
  for (unsigned d = 1; d <= 4; ++d) {
    const std::size_t want = brute::irreducibles(2, d).size();
    const std::size_t paper[] = {0, 2, 1, 2, 3};
    if (by_degree[d] != want || want != paper[d]) out.fail("degree " + std::to_string(d) + " count differs");
  }
  for (const auto& x : poset.points)
    for (const auto& y : poset.points) {
      const bool want = x == y || x.is_generic();
      if (poset.leq(x, y) != want) out.fail("order wrong at " + x.to_string() + " <= " + y.to_string());
    }
  out.detail << "2,1,2,3; generic below all";
}

void law_suite(Outcome& out) {
  std::size_t checks = 0;
  for (const auto& [name, scheme] : laws::standard_shapes()) {
    const laws::LawReport r = laws::run_laws(name, scheme, 10000, 1);
    if (r.instances < 10000) out.fail(name + ": too few instances");
    if (r.failures) out.fail(name + ": " + r.first_failure);
    checks += r.checks;
  }
  out.detail << laws::standard_shapes().size() << " shapes, " << checks << " checks";
}

}  // namespace

int main() {
  criterion(1, "affine-line classification table", 1, affine_table);
  criterion(2, "product law F_a^m * F_a^n = F_a^(m+n)", 1, product_law);
  criterion(3, "projective line bilocalizing filters and support round trip", 5, projective_line);
  criterion(4, "integer-indexed union non-locality", 1, integer_union);
  criterion(5, "oracle equivalence on three rings", 30, oracle_rings);
  criterion(6, "membership criterion against elementwise annihilators", 10, membership);
  criterion(7, "spectrum counts over F2", 1, spectrum_counts);
  criterion(8, "filter-lattice laws", 60, law_suite);
  return failures == 0 ? 0 : 1;
}

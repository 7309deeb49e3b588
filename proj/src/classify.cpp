#include "qfilt/classify.hpp"

#include "qfilt/error.hpp"

namespace qfilt {

SpecClosedSet localizing_to_specclosed(const LocalFilter& f) {
  if (!is_product_closed(f)) throw Error("filter is not localizing: " + f.to_string());
  const Scheme& s = f.scheme();
  if (f.is_improper()) return SpecClosedSet::all(s);
  const ExponentFunction& r = f.exponents();
  PointSet closed;
  if (r.fallback() > Level::finite(0)) {
    std::set<SpecPoint> excluded;
    for (const auto& [x, v] : r.exceptions())
      if (v == Level::finite(0)) excluded.insert(x);
    closed = PointSet::cofinite(std::move(excluded));
  } else {
    for (const auto& [x, v] : r.exceptions()) closed.insert(x);
  }
  return SpecClosedSet::make(s, f.killed(), std::move(closed));
}

LocalFilter specclosed_to_localizing(const SpecClosedSet& phi) {
  const Scheme& s = phi.scheme();
  if (!s.is_line_like()) return LocalFilter::from_exponents(s, {}, phi.whole_components());
  if (phi.whole_components().contains(0)) return LocalFilter::improper(s);
  const PointSet& c = phi.closed_points();
  std::map<SpecPoint, Level> ex;
  const Level inside = Level::infinity(), outside = Level::finite(0);
  for (const auto& x : c.listed()) ex.emplace(x, c.is_cofinite() ? outside : inside);
  return LocalFilter::from_exponents(s, ExponentFunction(c.is_cofinite() ? inside : outside, std::move(ex)));
}

namespace {

SpecClosedSet quotient_support(const IdealSheaf& ideal) {
  PointSet closed;
  for (const auto& [x, _] : ideal.orders()) closed.insert(x);
  return SpecClosedSet::make(ideal.scheme(), ideal.zero_components(), std::move(closed));
}

}  // namespace

ClosedSubscheme closed_to_subscheme(const LocalFilter& f) {
  auto ideal = is_principal(f);
  if (!ideal) throw Error("filter is not closed (not principal): " + f.to_string());
  return {*ideal, quotient_support(*ideal)};
}

ClopenSplit biloc_to_clopen(const LocalFilter& f) {
  auto ideal = is_principal(f);
  if (!ideal || !is_idempotent(*ideal)) throw Error("filter is not bilocalizing: " + f.to_string());
  const Scheme& s = f.scheme();
  IdealSheaf j = IdealSheaf::from_orders(s, {}, s.all_components() - ideal->zero_components());
  if (!sum(*ideal, j).is_unit() || !intersection(*ideal, j).is_zero())
    throw Error("internal: idempotent ideal failed to split");
  return {quotient_support(*ideal), std::move(j)};
}

ClassificationReport classify(const LocalFilter& f) {
  ClassificationReport rep(f);
  rep.localizing = is_product_closed(f);
  const auto ideal = is_principal(f);
  rep.closed = ideal.has_value();
  rep.bilocalizing = rep.closed && is_idempotent(*ideal);
  rep.prime = is_prime(f);
  if (rep.localizing) rep.support = localizing_to_specclosed(f);
  if (rep.closed) rep.subscheme = closed_to_subscheme(f);
  if (rep.bilocalizing) rep.clopen = biloc_to_clopen(f);
  return rep;
}

bool member(const TorsionSheafData& m, const LocalFilter& f) { return contains(f, m.annihilator()); }

LocalFilter filter_from_modules(const Scheme& scheme, const std::vector<TorsionSheafData>& modules) {
  std::vector<IdealSheaf> anns;
  for (const auto& m : modules) {
    require_same_scheme(scheme, m.scheme());
    anns.push_back(m.annihilator());
  }
  return generate(scheme, anns);
}

namespace {

std::string stalk_condition(const SpecPoint& x, Level v) {
  if (v.is_top()) return "no condition at " + x.to_string();
  if (v.is_infinite()) return "M_x is m_x-torsion at " + x.to_string();
  if (v == Level::finite(0)) return "M_x = 0 at " + x.to_string();
  return "m_x^" + v.to_string() + " M_x = 0 at " + x.to_string();
}

std::string describe_default(Level v) {
  if (v.is_infinite()) return "M_x is m_x-torsion at every other closed point";
  if (v == Level::finite(0)) return "M_x = 0 at every other closed point";
  return "m_x^" + v.to_string() + " M_x = 0 at every other closed point";
}

}  // namespace

Explanation explain(const LocalFilter& f) {
  Explanation out;
  out.filter = f.to_string();
  const ClassificationReport rep = classify(f);
  const Scheme& s = f.scheme();
  if (f.is_improper()) {
    out.subcategory = "every quasi-coherent sheaf on " + s.to_string();
  } else if (f == LocalFilter::trivial(s)) {
    out.subcategory = "the zero subcategory";
  } else {
    std::string d = "sheaves M with ";
    bool first = true;
    auto add = [&](const std::string& c) {
      d += (first ? "" : "; ") + c;
      first = false;
    };
    if (s.is_line_like()) {
      for (const auto& [x, v] : f.exponents().exceptions()) add(stalk_condition(x, v));
      add(describe_default(f.exponents().fallback()));
      add("M vanishes at the generic point");
    } else {
      const auto& k = f.killed();
      for (const auto& [x, v] : f.exponents().exceptions()) add(stalk_condition(x, v));
      if (k.is_cofinite()) {
        for (auto c : k.listed()) add("M = 0 on " + SpecPoint::component(c).to_string());
        add("no condition on the other components");
      } else {
        for (auto c : k.listed()) add("no condition on " + SpecPoint::component(c).to_string());
        add("M = 0 at every other point");
      }
    }
    out.subcategory = d;
  }
  out.attachments.push_back("prelocalizing: the subcategory of sheaves M with Ann(M) in the filter");
  if (rep.support)
    out.attachments.push_back("localizing: the sheaves supported in " + rep.support->to_string());
  if (rep.subscheme)
    out.attachments.push_back("closed: modules over the closed subscheme cut out by " + rep.subscheme->ideal.to_string() +
                              ", supported on " + rep.subscheme->support.to_string());
  if (rep.clopen)
    out.attachments.push_back("bilocalizing: sheaves on the clopen set " + rep.clopen->clopen.to_string() +
                              ", complement ideal " + rep.clopen->complement.to_string());
  if (rep.prime) out.attachments.push_back("prime: the sheaves M with M_x = 0 at x = " + rep.prime->to_string());
  return out;
}

}  // namespace qfilt

#include "qfilt/gluing.hpp"

#include <set>

#include "qfilt/error.hpp"

namespace qfilt {

namespace {

template <class T>
const T& chart_entry(const Scheme& scheme, const ChartFamily<T>& data, std::int64_t i) {
  auto it = data.charts.find(i);
  if (it != data.charts.end()) {
    if (!scheme.is_integer_family()) require_same_scheme(it->second.scheme(), scheme.chart(i));
    return it->second;
  }
  if (data.rest) return *data.rest;
  throw Error("missing data for chart " + std::to_string(i) + " of " + scheme.to_string());
}

/// A closed point of a line not in `used` and distinct from the origin.
SpecPoint fresh_point(const Scheme& scheme, const std::set<SpecPoint>& used) {
  const BaseField& k = scheme.field();
  const SpecPoint origin = scheme.origin();
  if (k.is_symbolic()) {
    for (int i = 0;; ++i) {
      SpecPoint x = SpecPoint::label("w" + std::to_string(i));
      if (!used.count(x) && !(x == origin)) return x;
    }
  }
  const unsigned p = k.characteristic();
  for (int d = 1;; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const PrimePoly f = PrimePoly::monic_from_index(p, d, idx);
      if (!is_irreducible(f)) continue;
      SpecPoint x = SpecPoint::closed(f);
      if (!used.count(x) && !(x == origin)) return x;
    }
  }
}

bool on_overlap(const Scheme& p1, const SpecPoint& x) {
  return x.kind() == SpecPoint::Kind::Closed && !(x == p1.origin());
}

template <class T>
void require_known_charts(const Scheme& scheme, const ChartFamily<T>& data) {
  if (scheme.is_integer_family()) return;
  for (const auto& [i, _] : data.charts)
    if (i < 0 || static_cast<std::size_t>(i) >= *scheme.chart_count())
      throw Error("unknown chart " + std::to_string(i) + " of " + scheme.to_string());
}

}  // namespace

IdealSheaf glue_ideals(const Scheme& scheme, const ChartFamily<IdealSheaf>& data) {
  require_known_charts(scheme, data);
  switch (scheme.kind()) {
    case Scheme::Kind::ProjLine: {
      const IdealSheaf& a = chart_entry(scheme, data, 0);
      const IdealSheaf& b = chart_entry(scheme, data, 1);
      if (a.is_zero() != b.is_zero())
        throw Error("overlap mismatch at point gen: " + a.order_at(SpecPoint::generic()).to_string() + " vs " +
                    b.order_at(SpecPoint::generic()).to_string());
      if (a.is_zero()) return IdealSheaf::zero(scheme);
      std::set<SpecPoint> keys;
      for (const auto* src : {&a, &b})
        for (const auto& [x, _] : src->orders()) keys.insert(x);
      for (const auto& x : keys)
        if (on_overlap(scheme, x) && a.order_at(x) != b.order_at(x))
          throw Error("overlap mismatch at point " + x.to_string() + ": " + a.order_at(x).to_string() + " vs " +
                      b.order_at(x).to_string());
      std::map<SpecPoint, Level> orders = a.orders();
      orders[SpecPoint::infinity()] = b.order_at(SpecPoint::infinity());
      return IdealSheaf::from_orders(scheme, orders);
    }
    case Scheme::Kind::DisjointUnion: {
      ComponentSet zero;
      if (scheme.is_integer_family()) {
        if (!data.rest) throw Error("the integer-indexed union needs data for unlisted charts");
        std::set<std::int64_t> listed;
        for (const auto& [i, v] : data.charts)
          if (v.is_zero() != data.rest->is_zero()) listed.insert(i);
        zero = data.rest->is_zero() ? ComponentSet::cofinite(std::move(listed)) : ComponentSet::finite(std::move(listed));
      } else {
        for (std::size_t i = 0; i < *scheme.component_count(); ++i)
          if (chart_entry(scheme, data, static_cast<std::int64_t>(i)).is_zero()) zero.insert(static_cast<std::int64_t>(i));
      }
      return IdealSheaf::from_orders(scheme, {}, zero);
    }
    default: {
      const IdealSheaf& a = chart_entry(scheme, data, 0);
      require_same_scheme(a.scheme(), scheme);
      return a;
    }
  }
}

LocalFilter glue_filters(const Scheme& scheme, const ChartFamily<LocalFilter>& data) {
  require_known_charts(scheme, data);
  switch (scheme.kind()) {
    case Scheme::Kind::ProjLine: {
      const LocalFilter& a = chart_entry(scheme, data, 0);
      const LocalFilter& b = chart_entry(scheme, data, 1);
      if (a.is_improper() != b.is_improper()) throw Error("incompatible at point gen");
      if (a.is_improper()) return LocalFilter::improper(scheme);
      std::set<SpecPoint> keys;
      for (const auto* src : {&a, &b})
        for (const auto& [x, _] : src->exponents().exceptions()) keys.insert(x);
      if (a.exponents().fallback() != b.exponents().fallback())
        throw Error("incompatible at point " + fresh_point(scheme, keys).to_string());
      for (const auto& x : keys)
        if (on_overlap(scheme, x) && a.level_at(x) != b.level_at(x))
          throw Error("incompatible at point " + x.to_string() + ": " + a.level_at(x).to_string() + " vs " +
                      b.level_at(x).to_string());
      auto ex = a.exponents().exceptions();
      ex[SpecPoint::infinity()] = b.level_at(SpecPoint::infinity());
      return LocalFilter::from_exponents(scheme, ExponentFunction(a.exponents().fallback(), std::move(ex)));
    }
    case Scheme::Kind::DisjointUnion: {
      ComponentSet killed;
      if (scheme.is_integer_family()) {
        if (!data.rest) throw Error("the integer-indexed union needs data for unlisted charts");
        std::set<std::int64_t> listed;
        for (const auto& [i, v] : data.charts)
          if (v.is_improper() != data.rest->is_improper()) listed.insert(i);
        killed = data.rest->is_improper() ? ComponentSet::cofinite(std::move(listed))
                                          : ComponentSet::finite(std::move(listed));
      } else {
        for (std::size_t i = 0; i < *scheme.component_count(); ++i)
          if (chart_entry(scheme, data, static_cast<std::int64_t>(i)).is_improper())
            killed.insert(static_cast<std::int64_t>(i));
      }
      return LocalFilter::from_exponents(scheme, {}, killed);
    }
    default: {
      const LocalFilter& a = chart_entry(scheme, data, 0);
      require_same_scheme(a.scheme(), scheme);
      return a;
    }
  }
}

namespace {

Scheme generic_du_chart() { return Scheme::disjoint_union({BaseField::symbolic()}); }

}  // namespace

ChartFamily<IdealSheaf> restrict_all(const IdealSheaf& ideal) {
  const Scheme& s = ideal.scheme();
  ChartFamily<IdealSheaf> out;
  if (s.is_integer_family()) {
    const ComponentSet& z = ideal.zero_components();
    for (auto i : z.listed()) out.charts.emplace(i, restrict(ideal, i));
    out.rest = z.is_cofinite() ? IdealSheaf::zero(generic_du_chart()) : IdealSheaf::unit(generic_du_chart());
    return out;
  }
  for (std::size_t i = 0; i < *s.chart_count(); ++i)
    out.charts.emplace(static_cast<std::int64_t>(i), restrict(ideal, static_cast<std::int64_t>(i)));
  return out;
}

ChartFamily<LocalFilter> restrict_all(const LocalFilter& f) {
  const Scheme& s = f.scheme();
  ChartFamily<LocalFilter> out;
  if (s.is_integer_family()) {
    if (f.is_improper()) {
      out.rest = LocalFilter::improper(generic_du_chart());
      return out;
    }
    const ComponentSet& k = f.killed();
    for (auto i : k.listed()) out.charts.emplace(i, restrict(f, i));
    out.rest = k.is_cofinite() ? LocalFilter::improper(generic_du_chart()) : LocalFilter::trivial(generic_du_chart());
    return out;
  }
  for (std::size_t i = 0; i < *s.chart_count(); ++i)
    out.charts.emplace(static_cast<std::int64_t>(i), restrict(f, static_cast<std::int64_t>(i)));
  return out;
}

std::pair<bool, LocalFilter> is_local(const FilterBase& base) {
  if (!base.cofinite_family) return {true, generate(base)};
  LocalFilter closure = generate(base);
  // Ideals vanishing on finitely many components never include 0 on infinitely many.
  return {!base.scheme.is_integer_family(), closure};
}

}  // namespace qfilt

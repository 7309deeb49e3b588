#include "qfilt/filter.hpp"

#include <algorithm>

#include "qfilt/error.hpp"

namespace qfilt {

namespace {

Level clamp_to(const StalkRing& ring, Level level) {
  switch (ring.kind) {
    case StalkRing::Kind::DVR: return level;
    case StalkRing::Kind::Artinian: return level.clamped(ring.length);
    case StalkRing::Kind::Field: return level.clamped(1);
  }
  return level;
}

std::string list_components(const ComponentSet& s) {
  std::string out = s.is_cofinite() ? "all but {" : "{";
  bool first = true;
  for (auto c : s.listed()) {
    out += (first ? "" : ",") + SpecPoint::component(c).to_string();
    first = false;
  }
  return out + "}";
}

}  // namespace

StalkFilter::StalkFilter(StalkRing ring, Level level) : ring_(ring), level_(clamp_to(ring, level)) {}

StalkFilter::Kind StalkFilter::kind() const {
  if (level_.is_top()) return Kind::Everything;
  if (level_.is_infinite()) return Kind::AllPowers;
  if (ring_.kind == StalkRing::Kind::Field) return Kind::FullOnly;
  return Kind::UpToPower;
}

std::string StalkFilter::to_string() const {
  switch (kind()) {
    case Kind::Everything: return "Everything";
    case Kind::AllPowers: return "AllPowers";
    case Kind::FullOnly: return "FullOnly";
    case Kind::UpToPower: return "UpToPower(" + level_.to_string() + ")";
  }
  return {};
}

StalkFilter meet(const StalkFilter& a, const StalkFilter& b) {
  return StalkFilter(a.ring_, std::min(a.level_, b.level_));
}
StalkFilter join(const StalkFilter& a, const StalkFilter& b) {
  return StalkFilter(a.ring_, std::max(a.level_, b.level_));
}
StalkFilter product(const StalkFilter& a, const StalkFilter& b) { return StalkFilter(a.ring_, a.level_ + b.level_); }

// ---------------------------------------------------------------------------

ExponentFunction::ExponentFunction(Level fallback, std::map<SpecPoint, Level> exceptions)
    : default_(fallback), exceptions_(std::move(exceptions)) {
  if (default_.is_top()) throw Error("exponent values range over 0, 1, ..., inf");
  for (const auto& [x, v] : exceptions_) {
    if (v.is_top()) throw Error("exponent values range over 0, 1, ..., inf");
    if (x.is_generic()) throw Error("exponents live on closed points, not gen");
  }
  std::erase_if(exceptions_, [&](const auto& kv) { return kv.second == default_; });
}

Level ExponentFunction::operator()(const SpecPoint& x) const {
  auto it = exceptions_.find(x);
  return it == exceptions_.end() ? default_ : it->second;
}

// ---------------------------------------------------------------------------

LocalFilter LocalFilter::improper(Scheme scheme) { return LocalFilter(std::move(scheme), true, {}, {}); }

LocalFilter LocalFilter::trivial(Scheme scheme) { return LocalFilter(std::move(scheme), false, {}, {}); }

LocalFilter LocalFilter::from_exponents(Scheme scheme, ExponentFunction r, ComponentSet killed) {
  for (const auto& [x, _] : r.exceptions()) scheme.require(x);
  killed = scheme.normalize(killed);
  if (scheme.is_line_like()) {
    if (!killed.is_empty()) return improper(std::move(scheme));
    return LocalFilter(std::move(scheme), false, std::move(r), {});
  }
  std::map<SpecPoint, Level> kept;
  if (scheme.kind() == Scheme::Kind::AffineQuotient) {
    for (const auto& x : scheme.finite_points()) {
      const Level v = r(x);
      if (v >= Level::finite(scheme.stalk(x).length))
        killed.insert(scheme.component_of(x));
      else if (v != Level::finite(0) && !killed.contains(scheme.component_of(x)))
        kept.emplace(x, v);
    }
  } else {
    // Every component is a field: any positive exponent admits the zero stalk.
    ComponentSet positive;
    for (const auto& [x, v] : r.exceptions())
      if (v != Level::finite(0)) positive.insert(x.component_index());
    if (r.fallback() != Level::finite(0)) {
      std::set<std::int64_t> zeros;
      for (const auto& [x, v] : r.exceptions())
        if (v == Level::finite(0)) zeros.insert(x.component_index());
      positive = ComponentSet::cofinite(std::move(zeros));
    }
    killed = scheme.normalize(killed | positive);
  }
  if (killed == scheme.all_components()) return improper(std::move(scheme));
  return LocalFilter(std::move(scheme), false, ExponentFunction(Level::finite(0), std::move(kept)), std::move(killed));
}

LocalFilter LocalFilter::principal(const IdealSheaf& ideal) {
  return from_exponents(ideal.scheme(), ExponentFunction(Level::finite(0), ideal.orders()), ideal.zero_components());
}

Level LocalFilter::level_at(const SpecPoint& x) const {
  scheme_.require(x);
  if (improper_ || killed_.contains(scheme_.component_of(x))) return Level::top();
  if (x.is_generic()) return Level::finite(0);
  return r_(x);
}

std::string LocalFilter::to_string() const {
  if (improper_) return "improper";
  std::string out;
  if (scheme_.is_line_like()) {
    out = "r = " + r_.fallback().to_string();
    if (!r_.exceptions().empty()) {
      out += " except ";
      bool first = true;
      for (const auto& [x, v] : r_.exceptions()) {
        out += (first ? "" : ", ") + x.to_string() + "=" + v.to_string();
        first = false;
      }
    }
    return out;
  }
  for (const auto& [x, v] : r_.exceptions()) {
    if (!out.empty()) out += ", ";
    out += x.to_string() + "=" + v.to_string();
  }
  if (out.empty()) out = "r = 0";
  if (!killed_.is_empty()) out += "; killed " + list_components(killed_);
  return out;
}

// ---------------------------------------------------------------------------

bool contains(const LocalFilter& f, const IdealSheaf& ideal) {
  require_same_scheme(f.scheme(), ideal.scheme());
  if (f.is_improper()) return true;
  if (!subset(ideal.zero_components(), f.killed())) return false;
  return std::all_of(ideal.orders().begin(), ideal.orders().end(),
                     [&](const auto& kv) { return kv.second <= f.level_at(kv.first); });
}

LocalFilter generate(const Scheme& scheme, const std::vector<IdealSheaf>& generators) {
  LocalFilter out = LocalFilter::trivial(scheme);
  for (const auto& g : generators) {
    require_same_scheme(scheme, g.scheme());
    out = join(out, LocalFilter::principal(g));
  }
  return out;
}

LocalFilter generate(const FilterBase& base) {
  if (!base.cofinite_family) return generate(base.scheme, base.generators);
  if (base.scheme.kind() != Scheme::Kind::DisjointUnion)
    throw Error("unsupported symbolic family: cofinite-family needs a disjoint union, not " + base.scheme.to_string());
  // Locally every chart sees the zero ideal of its field.
  return LocalFilter::improper(base.scheme);
}

namespace {

/// Pointwise combination of stalk levels, killed components included.
template <class Op>
LocalFilter pointwise(const LocalFilter& a, const LocalFilter& b, ComponentSet killed, Op op) {
  const Scheme& s = a.scheme();
  if (s.kind() != Scheme::Kind::AffineQuotient)
    return LocalFilter::from_exponents(s, combine(a.exponents(), b.exponents(), op), std::move(killed));
  std::map<SpecPoint, Level> ex;
  ComponentSet dead;
  for (const auto& x : s.finite_points()) {
    const Level v = op(a.level_at(x), b.level_at(x));
    if (v.is_top())
      dead.insert(s.component_of(x));
    else
      ex.emplace(x, v);
  }
  return LocalFilter::from_exponents(s, ExponentFunction(Level::finite(0), std::move(ex)), dead);
}

}  // namespace

LocalFilter meet(const LocalFilter& a, const LocalFilter& b) {
  require_same_scheme(a.scheme(), b.scheme());
  if (a.is_improper()) return b;
  if (b.is_improper()) return a;
  return pointwise(a, b, a.killed() & b.killed(), [](Level x, Level y) { return std::min(x, y); });
}

LocalFilter join(const LocalFilter& a, const LocalFilter& b) {
  require_same_scheme(a.scheme(), b.scheme());
  if (a.is_improper()) return a;
  if (b.is_improper()) return b;
  return pointwise(a, b, a.killed() | b.killed(), [](Level x, Level y) { return std::max(x, y); });
}

LocalFilter product(const LocalFilter& a, const LocalFilter& b) {
  require_same_scheme(a.scheme(), b.scheme());
  if (a.is_improper()) return a;
  if (b.is_improper()) return b;
  return pointwise(a, b, a.killed() | b.killed(), [](Level x, Level y) { return x + y; });
}

bool is_subfilter(const LocalFilter& a, const LocalFilter& b) { return join(a, b) == b; }

LocalFilter restrict(const LocalFilter& f, std::int64_t chart) {
  const Scheme& s = f.scheme();
  const Scheme target = s.chart(chart);
  if (s.kind() == Scheme::Kind::DisjointUnion) {
    if (f.is_improper() || f.killed().contains(chart)) return LocalFilter::improper(target);
    return LocalFilter::trivial(target);
  }
  if (f.is_improper()) return LocalFilter::improper(target);
  std::map<SpecPoint, Level> ex;
  for (const auto& [x, v] : f.exponents().exceptions())
    if (s.chart_contains(chart, x)) ex.emplace(x, v);
  return LocalFilter::from_exponents(target, ExponentFunction(f.exponents().fallback(), std::move(ex)), f.killed());
}

StalkFilter localize(const LocalFilter& f, const SpecPoint& x) {
  return StalkFilter(f.scheme().stalk(x), f.level_at(x));
}

std::optional<IdealSheaf> is_principal(const LocalFilter& f) {
  if (f.is_improper()) return IdealSheaf::zero(f.scheme());
  const ExponentFunction& r = f.exponents();
  if (r.fallback() != Level::finite(0)) return std::nullopt;
  for (const auto& [_, v] : r.exceptions())
    if (!v.is_finite()) return std::nullopt;
  return IdealSheaf::from_orders(f.scheme(), r.exceptions(), f.killed());
}

bool is_product_closed(const LocalFilter& f) { return product(f, f) == f; }

std::optional<SpecPoint> is_prime(const LocalFilter& f) {
  if (f.is_improper()) return std::nullopt;
  const Scheme& s = f.scheme();
  const ExponentFunction& r = f.exponents();
  if (s.is_line_like()) {
    if (r.fallback() != Level::infinity()) return std::nullopt;
    if (r.exceptions().empty()) return SpecPoint::generic();
    if (r.exceptions().size() == 1 && r.exceptions().begin()->second == Level::finite(0))
      return r.exceptions().begin()->first;
    return std::nullopt;
  }
  if (!r.exceptions().empty()) return std::nullopt;
  const ComponentSet alive = s.all_components() - f.killed();
  if (alive.is_cofinite() || alive.listed().size() != 1) return std::nullopt;
  return s.component_point(*alive.listed().begin());
}

}  // namespace qfilt

#include "qfilt/spectrum.hpp"

#include <algorithm>

#include "qfilt/error.hpp"

namespace qfilt {

bool specializes(const Scheme& scheme, const SpecPoint& x, const SpecPoint& y) {
  scheme.require(x);
  scheme.require(y);
  if (x == y) return true;
  return x.is_generic() && scheme.component_of(x) == scheme.component_of(y);
}

bool SpecPoset::leq(const SpecPoint& x, const SpecPoint& y) const { return specializes(scheme, x, y); }

SpecPoset spec(const Scheme& scheme, unsigned degree_bound, const std::vector<std::string>& labels) {
  SpecPoset out{scheme, {}, {}};
  if (!scheme.is_line_like()) {
    out.points = scheme.finite_points();
    if (scheme.is_integer_family()) {
      out.family = "comp:i for every integer i";
      for (const auto& l : labels) out.points.push_back(scheme.parse_point(l));
    }
    return out;
  }
  if (degree_bound < 1) throw Error("degree bound must be >= 1");
  const BaseField& k = scheme.field();
  if (k.is_symbolic()) {
    std::set<SpecPoint> pts;
    for (const auto& l : labels) pts.insert(SpecPoint::label(l));
    out.points.assign(pts.begin(), pts.end());
    out.family = "pt:<label> for every label of " + k.to_string();
  } else {
    const unsigned p = k.characteristic();
    for (unsigned d = 1; d <= degree_bound; ++d) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        const PrimePoly f = PrimePoly::monic_from_index(p, static_cast<int>(d), idx);
        if (is_irreducible(f)) out.points.push_back(SpecPoint::closed(f));
      }
    }
    out.family = "monic irreducibles over " + k.to_string() + " (listed up to degree " +
                 std::to_string(degree_bound) + ")";
  }
  std::erase_if(out.points, [&](const SpecPoint& x) { return !scheme.contains(x); });
  if (scheme.contains(SpecPoint::infinity())) out.points.push_back(SpecPoint::infinity());
  out.points.push_back(SpecPoint::generic());
  return out;
}

SpecPoset spec(const QuotientRing& ring) { return spec(Scheme::affine_quotient(ring), 1); }

AffineIdeal prime_ideal(const Scheme& scheme, const SpecPoint& x) {
  scheme.require(x);
  const BaseField& k = scheme.field();
  if (x.is_generic()) return AffineIdeal::zero(k);
  return AffineIdeal::principal(x.generator(k));
}

bool is_specialization_closed(const Scheme& scheme, const PointSubset& s) {
  if (!scheme.is_line_like()) return true;
  if (s.whole.contains(0)) return true;
  if (!s.points.contains(SpecPoint::generic())) return true;
  // The generic point's closure is everything, so no closed point may be missing.
  if (!s.points.is_cofinite()) return false;
  return std::all_of(s.points.listed().begin(), s.points.listed().end(),
                     [&](const SpecPoint& x) { return !scheme.contains(x); });
}

SpecClosedSet SpecClosedSet::all(Scheme scheme) {
  ComponentSet whole = scheme.all_components();
  return SpecClosedSet(std::move(scheme), std::move(whole), {});
}

SpecClosedSet SpecClosedSet::make(Scheme scheme, ComponentSet whole, PointSet closed) {
  whole = scheme.normalize(whole);
  for (const auto& x : closed.listed()) {
    scheme.require(x);
    if (x.is_generic()) throw Error("generic point listed as a closed point");
  }
  if (!scheme.is_line_like()) {
    // Every point is its own component.
    ComponentSet comps;
    for (const auto& x : closed.listed()) comps.insert(scheme.component_of(x));
    whole = scheme.normalize(whole | (closed.is_cofinite() ? comps.complement() : comps));
    return SpecClosedSet(std::move(scheme), std::move(whole), {});
  }
  if (whole.contains(0)) return SpecClosedSet(std::move(scheme), std::move(whole), {});
  return SpecClosedSet(std::move(scheme), std::move(whole), std::move(closed));
}

SpecClosedSet SpecClosedSet::from_subset(Scheme scheme, const PointSubset& s) {
  if (!is_specialization_closed(scheme, s)) throw Error("subset is not closed under specialization");
  if (scheme.is_line_like() && s.points.contains(SpecPoint::generic())) return all(std::move(scheme));
  PointSet closed = s.points;
  closed.erase(SpecPoint::generic());
  return make(std::move(scheme), s.whole, std::move(closed));
}

bool SpecClosedSet::contains(const SpecPoint& x) const {
  if (whole_.contains(scheme_.component_of(x))) return true;
  if (x.is_generic()) return false;
  return closed_.contains(x);
}

SpecClosedSet::Shape SpecClosedSet::shape() const {
  if (is_empty()) return Shape::Empty;
  if (is_all()) return Shape::All;
  if (closed_.is_empty()) return Shape::WholeComponents;
  if (!whole_.is_empty()) return Shape::Mixed;
  return closed_.is_cofinite() ? Shape::CofiniteClosed : Shape::FiniteClosed;
}

std::string SpecClosedSet::to_string() const {
  switch (shape()) {
    case Shape::Empty: return "empty";
    case Shape::All: return "all";
    default: break;
  }
  std::string out;
  if (!whole_.is_empty()) {
    out += whole_.is_cofinite() ? "components all but {" : "components {";
    bool first = true;
    for (auto c : whole_.listed()) {
      out += (first ? "" : ",") + SpecPoint::component(c).to_string();
      first = false;
    }
    out += "}";
  }
  if (!closed_.is_empty()) {
    if (!out.empty()) out += " + ";
    if (closed_.is_all()) return out + "all closed points";
    out += closed_.is_cofinite() ? "closed points all but {" : "{";
    bool first = true;
    for (const auto& x : closed_.listed()) {
      out += (first ? "" : ",") + x.to_string();
      first = false;
    }
    out += "}";
  }
  return out;
}

SpecClosedSet operator|(const SpecClosedSet& a, const SpecClosedSet& b) {
  require_same_scheme(a.scheme(), b.scheme());
  return SpecClosedSet::make(a.scheme(), a.whole_components() | b.whole_components(),
                             a.closed_points() | b.closed_points());
}

// ---------------------------------------------------------------------------

TorsionSheafData::TorsionSheafData(Scheme scheme, std::vector<Divisor> divisors, ComponentSet free)
    : scheme_(std::move(scheme)), free_(scheme_.normalize(free)) {
  for (auto& [x, e] : divisors) {
    scheme_.require(x);
    if (x.is_generic()) throw Error("elementary divisors live at closed points, not " + x.to_string());
    if (e == 0) continue;
    const StalkRing st = scheme_.stalk(x);
    if (st.kind == StalkRing::Kind::Field) {
      free_.insert(scheme_.component_of(x));
      continue;
    }
    if (st.kind == StalkRing::Kind::Artinian && e > st.length)
      throw Error("exponent " + std::to_string(e) + " at " + x.to_string() + " exceeds the stalk length " +
                  std::to_string(st.length));
    divisors_.emplace_back(x, e);
  }
  if (scheme_.kind() == Scheme::Kind::AffineQuotient) {
    // A free summand of k[x]/(f) is the sum of its full-length local pieces.
    for (auto c : free_.listed()) {
      const SpecPoint x = scheme_.component_point(c);
      divisors_.emplace_back(x, scheme_.stalk(x).length);
    }
    free_ = {};
  }
  std::sort(divisors_.begin(), divisors_.end());
}

unsigned TorsionSheafData::torsion_length() const {
  unsigned n = 0;
  for (const auto& [x, e] : divisors_) {
    const int deg = x.has_poly() ? x.poly().degree() : 1;
    n += e * static_cast<unsigned>(deg);
  }
  return n;
}

IdealSheaf TorsionSheafData::annihilator() const {
  std::map<SpecPoint, Level> orders;
  for (const auto& [x, e] : divisors_) orders[x] = std::max(orders[x], Level::finite(e));
  return IdealSheaf::from_orders(scheme_, orders, free_);
}

std::string TorsionSheafData::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& [x, e] : divisors_) {
    if (!out.empty()) out += " + ";
    out += "O/" + x.to_string() + "^" + std::to_string(e);
  }
  if (!free_.is_empty()) {
    if (!out.empty()) out += " + ";
    out += "free";
    if (!scheme_.is_line_like()) {
      out += free_.is_cofinite() ? "(all but " : "(";
      bool first = true;
      for (auto c : free_.listed()) {
        out += (first ? "" : ",") + SpecPoint::component(c).to_string();
        first = false;
      }
      out += ")";
    }
  }
  return out;
}

TorsionSheafData direct_sum(const TorsionSheafData& a, const TorsionSheafData& b) {
  require_same_scheme(a.scheme_, b.scheme_);
  auto divs = a.divisors_;
  divs.insert(divs.end(), b.divisors_.begin(), b.divisors_.end());
  return TorsionSheafData(a.scheme_, std::move(divs), a.free_ | b.free_);
}

SuppAss supp_ass(const TorsionSheafData& m) {
  const Scheme& s = m.scheme();
  PointSet closed;
  AssociatedPoints ass;
  for (const auto& [x, _] : m.divisors()) {
    closed.insert(x);
    ass.points.insert(x);
  }
  if (s.is_line_like()) {
    if (m.free_components().contains(0)) ass.points.insert(SpecPoint::generic());
  } else {
    ass.components = m.free_components();
  }
  return {SpecClosedSet::make(s, m.free_components(), std::move(closed)), std::move(ass)};
}

}  // namespace qfilt

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qfilt/cofinite_set.hpp"
#include "qfilt/scheme.hpp"

namespace qfilt {

using PointSet = CofiniteSet<SpecPoint>;

/// Points of a scheme ordered by specialization: x <= y iff y lies in the
/// closure of x. Infinite families are listed up to a bound and described by
/// `family`.
struct SpecPoset {
  Scheme scheme;
  std::vector<SpecPoint> points;
  /// Nonempty when `points` is a finite window onto an infinite family.
  std::string family;

  bool leq(const SpecPoint& x, const SpecPoint& y) const;
};

/// y ∈ closure{x}.
bool specializes(const Scheme& scheme, const SpecPoint& x, const SpecPoint& y);

/// Lists closed points (monic irreducibles up to `degree_bound` over F_p, the
/// given labels over a symbolic field) followed by generic points.
SpecPoset spec(const Scheme& scheme, unsigned degree_bound, const std::vector<std::string>& labels = {});
SpecPoset spec(const QuotientRing& ring);

/// The prime ideal of a point of a line or quotient, as an ideal of k[x].
AffineIdeal prime_ideal(const Scheme& scheme, const SpecPoint& x);

/// A raw subset of points: some whole components plus a finite or cofinite
/// set of individual points (generic points allowed).
struct PointSubset {
  ComponentSet whole;
  PointSet points;
};

/// True iff the subset contains the closure of each of its points.
bool is_specialization_closed(const Scheme& scheme, const PointSubset& s);

/// A specialization-closed subset: whole components plus a finite or cofinite
/// set of closed points on the remaining components.
class SpecClosedSet {
 public:
  enum class Shape { Empty, All, FiniteClosed, CofiniteClosed, WholeComponents, Mixed };

  static SpecClosedSet empty(Scheme scheme) { return make(std::move(scheme), {}, {}); }
  static SpecClosedSet all(Scheme scheme);
  static SpecClosedSet make(Scheme scheme, ComponentSet whole, PointSet closed);
  /// Throws if `s` is not specialization-closed.
  static SpecClosedSet from_subset(Scheme scheme, const PointSubset& s);

  const Scheme& scheme() const noexcept { return scheme_; }
  const ComponentSet& whole_components() const noexcept { return whole_; }
  const PointSet& closed_points() const noexcept { return closed_; }

  bool contains(const SpecPoint& x) const;
  bool is_empty() const { return whole_.is_empty() && closed_.is_empty(); }
  bool is_all() const { return whole_ == scheme_.all_components(); }
  Shape shape() const;

  std::string to_string() const;

  friend bool operator==(const SpecClosedSet&, const SpecClosedSet&) = default;

 private:
  SpecClosedSet(Scheme scheme, ComponentSet whole, PointSet closed)
      : scheme_(std::move(scheme)), whole_(std::move(whole)), closed_(std::move(closed)) {}

  Scheme scheme_;
  ComponentSet whole_;
  PointSet closed_;
};

SpecClosedSet operator|(const SpecClosedSet& a, const SpecClosedSet& b);

/// A finitely generated sheaf given by elementary divisors (point, exponent),
/// i.e. ⊕ O_x/m_x^e, plus the components carrying a summand with zero
/// annihilator. On quotients the latter are folded into full-length divisors;
/// on disjoint unions every nonzero summand is of the second kind.
class TorsionSheafData {
 public:
  using Divisor = std::pair<SpecPoint, unsigned>;

  TorsionSheafData(Scheme scheme, std::vector<Divisor> divisors, ComponentSet free = {});
  static TorsionSheafData zero(Scheme scheme) { return TorsionSheafData(std::move(scheme), {}); }

  const Scheme& scheme() const noexcept { return scheme_; }
  /// Sorted multiset.
  const std::vector<Divisor>& divisors() const noexcept { return divisors_; }
  const ComponentSet& free_components() const noexcept { return free_; }
  bool is_zero() const { return divisors_.empty() && free_.is_empty(); }
  /// Total length of the torsion part (free parts have infinite length).
  unsigned torsion_length() const;

  /// Ann(M): order max{e} at each divisor point, zero on free components.
  IdealSheaf annihilator() const;

  std::string to_string() const;

  friend TorsionSheafData direct_sum(const TorsionSheafData& a, const TorsionSheafData& b);
  friend bool operator==(const TorsionSheafData&, const TorsionSheafData&) = default;

 private:
  Scheme scheme_;
  std::vector<Divisor> divisors_;
  ComponentSet free_;
};

/// Associated points: explicit points plus the single points of listed
/// components (disjoint unions, where that family may be infinite).
struct AssociatedPoints {
  std::set<SpecPoint> points;
  ComponentSet components;

  bool contains(const SpecPoint& x) const {
    return points.count(x) > 0 || (x.kind() == SpecPoint::Kind::Component && components.contains(x.component_index()));
  }
  friend bool operator==(const AssociatedPoints&, const AssociatedPoints&) = default;
};

struct SuppAss {
  SpecClosedSet supp;
  AssociatedPoints ass;
};

SuppAss supp_ass(const TorsionSheafData& m);

}  // namespace qfilt

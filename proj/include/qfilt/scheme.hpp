#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfilt/cofinite_set.hpp"
#include "qfilt/field.hpp"
#include "qfilt/ideal.hpp"
#include "qfilt/level.hpp"
#include "qfilt/limits.hpp"
#include "qfilt/point.hpp"

namespace qfilt {

using ComponentSet = CofiniteSet<std::int64_t>;

/// One of the supported desk-scale schemes:
///
///  - AffineLine:     Spec k[x]; one component, DVR stalks at closed points.
///  - AffineQuotient: Spec k[x]/(f); one point per prime factor p of f, each its
///                    own component with an Artinian stalk of length mult_p(f).
///  - ProjLine:       P^1 = (closed points of k[x]) ∪ {inf}, glued from two charts.
///  - ProjChart:      chart 0 (P^1 minus inf) or chart 1 (P^1 minus the origin),
///                    with intrinsic point names.
///  - DisjointUnion:  a coproduct of spectra of fields, explicit (at most
///                    `max_components`) or indexed by all integers.
///
/// Immutable; copies share state.
class Scheme {
 public:
  enum class Kind { AffineLine, AffineQuotient, ProjLine, ProjChart, DisjointUnion };

  static Scheme affine_line(BaseField field);
  static Scheme affine_quotient(QuotientRing ring, const Limits& limits = default_limits());
  static Scheme proj_line(BaseField field);
  static Scheme proj_chart(BaseField field, int index);
  static Scheme disjoint_union(std::vector<BaseField> components, const Limits& limits = default_limits());
  /// The coproduct of Spec k_i over all integers i.
  static Scheme integer_disjoint_union();

  Kind kind() const noexcept;
  /// Base field of a line, chart or quotient.
  const BaseField& field() const;
  const QuotientRing& quotient() const;
  int chart_index() const;
  /// Lines, charts, P^1: a single irreducible component with a generic point.
  bool is_line_like() const noexcept;
  bool is_integer_family() const noexcept;
  /// Explicit component fields of a disjoint union.
  const std::vector<BaseField>& component_fields() const;

  /// Every component of the scheme, as a normalized set.
  ComponentSet all_components() const;
  /// Finite universes are expressed as finite sets; out-of-range ids dropped.
  ComponentSet normalize(const ComponentSet& s) const;
  std::optional<std::size_t> component_count() const;

  bool contains(const SpecPoint& x) const;
  /// Throws "point outside scheme".
  void require(const SpecPoint& x) const;
  std::int64_t component_of(const SpecPoint& x) const;
  StalkRing stalk(const SpecPoint& x) const;
  /// Closed points of a quotient (sorted by prime), or the component points of
  /// an explicit disjoint union. Empty for lines and the integer family.
  std::vector<SpecPoint> finite_points() const;
  /// The point of component `i` of a quotient or disjoint union.
  SpecPoint component_point(std::int64_t i) const;
  /// x = 0 on a line: the label "0" or the polynomial x.
  SpecPoint origin() const;
  /// Literal for a point on this scheme.
  SpecPoint parse_point(std::string_view text) const;

  /// Number of canonical affine charts; nullopt for the integer family.
  std::optional<std::size_t> chart_count() const;
  /// Chart `i` as a scheme in its own right.
  Scheme chart(std::int64_t i) const;
  bool chart_contains(std::int64_t i, const SpecPoint& x) const;

  std::string to_string() const;

  friend bool operator==(const Scheme& a, const Scheme& b);

  struct Data;

 private:
  explicit Scheme(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

void require_same_scheme(const Scheme& a, const Scheme& b);

/// A quasi-coherent ideal subsheaf of the structure sheaf, stored intrinsically
/// by its order at each closed point (finitely many nonzero) and the set of
/// components on which it vanishes. Canonical: orders reaching an Artinian
/// stalk's length are folded into vanishing components.
class IdealSheaf {
 public:
  static IdealSheaf unit(Scheme scheme);
  static IdealSheaf zero(Scheme scheme);
  static IdealSheaf from_orders(Scheme scheme, const std::map<SpecPoint, Level>& orders,
                                ComponentSet zero_components = {});
  /// From a coordinate ideal: on a line or chart 0 the ideal of k[x]; on a
  /// quotient the image of an ideal of k[x]; on P^1 the chart-0 ideal with
  /// unit stalk at infinity.
  static IdealSheaf from_affine(Scheme scheme, const AffineIdeal& ideal);

  const Scheme& scheme() const noexcept { return scheme_; }
  const ComponentSet& zero_components() const noexcept { return zero_; }
  /// Finite nonzero orders outside vanishing components.
  const std::map<SpecPoint, Level>& orders() const noexcept { return orders_; }
  /// Order at x: 0 at generic points of non-vanishing components, top where zero.
  Level order_at(const SpecPoint& x) const;

  bool is_unit() const noexcept { return zero_.is_empty() && orders_.empty(); }
  bool is_zero() const;

  /// Coordinate ideal on lines, chart 0 and quotients (preimage in k[x]).
  AffineIdeal to_affine() const;
  /// "0", "1", the coordinate generator, or "pt:a^2*pt:inf*zero(comp:1)".
  std::string to_string() const;

  friend bool operator==(const IdealSheaf&, const IdealSheaf&) = default;

 private:
  IdealSheaf(Scheme scheme, ComponentSet zero, std::map<SpecPoint, Level> orders);

  Scheme scheme_;
  ComponentSet zero_;
  std::map<SpecPoint, Level> orders_;
};

IdealSheaf product(const IdealSheaf& a, const IdealSheaf& b);
IdealSheaf sum(const IdealSheaf& a, const IdealSheaf& b);
IdealSheaf intersection(const IdealSheaf& a, const IdealSheaf& b);
/// a ⊇ b.
bool contains(const IdealSheaf& a, const IdealSheaf& b);
bool is_idempotent(const IdealSheaf& a);
/// Restriction to chart `i`.
IdealSheaf restrict(const IdealSheaf& a, std::int64_t chart);

}  // namespace qfilt

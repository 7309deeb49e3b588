#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfilt/level.hpp"
#include "qfilt/scheme.hpp"

namespace qfilt {

/// A filter of ideals of one stalk. The stalk's ideals form a chain, so the
/// filter is determined by the largest admissible order:
///
///   DVR:      UpToPower(n) = {m^0..m^n}, AllPowers = every m^n, Everything
///   Artinian: UpToPower(n) for n < length, Everything
///   Field:    FullOnly = UpToPower(0), Everything
class StalkFilter {
 public:
  enum class Kind { UpToPower, AllPowers, Everything, FullOnly };

  StalkFilter(StalkRing ring, Level level);

  const StalkRing& ring() const noexcept { return ring_; }
  Level level() const noexcept { return level_; }
  Kind kind() const;
  bool contains(Level order) const { return order <= level_; }

  /// "UpToPower(2)", "AllPowers", "Everything", "FullOnly".
  std::string to_string() const;

  friend StalkFilter meet(const StalkFilter& a, const StalkFilter& b);
  friend StalkFilter join(const StalkFilter& a, const StalkFilter& b);
  friend StalkFilter product(const StalkFilter& a, const StalkFilter& b);
  friend bool operator==(const StalkFilter&, const StalkFilter&) = default;

 private:
  StalkRing ring_;
  Level level_;
};

/// r: closed points -> {0, 1, ..., inf}, equal to `fallback` off a finite set.
class ExponentFunction {
 public:
  ExponentFunction() = default;
  explicit ExponentFunction(Level fallback, std::map<SpecPoint, Level> exceptions = {});

  Level fallback() const noexcept { return default_; }
  const std::map<SpecPoint, Level>& exceptions() const noexcept { return exceptions_; }
  Level operator()(const SpecPoint& x) const;

  template <class Op>
  friend ExponentFunction combine(const ExponentFunction& a, const ExponentFunction& b, Op op) {
    std::map<SpecPoint, Level> ex;
    for (const auto* f : {&a, &b})
      for (const auto& [x, _] : f->exceptions_) ex[x] = op(a(x), b(x));
    return ExponentFunction(op(a.default_, b.default_), std::move(ex));
  }

  friend bool operator==(const ExponentFunction&, const ExponentFunction&) = default;

 private:
  Level default_ = Level::finite(0);
  std::map<SpecPoint, Level> exceptions_;
};

/// A local filter of ideal subsheaves, in canonical form: either Improper
/// (every ideal sheaf, including 0) or an exponent function on closed points
/// together with the set of components on which the filter admits the zero
/// ideal ("killed"). Canonicalization:
///
///  - lines and charts: a killed component makes the filter Improper;
///  - quotients: r(x) >= length kills the component; otherwise default 0;
///  - disjoint unions: r(x) >= 1 kills the component, r is identically 0;
///  - everything killed is Improper.
///
/// Equality of values is equality of filters.
class LocalFilter {
 public:
  static LocalFilter improper(Scheme scheme);
  /// r ≡ 0: the filter {O_X}.
  static LocalFilter trivial(Scheme scheme);
  static LocalFilter from_exponents(Scheme scheme, ExponentFunction r, ComponentSet killed = {});
  /// F(I) = {J : J ⊇ I}.
  static LocalFilter principal(const IdealSheaf& ideal);

  const Scheme& scheme() const noexcept { return scheme_; }
  bool is_improper() const noexcept { return improper_; }
  const ExponentFunction& exponents() const noexcept { return r_; }
  const ComponentSet& killed() const noexcept { return killed_; }

  /// Largest order admitted at x: top where the zero stalk is admitted.
  Level level_at(const SpecPoint& x) const;

  std::string to_string() const;

  friend bool operator==(const LocalFilter&, const LocalFilter&) = default;

 private:
  LocalFilter(Scheme scheme, bool improper, ExponentFunction r, ComponentSet killed)
      : scheme_(std::move(scheme)), improper_(improper), r_(std::move(r)), killed_(std::move(killed)) {}

  Scheme scheme_;
  bool improper_ = false;
  ExponentFunction r_;
  ComponentSet killed_;
};

/// Generators of a filter: a finite list of ideal sheaves, or the family of
/// ideal sheaves vanishing on finitely many components of a disjoint union.
struct FilterBase {
  Scheme scheme;
  std::vector<IdealSheaf> generators;
  bool cofinite_family = false;
};

bool contains(const LocalFilter& f, const IdealSheaf& ideal);
/// The smallest local filter containing the base.
LocalFilter generate(const FilterBase& base);
LocalFilter generate(const Scheme& scheme, const std::vector<IdealSheaf>& generators);
LocalFilter meet(const LocalFilter& a, const LocalFilter& b);
LocalFilter join(const LocalFilter& a, const LocalFilter& b);
LocalFilter product(const LocalFilter& a, const LocalFilter& b);
/// a ⊆ b as sets of ideal sheaves.
bool is_subfilter(const LocalFilter& a, const LocalFilter& b);
LocalFilter restrict(const LocalFilter& f, std::int64_t chart);
StalkFilter localize(const LocalFilter& f, const SpecPoint& x);

/// The minimum ideal when F = F(I).
std::optional<IdealSheaf> is_principal(const LocalFilter& f);
bool is_product_closed(const LocalFilter& f);
/// The point x with F = {I : I_x = O_x}, if any.
std::optional<SpecPoint> is_prime(const LocalFilter& f);

}  // namespace qfilt

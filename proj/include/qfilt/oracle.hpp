#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfilt/filter.hpp"
#include "qfilt/ideal.hpp"
#include "qfilt/limits.hpp"
#include "qfilt/spectrum.hpp"

namespace qfilt::oracle {

/// Subset of a finite ring or module, indexed by element number.
using ElementSet = std::vector<bool>;

/// F_p[x]/(f) as explicit tables. Element i has coefficient digits of i in
/// base p, lowest degree first. Ideals are found by brute force (principal
/// ideals of every element, closed under sums) and sorted by size, the zero
/// ideal first.
class FiniteRingTable {
 public:
  static FiniteRingTable build(const QuotientRing& ring, const Limits& limits = default_limits());

  const QuotientRing& ring() const noexcept { return ring_; }
  unsigned characteristic() const noexcept { return p_; }
  int degree() const noexcept { return d_; }
  unsigned size() const noexcept { return n_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * n_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * n_ + b]; }
  unsigned x() const;
  unsigned element_of(const PrimePoly& f) const;
  PrimePoly poly_of(unsigned a) const;

  std::size_t ideal_count() const noexcept { return ideals_.size(); }
  const ElementSet& ideal(std::size_t i) const { return ideals_[i]; }
  std::size_t zero_ideal() const noexcept { return 0; }
  std::size_t unit_ideal() const noexcept { return ideals_.size() - 1; }
  /// Throws if `s` is not an ideal.
  std::size_t index_of(const ElementSet& s) const;
  /// Ideal i ⊇ ideal j.
  bool ideal_contains(std::size_t i, std::size_t j) const { return contains_[i][j]; }
  std::size_t principal_ideal(unsigned a) const;
  std::size_t ideal_sum(std::size_t i, std::size_t j) const;
  std::size_t ideal_product(std::size_t i, std::size_t j) const;
  std::size_t ideal_intersection(std::size_t i, std::size_t j) const;
  /// a^{-1}L = {b : ab ∈ L}.
  std::size_t colon(unsigned a, std::size_t l) const;
  /// Lowest-degree monic element; the modulus for the zero ideal.
  PrimePoly ideal_generator(std::size_t i) const;
  /// "(x^2)", "(1)", "0".
  std::string ideal_name(std::size_t i) const;

  /// Maximal ideals as lowest-degree monic generators, with the stable length
  /// of the chain (p) ⊋ (p^2) ⊋ ...
  struct Prime {
    PrimePoly generator;
    unsigned length;
  };
  const std::vector<Prime>& primes() const noexcept { return primes_; }

 private:
  FiniteRingTable(QuotientRing ring) : ring_(std::move(ring)) {}
  ElementSet additive_closure(ElementSet s) const;

  QuotientRing ring_;
  unsigned p_ = 2;
  int d_ = 1;
  unsigned n_ = 0;
  std::vector<std::uint16_t> add_, mul_;
  std::vector<ElementSet> ideals_;
  std::vector<std::vector<bool>> contains_;
  std::vector<Prime> primes_;
};

/// A set of ideals of a finite ring, as a bitmask over the ideal list.
struct ExplicitFilter {
  std::uint32_t members = 0;

  bool contains(std::size_t i) const { return (members >> i) & 1U; }
  friend bool operator==(ExplicitFilter, ExplicitFilter) = default;
  friend auto operator<=>(ExplicitFilter, ExplicitFilter) = default;
};

bool is_filter(const FiniteRingTable& r, ExplicitFilter f);
/// Exhaustive subset scan.
std::vector<ExplicitFilter> enumerate_filters(const FiniteRingTable& r, const Limits& limits = default_limits());
bool check_prelocalizing(const FiniteRingTable& r, ExplicitFilter f);

struct ProductTwoWays {
  ExplicitFilter via_inverse;
  ExplicitFilter via_ideals;
  bool equal = false;
};
ProductTwoWays product_two_ways(const FiniteRingTable& r, ExplicitFilter f1, ExplicitFilter f2);
/// F * F ⊆ F under the a^{-1}L product.
bool is_gabriel(const FiniteRingTable& r, ExplicitFilter f);
/// I, J ∈ F ⇒ IJ ∈ F.
bool is_closed_under_products(const FiniteRingTable& r, ExplicitFilter f);
/// The smallest filter containing the given ideals (closure, not lookup).
ExplicitFilter filter_closure(const FiniteRingTable& r, std::uint32_t ideals);
/// The least member if it belongs to F.
std::optional<std::size_t> least_member(const FiniteRingTable& r, ExplicitFilter f);
std::string describe(const FiniteRingTable& r, ExplicitFilter f);

/// Isomorphism type of a finite module: multiplicity of R/(p_i^k) at
/// [i][k-1].
using ModuleType = std::vector<std::vector<unsigned>>;

/// A finite R-module given as an F_p-space with the action of x, elements
/// enumerated like ring elements.
class FiniteModule {
 public:
  /// ⊕ R/(p_i^k) over the listed (prime index, k) pairs.
  static FiniteModule from_type(const FiniteRingTable& r, const std::vector<std::pair<std::size_t, unsigned>>& summands);
  /// R itself, with elements numbered as in the ring table.
  static FiniteModule regular(const FiniteRingTable& r);

  unsigned size() const noexcept { return n_; }
  unsigned add(unsigned u, unsigned v) const;
  /// Action of the ring element a.
  unsigned act(unsigned a, unsigned u) const;

  /// Every submodule, each as an element set.
  std::vector<ElementSet> submodules() const;
  ModuleType type_of(const ElementSet& sub) const;
  ModuleType quotient_type(const ElementSet& sub) const;
  ModuleType type() const;
  /// Ideal index of Ann(u).
  std::size_t element_annihilator(unsigned u) const;
  std::size_t annihilator() const;

 private:
  explicit FiniteModule(const FiniteRingTable& r) : r_(&r) {}
  void finish();
  unsigned scale(unsigned c, unsigned u) const;
  unsigned apply_poly(const PrimePoly& q, unsigned u) const;
  ElementSet closure(ElementSet s) const;
  unsigned count_log(std::size_t count) const;

  const FiniteRingTable* r_;
  unsigned dim_ = 0;
  unsigned n_ = 1;
  std::vector<std::uint32_t> x_action_;
  std::vector<std::vector<std::uint32_t>> pow_maps_;  // [prime][j-1]: p_i(X)^j on elements
};

/// Indecomposable R/(p_i^k).
struct Indecomposable {
  std::size_t prime;
  unsigned exponent;
};

struct Subcategory {
  /// Bit t set when indecomposables[t] belongs.
  std::uint32_t members = 0;
  /// Largest exponent present per prime (membership is downward closed).
  std::vector<unsigned> exponents;
  bool localizing = false;
  bool closed = false;
  bool bilocalizing = false;
  /// {L : R/L belongs}.
  ExplicitFilter filter;
};

struct SubcategoryLattice {
  std::vector<Indecomposable> indecomposables;
  std::vector<Subcategory> subcategories;
  std::size_t modules_checked = 0;
};

/// Prelocalizing subcategories of finite-length modules, decided by explicit
/// submodule enumeration of every module up to `length_bound`.
SubcategoryLattice enumerate_subcategories(const FiniteRingTable& r, unsigned length_bound,
                                           const Limits& limits = default_limits());

/// Every module of composition length <= bound, as summand lists.
std::vector<std::vector<std::pair<std::size_t, unsigned>>> modules_up_to(const FiniteRingTable& r, unsigned bound);

// ---------------------------------------------------------------------------
// Bridge to the symbolic engine over Spec of the same quotient ring.

std::size_t to_oracle_ideal(const FiniteRingTable& r, const IdealSheaf& ideal);
IdealSheaf from_oracle_ideal(const FiniteRingTable& r, const Scheme& scheme, std::size_t i);
ExplicitFilter to_explicit(const FiniteRingTable& r, const LocalFilter& f);
/// Every canonical local filter on Spec of a quotient ring.
std::vector<LocalFilter> enumerate_symbolic_filters(const Scheme& quotient);
/// The module with the given summands as elementary-divisor data.
TorsionSheafData to_sheaf_data(const FiniteRingTable& r, const Scheme& scheme,
                               const std::vector<std::pair<std::size_t, unsigned>>& summands);

struct OracleCheck {
  explicit OracleCheck(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;
};

struct SubcategoryCounts {
  std::size_t prelocalizing = 0, localizing = 0, closed = 0, bilocalizing = 0;
};

struct OracleReport {
  std::string ring;
  std::size_t ideals = 0;
  std::size_t filters = 0;
  SubcategoryCounts subcategories;
  std::vector<OracleCheck> checks;

  bool passed() const;
};

/// Cross-checks the symbolic engine against brute force on one ring.
OracleReport verify(const QuotientRing& ring, unsigned length_bound = 4, const Limits& limits = default_limits());

}  // namespace qfilt::oracle

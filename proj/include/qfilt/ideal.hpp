#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfilt/field.hpp"
#include "qfilt/limits.hpp"
#include "qfilt/poly.hpp"

namespace qfilt {

/// An ideal of k[x]: zero, the unit ideal, or (f) with f monic of degree >= 1.
/// The representation is canonical, so `==` decides ideal equality.
class AffineIdeal {
 public:
  enum class Kind { Zero, Unit, Principal };

  static AffineIdeal zero(BaseField field);
  static AffineIdeal unit(BaseField field);
  /// Normalizes to a monic generator; constants give the unit ideal.
  static AffineIdeal principal(const Poly& generator);

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  bool is_unit() const noexcept { return kind_ == Kind::Unit; }
  const BaseField& field() const noexcept { return field_; }
  /// Monic generator; the unit ideal reports 1. Throws for the zero ideal.
  Poly generator() const;

  /// "0", "1", or the generator.
  std::string to_string() const;

  friend bool operator==(const AffineIdeal&, const AffineIdeal&) = default;

 private:
  AffineIdeal(BaseField field, Kind kind, std::optional<Poly> gen)
      : field_(std::move(field)), kind_(kind), gen_(std::move(gen)) {}

  BaseField field_;
  Kind kind_;
  std::optional<Poly> gen_;
};

AffineIdeal sum(const AffineIdeal& a, const AffineIdeal& b);
AffineIdeal product(const AffineIdeal& a, const AffineIdeal& b);
AffineIdeal intersection(const AffineIdeal& a, const AffineIdeal& b);
/// (a : b) = { r : r b ⊆ a }.
AffineIdeal colon(const AffineIdeal& a, const AffineIdeal& b);
/// a ⊇ b.
bool contains(const AffineIdeal& a, const AffineIdeal& b);

struct IdealOps {
  AffineIdeal sum;
  AffineIdeal product;
  AffineIdeal intersection;
  AffineIdeal colon;
  bool contains;
};

IdealOps ideal_ops(const AffineIdeal& a, const AffineIdeal& b);

/// k[x]/(f) with f monic of degree >= 1. Its ideals are the monic divisors of f.
class QuotientRing {
 public:
  explicit QuotientRing(Poly modulus);

  const Poly& modulus() const noexcept { return modulus_; }
  const BaseField& field() const noexcept { return modulus_.field(); }
  std::string to_string() const;

  /// Canonical divisor for the image of (g) in the quotient: gcd(g, f).
  Poly reduce(const Poly& g) const;
  Poly product(const Poly& d1, const Poly& d2) const;
  Poly intersection(const Poly& d1, const Poly& d2) const { return lcm(d1, d2); }
  Poly sum(const Poly& d1, const Poly& d2) const { return gcd(d1, d2); }
  bool is_zero_ideal(const Poly& d) const { return d == modulus_; }

  friend bool operator==(const QuotientRing&, const QuotientRing&) = default;

 private:
  Poly modulus_;
};

/// All ideals of a quotient ring, given by their divisors, with containment.
struct DivisorLattice {
  std::vector<Poly> divisors;                ///< smallest ideal (the zero ideal) first
  std::vector<std::vector<bool>> contains;   ///< contains[i][j]: ideal i ⊇ ideal j

  std::size_t size() const noexcept { return divisors.size(); }
  std::size_t index_of(const Poly& divisor) const;
};

DivisorLattice divisor_lattice(const QuotientRing& ring, const Limits& limits = default_limits());

/// Stalk of a supported scheme at a point: a DVR at closed points of a curve,
/// an Artinian chain ring of given length at a point of a quotient, or a field.
struct StalkRing {
  enum class Kind { DVR, Artinian, Field };
  Kind kind = Kind::DVR;
  /// Length of the ideal chain m^0 ⊋ ... ⊋ m^length = 0 (Artinian only; 1 for fields).
  unsigned length = 0;

  static StalkRing dvr() { return {Kind::DVR, 0}; }
  static StalkRing artinian(unsigned length) { return {Kind::Artinian, length}; }
  static StalkRing field() { return {Kind::Field, 1}; }

  friend bool operator==(const StalkRing&, const StalkRing&) = default;
};

}  // namespace qfilt

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qfilt/field.hpp"
#include "qfilt/limits.hpp"

namespace qfilt {

/// Dense univariate polynomial over F_p, coefficients stored low to high with
/// no trailing zeros. The zero polynomial has degree -1.
class PrimePoly {
 public:
  using Coeff = std::uint32_t;

  PrimePoly() = default;
  PrimePoly(unsigned p, std::vector<Coeff> coeffs);

  static PrimePoly zero(unsigned p) { return PrimePoly(p, {}); }
  static PrimePoly constant(unsigned p, Coeff c) { return PrimePoly(p, {c}); }
  static PrimePoly x(unsigned p) { return PrimePoly(p, {0, 1}); }
  /// The `index`-th monic polynomial of degree `degree` in canonical order.
  static PrimePoly monic_from_index(unsigned p, int degree, std::uint64_t index);

  unsigned modulus() const noexcept { return p_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  Coeff lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  Coeff coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  std::span<const Coeff> coeffs() const noexcept { return c_; }

  PrimePoly monic() const;
  Coeff eval(Coeff at) const;

  /// "x^3+x+1", "2*x^2+1", "0".
  std::string to_string() const;

  PrimePoly& operator+=(const PrimePoly& o);
  PrimePoly& operator-=(const PrimePoly& o);
  friend PrimePoly operator+(PrimePoly a, const PrimePoly& b) { return a += b; }
  friend PrimePoly operator-(PrimePoly a, const PrimePoly& b) { return a -= b; }
  friend PrimePoly operator*(const PrimePoly& a, const PrimePoly& b);
  PrimePoly scaled(Coeff s) const;
  PrimePoly pow(unsigned e) const;

  friend bool operator==(const PrimePoly&, const PrimePoly&) = default;
  /// Degree first, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const PrimePoly& a, const PrimePoly& b);

 private:
  void trim();

  unsigned p_ = 2;
  std::vector<Coeff> c_;
};

/// (quotient, remainder); throws on division by zero.
std::pair<PrimePoly, PrimePoly> divmod(const PrimePoly& a, const PrimePoly& b);
PrimePoly operator/(const PrimePoly& a, const PrimePoly& b);
PrimePoly operator%(const PrimePoly& a, const PrimePoly& b);
/// Monic gcd; gcd(0, 0) = 0.
PrimePoly gcd(PrimePoly a, PrimePoly b);
/// Monic lcm of nonzero polynomials.
PrimePoly lcm(const PrimePoly& a, const PrimePoly& b);
bool divides(const PrimePoly& d, const PrimePoly& f);
bool is_irreducible(const PrimePoly& f);

std::uint32_t inverse_mod(std::uint32_t a, unsigned p);

/// A split polynomial prod (x - a_i)^{r_i} over a symbolic field, kept as a
/// label-sorted multiset. The empty multiset is the constant 1.
class FactoredPoly {
 public:
  FactoredPoly() = default;
  explicit FactoredPoly(std::map<std::string, unsigned> factors);

  static FactoredPoly linear(std::string label) { return FactoredPoly({{std::move(label), 1}}); }

  const std::map<std::string, unsigned>& factors() const noexcept { return f_; }
  unsigned degree() const noexcept;
  bool is_one() const noexcept { return f_.empty(); }
  unsigned multiplicity(const std::string& label) const;

  /// "(x-a)^2*(x-b)"; the label "0" prints as "x"; the empty product as "1".
  std::string to_string() const;

  friend FactoredPoly operator*(const FactoredPoly& a, const FactoredPoly& b);
  FactoredPoly pow(unsigned e) const;

  friend bool operator==(const FactoredPoly&, const FactoredPoly&) = default;
  friend std::strong_ordering operator<=>(const FactoredPoly& a, const FactoredPoly& b);

 private:
  std::map<std::string, unsigned> f_;
};

FactoredPoly gcd(const FactoredPoly& a, const FactoredPoly& b);
FactoredPoly lcm(const FactoredPoly& a, const FactoredPoly& b);
bool divides(const FactoredPoly& d, const FactoredPoly& f);
/// Exact quotient; throws if `d` does not divide `f`.
FactoredPoly exact_quotient(const FactoredPoly& f, const FactoredPoly& d);

/// A nonzero polynomial over either kind of base field.
class Poly {
 public:
  Poly(PrimePoly p);
  Poly(BaseField field, FactoredPoly f);

  const BaseField& field() const noexcept { return field_; }
  bool is_prime_field() const noexcept { return std::holds_alternative<PrimePoly>(rep_); }
  const PrimePoly& prime() const { return std::get<PrimePoly>(rep_); }
  const FactoredPoly& factored() const { return std::get<FactoredPoly>(rep_); }

  int degree() const;
  bool is_one() const;
  bool is_monic() const;
  Poly monic() const;
  std::string to_string() const;

  friend Poly operator*(const Poly& a, const Poly& b);
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly&, const Poly&) = default;
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  BaseField field_;
  std::variant<PrimePoly, FactoredPoly> rep_;
};

/// Monic gcd / lcm / divisibility / exact division across representations.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& f);
Poly exact_quotient(const Poly& f, const Poly& d);
Poly one(const BaseField& field);

struct Factor {
  Poly factor;
  unsigned multiplicity;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Factorization {
  PrimePoly::Coeff unit = 1;
  std::vector<Factor> factors;  ///< monic irreducibles in canonical order
};

/// Trial division by monic irreducibles of ascending degree. Symbolic inputs
/// are already factored and come back as-is.
Factorization factor(const Poly& f, const Limits& limits = default_limits());
Poly expand(const Factorization& f, const BaseField& field);

/// Parses "x^3+x+1", "2x^2-1", "x^2*(x+1)" over F_p.
PrimePoly parse_prime_poly(std::string_view text, unsigned p);
/// Parses "(x-a)^2*(x-b)", "x", "1" over a symbolic field.
FactoredPoly parse_factored_poly(std::string_view text);
Poly parse_poly(std::string_view text, const BaseField& field);

}  // namespace qfilt

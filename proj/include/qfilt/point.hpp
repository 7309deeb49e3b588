#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "qfilt/field.hpp"
#include "qfilt/poly.hpp"

namespace qfilt {

/// A point of a supported scheme. Closed points of a line are named by a monic
/// irreducible (prime fields) or by a label (symbolic fields); P^1 adds the
/// point at infinity. Each component of a disjoint union of fields is a single
/// point that is closed and generic at once.
class SpecPoint {
 public:
  enum class Kind { Closed, Infinity, Generic, Component };

  /// `irreducible` is normalized to monic; irreducibility is checked.
  static SpecPoint closed(const PrimePoly& irreducible);
  static SpecPoint label(std::string name);
  static SpecPoint infinity() { return SpecPoint(Kind::Infinity, std::monostate{}, 0); }
  /// The generic point of a line.
  static SpecPoint generic() { return SpecPoint(Kind::Generic, std::monostate{}, 0); }
  static SpecPoint component(std::int64_t index) { return SpecPoint(Kind::Component, std::monostate{}, index); }

  Kind kind() const noexcept { return kind_; }
  /// Closed in its scheme (everything but the generic point of a line).
  bool is_closed() const noexcept { return kind_ != Kind::Generic; }
  bool is_generic() const noexcept { return kind_ == Kind::Generic; }
  bool has_poly() const noexcept { return std::holds_alternative<PrimePoly>(id_); }
  bool has_label() const noexcept { return std::holds_alternative<std::string>(id_); }
  const PrimePoly& poly() const { return std::get<PrimePoly>(id_); }
  const std::string& label_name() const { return std::get<std::string>(id_); }
  std::int64_t component_index() const noexcept { return index_; }

  /// For closed points of a line: the generator x - a or p(x) of the maximal ideal.
  Poly generator(const BaseField& field) const;

  /// "pt:a", "pt:x^2+x+1", "pt:inf", "gen", "comp:3".
  std::string to_string() const;

  friend bool operator==(const SpecPoint&, const SpecPoint&) = default;
  friend std::strong_ordering operator<=>(const SpecPoint& a, const SpecPoint& b);

 private:
  SpecPoint(Kind kind, std::variant<std::monostate, PrimePoly, std::string> id, std::int64_t index)
      : kind_(kind), id_(std::move(id)), index_(index) {}

  Kind kind_;
  std::variant<std::monostate, PrimePoly, std::string> id_;
  std::int64_t index_ = 0;
};

/// Parses a point literal against a base field. A bare label or polynomial is
/// read as if prefixed by "pt:".
SpecPoint parse_point(std::string_view text, const BaseField& field);

}  // namespace qfilt

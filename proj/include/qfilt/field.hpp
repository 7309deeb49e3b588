#pragma once

#include <compare>
#include <string>

#include "qfilt/limits.hpp"

namespace qfilt {

/// Either F_p for a small prime p, or a symbolic algebraically closed field
/// whose closed points are named by opaque labels.
class BaseField {
 public:
  static BaseField prime(unsigned p, const Limits& limits = default_limits());
  static BaseField symbolic(std::string name = "k");

  bool is_prime_field() const noexcept { return p_ != 0; }
  bool is_symbolic() const noexcept { return p_ == 0; }
  /// p for F_p; 0 for symbolic fields.
  unsigned characteristic() const noexcept { return p_; }
  const std::string& name() const noexcept { return name_; }

  /// "F2", "F257", or the symbolic name.
  std::string to_string() const;

  friend bool operator==(const BaseField&, const BaseField&) = default;
  friend auto operator<=>(const BaseField&, const BaseField&) = default;

 private:
  BaseField(unsigned p, std::string name) : p_(p), name_(std::move(name)) {}

  unsigned p_ = 0;
  std::string name_;
};

bool is_prime(unsigned n) noexcept;

}  // namespace qfilt

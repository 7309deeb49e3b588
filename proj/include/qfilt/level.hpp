#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace qfilt {

/// A position on a stalk's ideal chain m^0 ⊋ m^1 ⊋ ... ⊋ 0, extended by
/// "every finite power":
///
///   0 < 1 < 2 < ... < infinity < top
///
/// As the order of an ideal at a point, `top` means the stalk is zero. As the
/// level of a filter at a point, `infinity` means every m^n is a member and
/// `top` means the zero ideal is a member too. An ideal with order o belongs
/// to a stalk filter with level l exactly when o <= l.
class Level {
 public:
  constexpr Level() = default;

  static constexpr Level finite(std::uint64_t n) { return Level(n < kInf ? n : kInf - 1); }
  static constexpr Level infinity() { return Level(kInf); }
  static constexpr Level top() { return Level(kTop); }

  constexpr bool is_finite() const noexcept { return v_ < kInf; }
  constexpr bool is_infinite() const noexcept { return v_ == kInf; }
  constexpr bool is_top() const noexcept { return v_ == kTop; }
  /// Finite value; meaningless otherwise.
  constexpr std::uint64_t value() const noexcept { return v_; }

  /// Saturating: infinity and top absorb finite values, top absorbs infinity.
  friend constexpr Level operator+(Level a, Level b) {
    if (a.is_top() || b.is_top()) return top();
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return finite(a.v_ + b.v_);
  }

  /// Collapses every level >= length to top (Artinian stalks of that length).
  constexpr Level clamped(unsigned length) const {
    return v_ >= length ? top() : *this;
  }

  /// "3", "inf", "top".
  std::string to_string() const {
    if (is_top()) return "top";
    if (is_infinite()) return "inf";
    return std::to_string(v_);
  }

  friend constexpr bool operator==(Level, Level) = default;
  friend constexpr auto operator<=>(Level, Level) = default;

 private:
  static constexpr std::uint64_t kTop = std::numeric_limits<std::uint64_t>::max();
  static constexpr std::uint64_t kInf = kTop - 1;

  constexpr explicit Level(std::uint64_t v) : v_(v) {}

  std::uint64_t v_ = 0;
};

}  // namespace qfilt

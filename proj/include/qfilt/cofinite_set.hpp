#pragma once

#include <algorithm>
#include <compare>
#include <iterator>
#include <set>

namespace qfilt {

/// A subset of an infinite (or unspecified) universe that is either finite or
/// has finite complement. The boolean algebra operations stay in this class.
template <class T>
class CofiniteSet {
 public:
  CofiniteSet() = default;

  static CofiniteSet finite(std::set<T> elems) { return CofiniteSet(false, std::move(elems)); }
  static CofiniteSet cofinite(std::set<T> excluded) { return CofiniteSet(true, std::move(excluded)); }
  static CofiniteSet empty() { return {}; }
  static CofiniteSet all() { return CofiniteSet(true, {}); }

  bool is_cofinite() const noexcept { return complement_; }
  bool is_empty() const noexcept { return !complement_ && elems_.empty(); }
  bool is_all() const noexcept { return complement_ && elems_.empty(); }
  /// Members when finite, excluded elements when cofinite.
  const std::set<T>& listed() const noexcept { return elems_; }

  bool contains(const T& x) const { return complement_ != (elems_.count(x) > 0); }

  CofiniteSet complement() const { return CofiniteSet(!complement_, elems_); }

  void insert(const T& x) {
    if (complement_)
      elems_.erase(x);
    else
      elems_.insert(x);
  }
  void erase(const T& x) {
    if (complement_)
      elems_.insert(x);
    else
      elems_.erase(x);
  }

  friend CofiniteSet operator|(const CofiniteSet& a, const CofiniteSet& b) {
    if (!a.complement_ && !b.complement_) return finite(set_union(a.elems_, b.elems_));
    if (a.complement_ && b.complement_) return cofinite(set_intersection(a.elems_, b.elems_));
    const auto& co = a.complement_ ? a : b;
    const auto& fin = a.complement_ ? b : a;
    return cofinite(set_difference(co.elems_, fin.elems_));
  }
  friend CofiniteSet operator&(const CofiniteSet& a, const CofiniteSet& b) {
    return (a.complement() | b.complement()).complement();
  }
  friend CofiniteSet operator-(const CofiniteSet& a, const CofiniteSet& b) { return a & b.complement(); }

  /// a ⊆ b.
  friend bool subset(const CofiniteSet& a, const CofiniteSet& b) { return (a - b).is_empty(); }

  friend bool operator==(const CofiniteSet&, const CofiniteSet&) = default;
  friend auto operator<=>(const CofiniteSet&, const CofiniteSet&) = default;

 private:
  CofiniteSet(bool complement, std::set<T> elems) : complement_(complement), elems_(std::move(elems)) {}

  static std::set<T> set_union(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out = a;
    out.insert(b.begin(), b.end());
    return out;
  }
  static std::set<T> set_intersection(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }
  static std::set<T> set_difference(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }

  bool complement_ = false;
  std::set<T> elems_;
};

}  // namespace qfilt

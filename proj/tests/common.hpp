#pragma once

#include <string>
#include <vector>

#include "qfilt/filter.hpp"
#include "qfilt/poly.hpp"
#include "qfilt/scheme.hpp"

namespace fx {

inline const qfilt::BaseField& F2() {
  static const qfilt::BaseField k = qfilt::BaseField::prime(2);
  return k;
}
inline const qfilt::BaseField& F3() {
  static const qfilt::BaseField k = qfilt::BaseField::prime(3);
  return k;
}
inline const qfilt::BaseField& K() {
  static const qfilt::BaseField k = qfilt::BaseField::symbolic();
  return k;
}

inline qfilt::Scheme A1() { return qfilt::Scheme::affine_line(K()); }
inline qfilt::Scheme P1() { return qfilt::Scheme::proj_line(K()); }
inline qfilt::Scheme DUZ() { return qfilt::Scheme::integer_disjoint_union(); }
inline qfilt::Scheme quotient(const char* mod, const qfilt::BaseField& k = F2()) {
  return qfilt::Scheme::affine_quotient(qfilt::QuotientRing(qfilt::parse_poly(mod, k)));
}

inline qfilt::SpecPoint pt(const qfilt::Scheme& s, const char* text) { return s.parse_point(text); }

inline qfilt::Level L(unsigned n) { return qfilt::Level::finite(n); }
inline qfilt::Level inf() { return qfilt::Level::infinity(); }

inline qfilt::IdealSheaf ideal(const qfilt::Scheme& s, const char* poly) {
  const std::string t = poly;
  if (t == "1") return qfilt::IdealSheaf::unit(s);
  if (t == "0") return qfilt::IdealSheaf::zero(s);
  return qfilt::IdealSheaf::from_affine(s, qfilt::AffineIdeal::principal(qfilt::parse_poly(poly, s.field())));
}

/// r given as {point, level} pairs over a default.
inline qfilt::LocalFilter expo(const qfilt::Scheme& s, qfilt::Level fallback,
                               std::vector<std::pair<const char*, qfilt::Level>> ex = {}) {
  std::map<qfilt::SpecPoint, qfilt::Level> m;
  for (const auto& [p, l] : ex) m[s.parse_point(p)] = l;
  return qfilt::LocalFilter::from_exponents(s, qfilt::ExponentFunction(fallback, m));
}

}  // namespace fx

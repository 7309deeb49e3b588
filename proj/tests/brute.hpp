#pragma once

// Naive polynomial arithmetic over F_p on plain coefficient vectors, kept
// separate from the library so tests can derive expected values on their own.

#include <cstdint>
#include <map>
#include <vector>

#include "qfilt/poly.hpp"

namespace brute {

using Coeffs = std::vector<unsigned>;  // low to high, no trailing zeros

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  trim(out);
  return out;
}

/// Remainder of a by a monic b, by schoolbook long division.
inline Coeffs rem(Coeffs a, const Coeffs& b, unsigned p) {
  while (a.size() >= b.size()) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    trim(a);
  }
  return a;
}

inline bool divides(const Coeffs& d, const Coeffs& f, unsigned p) { return rem(f, d, p).empty(); }

/// Every monic polynomial of the given degree.
inline std::vector<Coeffs> monics(unsigned p, unsigned degree) {
  std::vector<Coeffs> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Coeffs c(degree + 1, 0);
    std::uint64_t v = idx;
    for (unsigned i = 0; i < degree; ++i) {
      c[i] = static_cast<unsigned>(v % p);
      v /= p;
    }
    c[degree] = 1;
    out.push_back(c);
  }
  return out;
}

/// No monic divisor of degree 1..deg-1.
inline bool irreducible(const Coeffs& f, unsigned p) {
  const unsigned n = static_cast<unsigned>(f.size()) - 1;
  if (n < 1) return false;
  for (unsigned d = 1; d < n; ++d)
    for (const auto& g : monics(p, d))
      if (divides(g, f, p)) return false;
  return true;
}

inline std::vector<Coeffs> irreducibles(unsigned p, unsigned degree) {
  std::vector<Coeffs> out;
  for (const auto& f : monics(p, degree))
    if (irreducible(f, p)) out.push_back(f);
  return out;
}

/// Multiplicity of every monic irreducible of degree <= deg f dividing f.
inline std::map<Coeffs, unsigned> factor(Coeffs f, unsigned p) {
  std::map<Coeffs, unsigned> out;
  for (unsigned d = 1; d + 1 <= f.size(); ++d)
    for (const auto& g : irreducibles(p, d))
      while (f.size() > 1 && divides(g, f, p)) {
        ++out[g];
        Coeffs q;
        // exact division by repeated subtraction of shifted g
        Coeffs r = f;
        q.assign(r.size() - g.size() + 1, 0);
        while (r.size() >= g.size()) {
          const unsigned lead = r.back();
          const std::size_t shift = r.size() - g.size();
          q[shift] = lead;
          for (std::size_t i = 0; i < g.size(); ++i) r[shift + i] = (r[shift + i] + (p - lead) * g[i]) % p;
          trim(r);
        }
        f = q;
      }
  return out;
}

inline Coeffs of(const qfilt::PrimePoly& f) { return Coeffs(f.coeffs().begin(), f.coeffs().end()); }

inline qfilt::PrimePoly to_poly(const Coeffs& c, unsigned p) {
  return qfilt::PrimePoly(p, std::vector<qfilt::PrimePoly::Coeff>(c.begin(), c.end()));
}

}  // namespace brute

#pragma once

#include <cstddef>
#include <cstdint>

namespace qfilt {

/// Size bounds for the desk-scale models. These are configuration rather than
/// mathematics; every operation that enumerates takes a `Limits`.
struct Limits {
  unsigned max_prime = 257;
  /// Largest polynomial degree accepted by `factor`.
  unsigned max_factor_degree = 12;
  /// Largest modulus degree for `divisor_lattice`.
  unsigned lattice_degree_bound = 6;
  /// Cap on the number of trial divisors `factor` may try.
  std::uint64_t max_trial_divisions = 50'000'000;
  /// Explicit disjoint unions.
  std::size_t max_components = 64;
  /// Oracle: |ring| and number of ideals.
  std::size_t max_ring_size = 4096;
  std::size_t max_oracle_ideals = 24;
  unsigned max_module_length = 8;
};

inline const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

}  // namespace qfilt

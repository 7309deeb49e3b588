#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qfilt/filter.hpp"
#include "qfilt/spectrum.hpp"

namespace qfilt::laws {

/// Random generators for one scheme, drawing points from a small fixed pool so
/// that coincidences (shared exceptions, overlaps) are frequent.
class Generator {
 public:
  Generator(Scheme scheme, std::uint64_t seed);

  const Scheme& scheme() const noexcept { return scheme_; }
  std::mt19937_64& rng() noexcept { return rng_; }

  SpecPoint closed_point();
  /// Any point, generic ones included.
  SpecPoint point();
  Level level();
  IdealSheaf ideal();
  LocalFilter filter();
  /// A product-closed filter.
  LocalFilter localizing_filter();
  TorsionSheafData module();
  /// Chart indices worth testing.
  std::vector<std::int64_t> charts();

 private:
  std::size_t below(std::size_t n);
  bool chance(double p);
  ComponentSet component_pattern(double density);

  Scheme scheme_;
  std::mt19937_64 rng_;
  std::vector<SpecPoint> pool_;
};

/// The scheme shapes exercised by the law suite, by name.
std::vector<std::pair<std::string, Scheme>> standard_shapes();

struct LawReport {
  std::string shape;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Filter axioms, lattice laws, product laws, restriction/localization
/// homomorphisms and gluing round trips on `count` random instances.
LawReport run_laws(const std::string& name, const Scheme& scheme, std::size_t count, std::uint64_t seed);

}  // namespace qfilt::laws

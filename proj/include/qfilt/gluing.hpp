#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "qfilt/filter.hpp"
#include "qfilt/scheme.hpp"

namespace qfilt {

/// Per-chart data. On the integer-indexed disjoint union, `rest` stands for
/// every chart not listed explicitly.
template <class T>
struct ChartFamily {
  std::map<std::int64_t, T> charts;
  std::optional<T> rest;
};

/// The unique ideal sheaf with the given chart restrictions. Each entry lives
/// on `scheme.chart(i)`; P^1 charts carry intrinsic point names.
/// Throws "overlap mismatch at point x: a vs b".
IdealSheaf glue_ideals(const Scheme& scheme, const ChartFamily<IdealSheaf>& data);

/// The unique local filter with the given chart restrictions.
/// Throws "incompatible at point x".
LocalFilter glue_filters(const Scheme& scheme, const ChartFamily<LocalFilter>& data);

ChartFamily<IdealSheaf> restrict_all(const IdealSheaf& ideal);
ChartFamily<LocalFilter> restrict_all(const LocalFilter& f);

/// Whether the plain filter generated by the base is already local, together
/// with its local closure.
std::pair<bool, LocalFilter> is_local(const FilterBase& base);

}  // namespace qfilt

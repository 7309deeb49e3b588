#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfilt/filter.hpp"
#include "qfilt/spectrum.hpp"

namespace qfilt {

struct ClosedSubscheme {
  IdealSheaf ideal;
  /// Supp(O_X / I).
  SpecClosedSet support;
};

/// O_X = I ⊕ J for an idempotent I.
struct ClopenSplit {
  SpecClosedSet clopen;
  IdealSheaf complement;
};

struct ClassificationReport {
  explicit ClassificationReport(LocalFilter f) : filter(std::move(f)) {}

  LocalFilter filter;
  bool prelocalizing = true;
  bool localizing = false;
  bool closed = false;
  bool bilocalizing = false;
  std::optional<SpecPoint> prime;

  std::optional<SpecClosedSet> support;
  std::optional<ClosedSubscheme> subscheme;
  std::optional<ClopenSplit> clopen;
};

ClassificationReport classify(const LocalFilter& f);

/// Throws unless f is product-closed.
SpecClosedSet localizing_to_specclosed(const LocalFilter& f);
LocalFilter specclosed_to_localizing(const SpecClosedSet& phi);
/// Throws unless f is principal.
ClosedSubscheme closed_to_subscheme(const LocalFilter& f);
/// Throws unless f is principal with an idempotent minimum.
ClopenSplit biloc_to_clopen(const LocalFilter& f);

/// M lies in the subcategory of f, i.e. Ann(M) ∈ f.
bool member(const TorsionSheafData& m, const LocalFilter& f);
/// The smallest local filter whose subcategory holds every module.
LocalFilter filter_from_modules(const Scheme& scheme, const std::vector<TorsionSheafData>& modules);

/// The correspondence filter -> subcategory -> attachment, as prose.
struct Explanation {
  std::string filter;
  std::string subcategory;
  std::vector<std::string> attachments;
};
Explanation explain(const LocalFilter& f);

}  // namespace qfilt

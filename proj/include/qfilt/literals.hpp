#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qfilt/classify.hpp"
#include "qfilt/filter.hpp"
#include "qfilt/oracle.hpp"
#include "qfilt/spectrum.hpp"

namespace qfilt::io {

using Json = nlohmann::ordered_json;

/// Parses a document, reporting syntax errors by line and column.
Json parse_document(std::string_view text);

/// "F2", 3, "k" / {"symbolic": "k"}.
BaseField field_from_json(const Json& j);
/// {"kind":"affine_line","field":...}, {"kind":"affine_quotient","p":2,"modulus":"x^3"},
/// {"kind":"proj_line","field":...}, {"kind":"disjoint_union","components":"Z"|[fields]}.
Scheme scheme_from_json(const Json& j);
/// Shorthand used on the command line: "A1", "A1:F2", "P1:k", "DU:Z",
/// "DU:F2,k,F3", "p:2,mod:x^3"; a leading '{' is read as JSON.
Scheme scheme_from_text(std::string_view text);
/// "p:2,mod:x^3" or "k,mod:(x-a)^2".
QuotientRing ring_from_text(std::string_view text);

/// "0", "1", a number or "inf".
Level level_from_json(const Json& j);
Json level_to_json(Level l);

/// ["comp:0", ...] or {"all_but": [...]}.
ComponentSet components_from_json(const Json& j);
Json components_to_json(const ComponentSet& s);

/// A coordinate ideal ("(x-a)^2*(x-b)", "x^2+x", "0", "1") or
/// {"orders": {"pt:a": 2, "pt:inf": 1}, "zero": [...]}.
IdealSheaf ideal_from_json(const Scheme& scheme, const Json& j);
Json ideal_to_json(const IdealSheaf& ideal);

/// {"kind":"exponents"|"improper"|"trivial"|"principal"|"generated"|"cofinite-family", ...}.
FilterBase base_from_json(const Scheme& scheme, const Json& j);
LocalFilter filter_from_json(const Scheme& scheme, const Json& j);
Json filter_to_json(const LocalFilter& f);

/// {"divisors": [["pt:a", 2], ...], "free": true | [components]}.
TorsionSheafData module_from_json(const Scheme& scheme, const Json& j);
Json module_to_json(const TorsionSheafData& m);

Json point_to_json(const SpecPoint& x);
Json spec_to_json(const SpecPoset& poset);
Json closed_set_to_json(const SpecClosedSet& s);
Json stalk_filter_to_json(const StalkFilter& f);
Json report_to_json(const std::string& name, const ClassificationReport& r);
/// Flat row for the classification table, derived from a report document.
Json report_row(const Json& report);
Json explanation_to_json(const Explanation& e);
Json oracle_to_json(const oracle::OracleReport& r);

/// Renders an output document as aligned text; arrays of flat objects become
/// tables, everything else key/value lines.
std::string render_table(const Json& doc);

}  // namespace qfilt::io

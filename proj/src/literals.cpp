#include "qfilt/literals.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qfilt/error.hpp"

namespace qfilt::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

const std::string& as_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error(what + ": expected a string, got " + j.dump());
  return j.get_ref<const std::string&>();
}

void allow_keys(const Json& j, const std::string& what, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw Error(what + ": expected an object, got " + j.dump());
  for (const auto& [k, _] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      throw Error(what + ": unknown key '" + k + "'");
}

const Json& require_key(const Json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(what + ": missing '" + key + "'");
  return *it;
}

SpecPoint point_from_json(const Scheme& scheme, const Json& j) {
  if (j.is_number_integer() && scheme.kind() == Scheme::Kind::DisjointUnion)
    return scheme.parse_point("comp:" + std::to_string(j.get<std::int64_t>()));
  return scheme.parse_point(as_string(j, "point"));
}

}  // namespace

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError("invalid JSON: " + msg, line, column);
  }
}

BaseField field_from_json(const Json& j) {
  if (j.is_number_unsigned()) return BaseField::prime(j.get<unsigned>());
  if (j.is_object()) {
    allow_keys(j, "field", {"p", "symbolic"});
    if (j.contains("p")) return BaseField::prime(j["p"].get<unsigned>());
    return BaseField::symbolic(as_string(require_key(j, "symbolic", "field"), "field"));
  }
  const std::string& s = as_string(j, "field");
  if (s.size() > 1 && s[0] == 'F' && std::all_of(s.begin() + 1, s.end(), ::isdigit))
    return BaseField::prime(static_cast<unsigned>(std::stoul(s.substr(1))));
  if (s.empty()) throw Error("field: empty name");
  return BaseField::symbolic(s);
}

QuotientRing ring_from_text(std::string_view text) {
  std::optional<BaseField> field;
  std::string modulus;
  for (const auto& tok : split(text, ',')) {
    if (tok.starts_with("p:"))
      field = BaseField::prime(static_cast<unsigned>(std::stoul(tok.substr(2))));
    else if (tok.starts_with("mod:"))
      modulus = tok.substr(4);
    else if (!tok.empty())
      field = field_from_json(Json(tok));
  }
  if (!field || modulus.empty()) throw Error("ring literal '" + std::string(text) + "' needs a field and mod:<poly>");
  return QuotientRing(parse_poly(modulus, *field));
}

Scheme scheme_from_text(std::string_view text) {
  const std::string t = trim(text);
  if (t.starts_with("{")) return scheme_from_json(parse_document(t));
  auto field_after = [&](std::size_t n) {
    return t.size() > n && t[n] == ':' ? field_from_json(Json(t.substr(n + 1))) : BaseField::symbolic();
  };
  if (t == "A1" || t.starts_with("A1:")) return Scheme::affine_line(field_after(2));
  if (t == "P1" || t.starts_with("P1:")) return Scheme::proj_line(field_after(2));
  if (t.starts_with("DU:")) {
    if (t == "DU:Z") return Scheme::integer_disjoint_union();
    std::vector<BaseField> comps;
    for (const auto& f : split(t.substr(3), ',')) comps.push_back(field_from_json(Json(f)));
    return Scheme::disjoint_union(std::move(comps));
  }
  return Scheme::affine_quotient(ring_from_text(t));
}

Scheme scheme_from_json(const Json& j) {
  if (j.is_string()) return scheme_from_text(j.get<std::string>());
  allow_keys(j, "scheme", {"kind", "field", "p", "modulus", "components"});
  const std::string& kind = as_string(require_key(j, "kind", "scheme"), "scheme kind");
  auto field = [&] {
    if (j.contains("p")) return BaseField::prime(j["p"].get<unsigned>());
    return j.contains("field") ? field_from_json(j["field"]) : BaseField::symbolic();
  };
  if (kind == "affine_line") return Scheme::affine_line(field());
  if (kind == "proj_line") return Scheme::proj_line(field());
  if (kind == "affine_quotient") {
    const BaseField k = field();
    return Scheme::affine_quotient(QuotientRing(parse_poly(as_string(require_key(j, "modulus", "scheme"), "modulus"), k)));
  }
  if (kind == "disjoint_union") {
    const Json& c = require_key(j, "components", "scheme");
    if (c.is_string() && c.get<std::string>() == "Z") return Scheme::integer_disjoint_union();
    if (!c.is_array()) throw Error("scheme: components must be \"Z\" or a list of fields");
    std::vector<BaseField> comps;
    for (const auto& f : c) comps.push_back(field_from_json(f));
    return Scheme::disjoint_union(std::move(comps));
  }
  throw Error("scheme: unknown kind '" + kind + "'");
}

Level level_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Level::finite(j.get<std::uint64_t>());
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "∞") return Level::infinity();
    if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) return Level::finite(std::stoull(s));
  }
  throw Error("exponent must be a nonnegative integer or \"inf\", got " + j.dump());
}

Json level_to_json(Level l) {
  if (l.is_finite()) return l.value();
  return l.to_string();
}

ComponentSet components_from_json(const Json& j) {
  auto read = [](const Json& list) {
    std::set<std::int64_t> out;
    if (!list.is_array()) throw Error("component list expected, got " + list.dump());
    for (const auto& c : list) {
      if (c.is_number_integer()) {
        out.insert(c.get<std::int64_t>());
        continue;
      }
      const SpecPoint x = parse_point(as_string(c, "component"), BaseField::symbolic());
      if (x.kind() != SpecPoint::Kind::Component) throw Error("expected comp:<i>, got " + c.dump());
      out.insert(x.component_index());
    }
    return out;
  };
  if (j.is_string() && j.get<std::string>() == "all") return ComponentSet::all();
  if (j.is_object()) {
    allow_keys(j, "components", {"all_but"});
    return ComponentSet::cofinite(read(require_key(j, "all_but", "components")));
  }
  return ComponentSet::finite(read(j));
}

Json components_to_json(const ComponentSet& s) {
  Json list = Json::array();
  for (auto c : s.listed()) list.push_back(SpecPoint::component(c).to_string());
  if (!s.is_cofinite()) return list;
  return Json{{"all_but", list}};
}

IdealSheaf ideal_from_json(const Scheme& scheme, const Json& j) {
  if (j.is_string() || j.is_number_unsigned()) {
    const std::string s = j.is_string() ? j.get<std::string>() : std::to_string(j.get<unsigned>());
    if (s == "0") return IdealSheaf::zero(scheme);
    if (s == "1") return IdealSheaf::unit(scheme);
    const BaseField& k = scheme.field();
    return IdealSheaf::from_affine(scheme, AffineIdeal::principal(parse_poly(s, k)));
  }
  allow_keys(j, "ideal", {"orders", "zero"});
  std::map<SpecPoint, Level> orders;
  if (j.contains("orders")) {
    if (!j["orders"].is_object()) throw Error("ideal: 'orders' maps points to exponents");
    for (const auto& [k, v] : j["orders"].items()) orders[scheme.parse_point(k)] = level_from_json(v);
  }
  const ComponentSet zero = j.contains("zero") ? components_from_json(j["zero"]) : ComponentSet{};
  return IdealSheaf::from_orders(scheme, orders, zero);
}

Json ideal_to_json(const IdealSheaf& ideal) { return ideal.to_string(); }

FilterBase base_from_json(const Scheme& scheme, const Json& j) {
  const std::string& kind = as_string(require_key(j, "kind", "filter"), "filter kind");
  if (kind == "principal") {
    allow_keys(j, "filter", {"kind", "ideal"});
    return {scheme, {ideal_from_json(scheme, require_key(j, "ideal", "principal filter"))}, false};
  }
  if (kind == "generated") {
    allow_keys(j, "filter", {"kind", "ideals"});
    const Json& list = require_key(j, "ideals", "generated filter");
    if (!list.is_array() || list.empty()) throw Error("generated filter: 'ideals' must be a nonempty list");
    FilterBase base{scheme, {}, false};
    for (const auto& i : list) base.generators.push_back(ideal_from_json(scheme, i));
    return base;
  }
  if (kind == "cofinite-family") {
    allow_keys(j, "filter", {"kind"});
    return {scheme, {}, true};
  }
  throw Error("filter base: unknown kind '" + kind + "'");
}

LocalFilter filter_from_json(const Scheme& scheme, const Json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "improper") return LocalFilter::improper(scheme);
    if (s == "trivial") return LocalFilter::trivial(scheme);
    throw Error("filter: expected an object, \"improper\" or \"trivial\", got " + j.dump());
  }
  const std::string& kind = as_string(require_key(j, "kind", "filter"), "filter kind");
  if (kind == "improper") {
    allow_keys(j, "filter", {"kind"});
    return LocalFilter::improper(scheme);
  }
  if (kind == "trivial") {
    allow_keys(j, "filter", {"kind"});
    return LocalFilter::trivial(scheme);
  }
  if (kind == "exponents") {
    allow_keys(j, "filter", {"kind", "default", "exceptions", "kill"});
    const Level fallback = j.contains("default") ? level_from_json(j["default"]) : Level::finite(0);
    std::map<SpecPoint, Level> ex;
    if (j.contains("exceptions")) {
      if (!j["exceptions"].is_object()) throw Error("filter: 'exceptions' maps points to exponents");
      for (const auto& [k, v] : j["exceptions"].items()) ex[scheme.parse_point(k)] = level_from_json(v);
    }
    const ComponentSet kill = j.contains("kill") ? components_from_json(j["kill"]) : ComponentSet{};
    return LocalFilter::from_exponents(scheme, ExponentFunction(fallback, std::move(ex)), kill);
  }
  if (kind == "support") {
    allow_keys(j, "filter", {"kind", "whole", "points"});
    const ComponentSet whole = j.contains("whole") ? components_from_json(j["whole"]) : ComponentSet{};
    PointSet points;
    if (j.contains("points")) {
      const Json& p = j["points"];
      const bool co = p.is_object();
      if (co) allow_keys(p, "support points", {"all_but"});
      std::set<SpecPoint> listed;
      for (const auto& x : co ? require_key(p, "all_but", "support points") : p) listed.insert(point_from_json(scheme, x));
      points = co ? PointSet::cofinite(std::move(listed)) : PointSet::finite(std::move(listed));
    }
    return specclosed_to_localizing(SpecClosedSet::make(scheme, whole, std::move(points)));
  }
  if (kind == "modules") {
    allow_keys(j, "filter", {"kind", "modules"});
    std::vector<TorsionSheafData> mods;
    for (const auto& m : require_key(j, "modules", "filter")) mods.push_back(module_from_json(scheme, m));
    return filter_from_modules(scheme, mods);
  }
  return generate(base_from_json(scheme, j));
}

Json filter_to_json(const LocalFilter& f) {
  if (f.is_improper()) return Json{{"kind", "improper"}};
  Json out{{"kind", "exponents"}, {"default", level_to_json(f.exponents().fallback())}};
  Json ex = Json::object();
  for (const auto& [x, v] : f.exponents().exceptions()) ex[x.to_string()] = level_to_json(v);
  out["exceptions"] = ex;
  if (!f.killed().is_empty()) out["kill"] = components_to_json(f.killed());
  return out;
}

TorsionSheafData module_from_json(const Scheme& scheme, const Json& j) {
  allow_keys(j, "module", {"divisors", "free", "text"});
  std::vector<TorsionSheafData::Divisor> divs;
  if (j.contains("divisors")) {
    if (!j["divisors"].is_array()) throw Error("module: 'divisors' must be a list of [point, exponent]");
    for (const auto& d : j["divisors"]) {
      if (!d.is_array() || d.size() != 2 || !d[1].is_number_unsigned() || d[1].get<unsigned>() == 0)
        throw Error("module: divisor must be [point, exponent >= 1], got " + d.dump());
      divs.emplace_back(point_from_json(scheme, d[0]), d[1].get<unsigned>());
    }
  }
  ComponentSet free;
  if (j.contains("free")) {
    const Json& fr = j["free"];
    if (fr.is_boolean())
      free = fr.get<bool>() ? scheme.all_components() : ComponentSet{};
    else
      free = components_from_json(fr);
  }
  return TorsionSheafData(scheme, std::move(divs), free);
}

Json module_to_json(const TorsionSheafData& m) {
  Json divs = Json::array();
  for (const auto& [x, e] : m.divisors()) divs.push_back(Json::array({x.to_string(), e}));
  return Json{{"divisors", divs}, {"free", components_to_json(m.free_components())}, {"text", m.to_string()}};
}

Json point_to_json(const SpecPoint& x) { return x.to_string(); }

Json spec_to_json(const SpecPoset& poset) {
  Json points = Json::array();
  for (const auto& x : poset.points) points.push_back(x.to_string());
  Json order = Json::array();
  for (const auto& x : poset.points)
    for (const auto& y : poset.points)
      if (!(x == y) && poset.leq(x, y)) order.push_back(Json::array({x.to_string(), y.to_string()}));
  Json out{{"scheme", poset.scheme.to_string()}, {"points", points}, {"specializations", order}};
  if (!poset.family.empty()) out["family"] = poset.family;
  return out;
}

Json closed_set_to_json(const SpecClosedSet& s) {
  static const char* names[] = {"empty", "all", "finite-closed", "cofinite-closed", "whole-components", "mixed"};
  Json points = Json::array();
  for (const auto& x : s.closed_points().listed()) points.push_back(x.to_string());
  return Json{{"text", s.to_string()},
              {"shape", names[static_cast<int>(s.shape())]},
              {"whole", components_to_json(s.whole_components())},
              {"points", s.closed_points().is_cofinite() ? Json{{"all_but", points}} : points}};
}

Json stalk_filter_to_json(const StalkFilter& f) {
  return Json{{"kind", f.to_string()}, {"level", level_to_json(f.level())}};
}

Json report_to_json(const std::string& name, const ClassificationReport& r) {
  Json out{{"name", name},
           {"filter", filter_to_json(r.filter)},
           {"text", r.filter.to_string()},
           {"prelocalizing", r.prelocalizing},
           {"localizing", r.localizing},
           {"closed", r.closed},
           {"bilocalizing", r.bilocalizing},
           {"prime", r.prime ? Json(r.prime->to_string()) : Json()}};
  out["support"] = r.support ? closed_set_to_json(*r.support) : Json();
  out["subscheme"] = r.subscheme ? Json{{"ideal", ideal_to_json(r.subscheme->ideal)},
                                        {"support", closed_set_to_json(r.subscheme->support)}}
                                 : Json();
  out["clopen"] = r.clopen ? Json{{"set", closed_set_to_json(r.clopen->clopen)},
                                  {"complement", ideal_to_json(r.clopen->complement)}}
                           : Json();
  return out;
}

Json report_row(const Json& report) {
  auto yes = [&](const char* k) { return report[k].get<bool>() ? "yes" : "no"; };
  std::string att;
  auto add = [&](const std::string& s) { att += (att.empty() ? "" : "; ") + s; };
  if (!report["support"].is_null()) add("Supp " + report["support"]["text"].get<std::string>());
  if (!report["subscheme"].is_null()) add("V(" + report["subscheme"]["ideal"].get<std::string>() + ")");
  if (!report["clopen"].is_null()) add("clopen " + report["clopen"]["set"]["text"].get<std::string>());
  return Json{{"filter", report["name"]},
              {"localizing", yes("localizing")},
              {"closed", yes("closed")},
              {"bilocalizing", yes("bilocalizing")},
              {"prime", report["prime"].is_null() ? Json("-") : report["prime"]},
              {"attachments", att.empty() ? "-" : att}};
}

Json explanation_to_json(const Explanation& e) {
  return Json{{"filter", e.filter}, {"subcategory", e.subcategory}, {"attachments", e.attachments}};
}

Json oracle_to_json(const oracle::OracleReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json row{{"check", c.name}, {"passed", c.passed}, {"cases", c.cases}};
    if (!c.passed) row["counterexample"] = c.counterexample;
    checks.push_back(row);
  }
  return Json{{"ring", r.ring},
              {"ideals", r.ideals},
              {"filters", r.filters},
              {"subcategories",
               {{"prelocalizing", r.subcategories.prelocalizing},
                {"localizing", r.subcategories.localizing},
                {"closed", r.subcategories.closed},
                {"bilocalizing", r.subcategories.bilocalizing}}},
              {"checks", checks},
              {"passed", r.passed()}};
}

namespace {

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

bool is_flat_rows(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  return std::all_of(v.begin(), v.end(), [](const Json& row) {
    return row.is_object() && std::none_of(row.begin(), row.end(), [](const Json& c) { return c.is_structured(); });
  });
}

void render_rows(std::ostringstream& out, const Json& rows, const std::string& indent) {
  std::vector<std::string> keys;
  for (const auto& row : rows)
    for (const auto& [k, _] : row.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::vector<std::size_t> width(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    width[c] = keys[c].size();
    for (const auto& row : rows)
      width[c] = std::max(width[c], cell(row.contains(keys[c]) ? row[keys[c]] : Json()).size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = indent;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(keys);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& k : keys) cells.push_back(cell(row.contains(k) ? row[k] : Json()));
    line(cells);
  }
}

void render_value(std::ostringstream& out, const std::string& key, const Json& v, const std::string& indent) {
  if (is_flat_rows(v)) {
    out << indent << key << ":\n";
    render_rows(out, v, indent + "  ");
  } else if (v.is_object() && !v.empty()) {
    out << indent << key << ":\n";
    for (const auto& [k, c] : v.items()) render_value(out, k, c, indent + "  ");
  } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& c) { return c.is_object(); })) {
    out << indent << key << ":\n";
    std::size_t i = 0;
    for (const auto& c : v) render_value(out, "[" + std::to_string(i++) + "]", c, indent + "  ");
  } else if (v.is_array()) {
    std::string s;
    for (const auto& c : v) s += (s.empty() ? "" : ", ") + (c.is_array() ? c.dump() : cell(c));
    out << indent << key << ": " << (v.empty() ? "-" : s) << '\n';
  } else {
    out << indent << key << ": " << cell(v) << '\n';
  }
}

}  // namespace

std::string render_table(const Json& doc) {
  if (doc.is_null()) return {};
  std::ostringstream out;
  out << "qfilt output v" << cell(doc.value("version", Json(1))) << "  scheme " << cell(doc.value("scheme", Json()))
      << '\n';
  if (!doc.contains("results")) return out.str();
  for (const auto& r : doc["results"]) {
    out << "\n== " << cell(r.value("cmd", Json("?"))) << " ==\n";
    for (const auto& [k, v] : r.items())
      if (k != "cmd") render_value(out, k, v, "");
  }
  return out.str();
}

}  // namespace qfilt::io

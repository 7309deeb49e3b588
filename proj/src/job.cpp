#include "qfilt/job.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "qfilt/error.hpp"
#include "qfilt/gluing.hpp"
#include "qfilt/laws.hpp"

namespace qfilt {

namespace {

using io::Json;

using NamedFilters = std::vector<std::pair<std::string, LocalFilter>>;

struct Context {
  Scheme scheme;
  JobOptions options;
  std::vector<std::string> labels;
  std::map<std::string, LocalFilter> filters;
  std::vector<std::string> filter_order;
  std::map<std::string, TorsionSheafData> modules;
  std::vector<std::string> module_order;
  std::map<std::string, NamedFilters> families;
  bool mismatch = false;
};

/// Prefixes errors with the entity being processed.
template <class F>
auto within(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(where + ": " + e.what());
  }
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw Error("expected an object, got " + j.dump());
  for (const auto& [k, _] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      throw Error("unknown key '" + k + "'");
}

void define_filter(Context& ctx, const std::string& name, LocalFilter f) {
  if (!ctx.filters.count(name)) ctx.filter_order.push_back(name);
  ctx.filters.insert_or_assign(name, std::move(f));
}

LocalFilter resolve_filter(const Context& ctx, const Json& ref) {
  if (ref.is_string()) {
    const std::string& name = ref.get_ref<const std::string&>();
    if (auto it = ctx.filters.find(name); it != ctx.filters.end()) return it->second;
    if (name == "improper" || name == "trivial") return io::filter_from_json(ctx.scheme, ref);
    throw Error("filter '" + name + "' is not defined");
  }
  return io::filter_from_json(ctx.scheme, ref);
}

std::string ref_name(const Json& ref) { return ref.is_string() ? ref.get<std::string>() : ref.dump(); }

TorsionSheafData resolve_module(const Context& ctx, const Json& ref) {
  if (ref.is_string()) {
    auto it = ctx.modules.find(ref.get<std::string>());
    if (it == ctx.modules.end()) throw Error("module '" + ref.get<std::string>() + "' is not defined");
    return it->second;
  }
  return io::module_from_json(ctx.scheme, ref);
}

std::vector<Json> refs(const Json& cmd, const char* single, const char* plural) {
  std::vector<Json> out;
  if (cmd.contains(single)) out.push_back(cmd[single]);
  if (cmd.contains(plural)) {
    if (!cmd[plural].is_array()) throw Error(std::string("'") + plural + "' must be a list");
    for (const auto& r : cmd[plural]) out.push_back(r);
  }
  return out;
}

/// Filters addressed by a command: a family, an explicit list, or every named filter.
NamedFilters select_filters(const Context& ctx, const Json& cmd) {
  NamedFilters out;
  if (cmd.contains("family")) {
    const std::string name = cmd["family"].get<std::string>();
    auto it = ctx.families.find(name);
    if (it == ctx.families.end()) throw Error("family '" + name + "' is not defined");
    out = it->second;
  }
  for (const auto& r : refs(cmd, "filter", "filters")) out.emplace_back(ref_name(r), resolve_filter(ctx, r));
  if (!cmd.contains("family") && !cmd.contains("filter") && !cmd.contains("filters"))
    for (const auto& name : ctx.filter_order) out.emplace_back(name, ctx.filters.at(name));
  return out;
}

NamedFilters build_family(const Context& ctx, const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  NamedFilters out;
  std::set<std::string> seen;
  auto add = [&](LocalFilter f) {
    std::string name = f.to_string();
    if (seen.insert(name).second) out.emplace_back(std::move(name), std::move(f));
  };
  if (kind == "grid") {
    allow_keys(j, {"kind", "points", "values", "defaults", "improper"});
    std::vector<SpecPoint> points;
    for (const auto& p : j.at("points")) points.push_back(ctx.scheme.parse_point(p.get<std::string>()));
    std::vector<Level> values, defaults;
    for (const auto& v : j.at("values")) values.push_back(io::level_from_json(v));
    if (j.contains("defaults"))
      for (const auto& v : j["defaults"]) defaults.push_back(io::level_from_json(v));
    else
      defaults.push_back(Level::finite(0));
    if (values.empty()) throw Error("grid needs at least one value");
    for (const Level d : defaults) {
      std::vector<std::size_t> pick(points.size(), 0);
      for (;;) {
        std::map<SpecPoint, Level> ex;
        for (std::size_t i = 0; i < points.size(); ++i) ex[points[i]] = values[pick[i]];
        add(LocalFilter::from_exponents(ctx.scheme, ExponentFunction(d, std::move(ex))));
        std::size_t i = 0;
        while (i < points.size() && pick[i] + 1 == values.size()) pick[i++] = 0;
        if (i == points.size()) break;
        ++pick[i];
      }
    }
    if (j.value("improper", false)) add(LocalFilter::improper(ctx.scheme));
    return out;
  }
  if (kind == "all") {
    allow_keys(j, {"kind"});
    if (ctx.scheme.kind() != Scheme::Kind::AffineQuotient)
      throw Error("family 'all' needs an affine quotient, not " + ctx.scheme.to_string());
    for (auto& f : oracle::enumerate_symbolic_filters(ctx.scheme)) add(std::move(f));
    return out;
  }
  if (kind == "list") {
    allow_keys(j, {"kind", "filters"});
    for (const auto& r : j.at("filters")) out.emplace_back(ref_name(r), resolve_filter(ctx, r));
    return out;
  }
  throw Error("unknown family kind '" + kind + "'");
}

void collect_labels(Context& ctx) {
  std::set<std::string> labels(ctx.labels.begin(), ctx.labels.end());
  auto note = [&](const SpecPoint& x) {
    if (x.has_label()) labels.insert(x.label_name());
  };
  auto note_filter = [&](const LocalFilter& f) {
    for (const auto& [x, _] : f.exponents().exceptions()) note(x);
  };
  for (const auto& [_, f] : ctx.filters) note_filter(f);
  for (const auto& [_, fam] : ctx.families)
    for (const auto& [__, f] : fam) note_filter(f);
  for (const auto& [_, m] : ctx.modules)
    for (const auto& [x, __] : m.divisors()) note(x);
  ctx.labels.assign(labels.begin(), labels.end());
}

// ---------------------------------------------------------------------------

const std::map<std::string, std::vector<const char*>>& command_keys() {
  static const std::map<std::string, std::vector<const char*>> keys{
      {"spec", {"cmd", "degree_bound", "labels"}},
      {"op", {"cmd", "op", "args", "chart", "point", "ideals", "base", "as"}},
      {"classify", {"cmd", "filter", "filters", "family"}},
      {"table", {"cmd", "filter", "filters", "family"}},
      {"explain", {"cmd", "filter", "filters", "family"}},
      {"member", {"cmd", "module", "modules", "filter", "filters", "family"}},
      {"support", {"cmd", "module", "modules"}},
      {"glue", {"cmd", "what", "charts", "rest", "as"}},
      {"oracle", {"cmd", "ring", "length_bound"}},
      {"laws", {"cmd", "shapes", "count", "seed"}},
  };
  return keys;
}

/// Structural checks and name resolution before anything runs.
void validate_commands(const Context& ctx, const Json& commands) {
  std::set<std::string> defined(ctx.filter_order.begin(), ctx.filter_order.end());
  std::size_t index = 0;
  for (const auto& cmd : commands) {
    within("commands[" + std::to_string(index++) + "]", [&] {
      if (!cmd.is_object() || !cmd.contains("cmd") || !cmd["cmd"].is_string())
        throw Error("each command needs a \"cmd\" string");
      const std::string kind = cmd["cmd"].get<std::string>();
      auto it = command_keys().find(kind);
      if (it == command_keys().end()) throw Error("unknown command '" + kind + "'");
      for (const auto& [k, _] : cmd.items())
        if (std::none_of(it->second.begin(), it->second.end(), [&](const char* a) { return k == a; }))
          throw Error(kind + ": unknown key '" + k + "'");
      auto check_filter = [&](const Json& r) {
        if (r.is_string() && !defined.count(r.get<std::string>()) && r != "improper" && r != "trivial")
          throw Error(kind + ": filter '" + r.get<std::string>() + "' is not defined");
      };
      for (const auto& r : refs(cmd, "filter", "filters")) check_filter(r);
      if (cmd.contains("args")) {
        if (!cmd["args"].is_array() || cmd["args"].empty()) throw Error(kind + ": 'args' must be a nonempty list");
        for (const auto& r : cmd["args"]) check_filter(r);
      }
      for (const auto& r : refs(cmd, "module", "modules"))
        if (r.is_string() && !ctx.modules.count(r.get<std::string>()))
          throw Error(kind + ": module '" + r.get<std::string>() + "' is not defined");
      if (cmd.contains("family") && !ctx.families.count(cmd["family"].get<std::string>()))
        throw Error(kind + ": family '" + cmd["family"].get<std::string>() + "' is not defined");
      if (kind == "op") {
        static const std::set<std::string> ops{"meet", "join", "product", "restrict", "localize", "generate", "is_local"};
        if (!cmd.contains("op") || !ops.count(cmd["op"].get<std::string>()))
          throw Error("op: 'op' must be one of meet, join, product, restrict, localize, generate, is_local");
      }
      if (cmd.contains("as")) defined.insert(cmd["as"].get<std::string>());
    });
  }
}

Json run_op(Context& ctx, const Json& cmd) {
  const std::string op = cmd["op"].get<std::string>();
  Json out{{"cmd", "op"}, {"op", op}};
  std::vector<LocalFilter> args;
  if (cmd.contains("args")) {
    Json names = Json::array();
    for (const auto& r : cmd["args"]) {
      args.push_back(resolve_filter(ctx, r));
      names.push_back(ref_name(r));
    }
    out["args"] = names;
  }
  auto need_one = [&] {
    if (args.size() != 1) throw Error(op + " takes exactly one filter");
    return args.front();
  };
  std::optional<LocalFilter> result;
  if (op == "meet" || op == "join" || op == "product") {
    if (args.empty()) throw Error(op + " needs filters in 'args'");
    using Fn = LocalFilter (*)(const LocalFilter&, const LocalFilter&);
    const Fn fn = op == "meet" ? static_cast<Fn>(meet) : op == "join" ? static_cast<Fn>(join) : static_cast<Fn>(product);
    LocalFilter acc = args.front();
    for (std::size_t i = 1; i < args.size(); ++i) acc = fn(acc, args[i]);
    result = acc;
  } else if (op == "restrict") {
    const std::int64_t chart = cmd.at("chart").get<std::int64_t>();
    result = restrict(need_one(), chart);
    out["chart"] = chart;
    out["chart_scheme"] = result->scheme().to_string();
  } else if (op == "localize") {
    const SpecPoint x = ctx.scheme.parse_point(cmd.at("point").get<std::string>());
    out["point"] = x.to_string();
    out["result"] = io::stalk_filter_to_json(localize(need_one(), x));
    return out;
  } else if (op == "generate") {
    std::vector<IdealSheaf> gens;
    Json shown = Json::array();
    for (const auto& i : cmd.at("ideals")) {
      gens.push_back(io::ideal_from_json(ctx.scheme, i));
      shown.push_back(io::ideal_to_json(gens.back()));
    }
    out["ideals"] = shown;
    result = generate(ctx.scheme, gens);
  } else {
    const auto [local, closure] = is_local(io::base_from_json(ctx.scheme, cmd.at("base")));
    out["base"] = cmd["base"];
    out["local"] = local;
    result = closure;
  }
  out["result"] = io::filter_to_json(*result);
  out["text"] = result->to_string();
  if (cmd.contains("as")) {
    define_filter(ctx, cmd["as"].get<std::string>(), *result);
    out["as"] = cmd["as"];
  }
  return out;
}

Json run_spec(const Context& ctx, const Json& cmd) {
  unsigned bound = cmd.value("degree_bound", 2U);
  if (ctx.options.degree_bound) bound = *ctx.options.degree_bound;
  std::vector<std::string> labels = ctx.labels;
  if (cmd.contains("labels")) labels = cmd["labels"].get<std::vector<std::string>>();
  Json out{{"cmd", "spec"}};
  if (ctx.scheme.is_line_like() && ctx.scheme.field().is_prime_field()) out["degree_bound"] = bound;
  out.update(io::spec_to_json(spec(ctx.scheme, bound, labels)));
  return out;
}

Json run_member(const Context& ctx, const Json& cmd) {
  Json rows = Json::array();
  const NamedFilters fs = select_filters(ctx, cmd);
  std::vector<std::pair<std::string, TorsionSheafData>> mods;
  for (const auto& r : refs(cmd, "module", "modules")) mods.emplace_back(ref_name(r), resolve_module(ctx, r));
  if (mods.empty())
    for (const auto& name : ctx.module_order) mods.emplace_back(name, ctx.modules.at(name));
  for (const auto& [mn, m] : mods)
    for (const auto& [fname, f] : fs)
      rows.push_back(Json{{"module", mn}, {"filter", fname}, {"member", member(m, f)}});
  return Json{{"cmd", "member"}, {"rows", rows}};
}

Json run_support(const Context& ctx, const Json& cmd) {
  Json rows = Json::array();
  std::vector<std::pair<std::string, TorsionSheafData>> mods;
  for (const auto& r : refs(cmd, "module", "modules")) mods.emplace_back(ref_name(r), resolve_module(ctx, r));
  if (mods.empty())
    for (const auto& name : ctx.module_order) mods.emplace_back(name, ctx.modules.at(name));
  for (const auto& [name, m] : mods) {
    const SuppAss sa = supp_ass(m);
    Json ass = Json::array();
    for (const auto& x : sa.ass.points) ass.push_back(x.to_string());
    Json row{{"module", name}, {"text", m.to_string()}, {"supp", sa.supp.to_string()}, {"ass", ass}};
    if (!sa.ass.components.is_empty()) row["ass_components"] = io::components_to_json(sa.ass.components);
    rows.push_back(row);
  }
  return Json{{"cmd", "support"}, {"modules", rows}};
}

Scheme chart_scheme(const Scheme& s, std::int64_t i) {
  return s.is_integer_family() && i == std::numeric_limits<std::int64_t>::min()
             ? Scheme::disjoint_union({BaseField::symbolic()})
             : s.chart(i);
}

Json run_glue(Context& ctx, const Json& cmd) {
  const std::string what = cmd.value("what", "filters");
  if (what != "filters" && what != "ideals") throw Error("glue: 'what' must be filters or ideals");
  const Json& charts = cmd.at("charts");
  if (!charts.is_object()) throw Error("glue: 'charts' maps chart indices to literals");
  Json out{{"cmd", "glue"}, {"what", what}};
  auto index_of = [](const std::string& k) {
    std::size_t used = 0;
    const std::int64_t i = std::stoll(k, &used);
    if (used != k.size()) throw Error("glue: chart index '" + k + "' is not an integer");
    return i;
  };
  const std::int64_t rest_key = std::numeric_limits<std::int64_t>::min();
  try {
    if (what == "filters") {
      ChartFamily<LocalFilter> fam;
      for (const auto& [k, v] : charts.items()) {
        const std::int64_t i = index_of(k);
        fam.charts.emplace(i, io::filter_from_json(chart_scheme(ctx.scheme, i), v));
      }
      if (cmd.contains("rest")) fam.rest = io::filter_from_json(chart_scheme(ctx.scheme, rest_key), cmd["rest"]);
      const LocalFilter f = glue_filters(ctx.scheme, fam);
      out["result"] = io::filter_to_json(f);
      out["text"] = f.to_string();
      if (cmd.contains("as")) define_filter(ctx, cmd["as"].get<std::string>(), f);
    } else {
      ChartFamily<IdealSheaf> fam;
      for (const auto& [k, v] : charts.items()) {
        const std::int64_t i = index_of(k);
        fam.charts.emplace(i, io::ideal_from_json(chart_scheme(ctx.scheme, i), v));
      }
      if (cmd.contains("rest")) fam.rest = io::ideal_from_json(chart_scheme(ctx.scheme, rest_key), cmd["rest"]);
      out["result"] = io::ideal_to_json(glue_ideals(ctx.scheme, fam));
    }
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (msg.find("mismatch") == std::string::npos && msg.find("incompatible") == std::string::npos) throw;
    out["result"] = nullptr;
    out["error"] = msg;
  }
  return out;
}

Json run_oracle(Context& ctx, const Json& cmd) {
  QuotientRing ring = ctx.scheme.kind() == Scheme::Kind::AffineQuotient && !cmd.contains("ring")
                          ? ctx.scheme.quotient()
                          : io::ring_from_text(cmd.at("ring").get<std::string>());
  const oracle::OracleReport rep = oracle::verify(ring, cmd.value("length_bound", 4U));
  if (!rep.passed()) ctx.mismatch = true;
  Json out{{"cmd", "oracle"}};
  out.update(io::oracle_to_json(rep));
  return out;
}

Json run_laws(Context& ctx, const Json& cmd) {
  const std::size_t count = cmd.value("count", std::size_t{10000});
  std::uint64_t seed = cmd.value("seed", std::uint64_t{1});
  if (ctx.options.seed) seed = *ctx.options.seed;
  std::vector<std::pair<std::string, Scheme>> shapes;
  if (cmd.contains("shapes")) {
    const auto all = laws::standard_shapes();
    for (const auto& s : cmd["shapes"]) {
      const std::string name = s.get<std::string>();
      if (name == "all") {
        shapes = all;
        break;
      }
      auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.first == name; });
      if (it != all.end()) {
        shapes.push_back(*it);
        continue;
      }
      // any scheme literal, named by its canonical text
      Scheme other = [&] {
        try {
          return io::scheme_from_text(name);
        } catch (const Error& e) {
          throw Error("laws: unknown shape '" + name + "': " + e.what());
        }
      }();
      shapes.emplace_back(other.to_string(), other);
    }
  } else {
    shapes.emplace_back(ctx.scheme.to_string(), ctx.scheme);
  }
  Json rows = Json::array();
  for (const auto& [name, s] : shapes) {
    const laws::LawReport r = laws::run_laws(name, s, count, seed);
    if (r.failures) ctx.mismatch = true;
    rows.push_back(Json{{"shape", r.shape},
                        {"instances", r.instances},
                        {"checks", r.checks},
                        {"failures", r.failures},
                        {"first_failure", r.first_failure.empty() ? "-" : r.first_failure}});
  }
  return Json{{"cmd", "laws"}, {"seed", seed}, {"shapes", rows}};
}

Json run_command(Context& ctx, const Json& cmd) {
  const std::string kind = cmd["cmd"].get<std::string>();
  if (kind == "spec") return run_spec(ctx, cmd);
  if (kind == "op") return run_op(ctx, cmd);
  if (kind == "classify" || kind == "table") {
    Json reports = Json::array();
    for (const auto& [name, f] : select_filters(ctx, cmd)) reports.push_back(io::report_to_json(name, classify(f)));
    if (kind == "classify") return Json{{"cmd", "classify"}, {"reports", reports}};
    Json rows = Json::array();
    for (const auto& r : reports) rows.push_back(io::report_row(r));
    return Json{{"cmd", "table"}, {"of", "classify"}, {"rows", rows}};
  }
  if (kind == "explain") {
    Json list = Json::array();
    for (const auto& [name, f] : select_filters(ctx, cmd)) {
      Json e{{"name", name}};
      e.update(io::explanation_to_json(explain(f)));
      list.push_back(e);
    }
    return Json{{"cmd", "explain"}, {"explanations", list}};
  }
  if (kind == "member") return run_member(ctx, cmd);
  if (kind == "support") return run_support(ctx, cmd);
  if (kind == "glue") return run_glue(ctx, cmd);
  if (kind == "oracle") return run_oracle(ctx, cmd);
  return run_laws(ctx, cmd);
}

}  // namespace

JobOutcome run_job(const Json& job, const JobOptions& options) {
  JobOutcome outcome;
  try {
    if (!job.is_object()) throw Error("a job is a JSON object");
    allow_keys(job, {"version", "description", "scheme", "labels", "filters", "modules", "families", "commands"});
    if (!job.contains("version")) throw Error("missing schema 'version'");
    if (job["version"] != kJobFormatVersion)
      throw Error("unsupported job version " + job["version"].dump() + " (expected " +
                  std::to_string(kJobFormatVersion) + ")");
    Context ctx{within("scheme", [&] { return io::scheme_from_json(job.at("scheme")); }), options, {}, {}, {}, {}, {}, {}, false};
    if (job.contains("labels")) ctx.labels = job["labels"].get<std::vector<std::string>>();
    if (job.contains("filters"))
      for (const auto& [name, lit] : job["filters"].items())
        define_filter(ctx, name, within("filters." + name, [&] { return io::filter_from_json(ctx.scheme, lit); }));
    if (job.contains("modules"))
      for (const auto& [name, lit] : job["modules"].items())
      {
        ctx.modules.emplace(name, within("modules." + name, [&] { return io::module_from_json(ctx.scheme, lit); }));
        ctx.module_order.push_back(name);
      }
    if (job.contains("families"))
      for (const auto& [name, lit] : job["families"].items())
        ctx.families.emplace(name, within("families." + name, [&] { return build_family(ctx, lit); }));
    collect_labels(ctx);

    const Json commands = job.value("commands", Json::array());
    if (!commands.is_array()) throw Error("'commands' must be a list");
    validate_commands(ctx, commands);
    if (commands.empty()) return outcome;

    Json results = Json::array();
    std::size_t index = 0;
    for (const auto& cmd : commands)
      results.push_back(
          within("commands[" + std::to_string(index++) + "] (" + cmd["cmd"].get<std::string>() + ")",
                 [&] { return run_command(ctx, cmd); }));
    outcome.document = Json{{"version", kJobFormatVersion}, {"scheme", ctx.scheme.to_string()}, {"results", results}};
    if (ctx.mismatch) {
      outcome.exit_code = kExitMismatch;
      outcome.error = "verification mismatch";
    }
  } catch (const std::exception& e) {
    outcome.document = Json();
    outcome.exit_code = kExitInvalid;
    outcome.error = e.what();
  }
  return outcome;
}

JobOutcome run_job_text(std::string_view text, const JobOptions& options) {
  try {
    return run_job(io::parse_document(text), options);
  } catch (const ParseError& e) {
    JobOutcome out;
    out.exit_code = kExitInvalid;
    out.error = e.what();
    return out;
  }
}

}  // namespace qfilt

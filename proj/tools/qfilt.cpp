#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfilt/error.hpp"
#include "qfilt/job.hpp"

using qfilt::io::Json;

namespace {

struct Common {
  std::string format = "json";
  std::string out;
  std::optional<unsigned> degree_bound;
  std::optional<std::uint64_t> seed;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qfilt::Error("cannot open job file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json literal(const std::string& text) {
  if (text == "improper" || text == "trivial") return text;
  return qfilt::io::parse_document(text);
}

/// A literal that may be bare text ("(x-a)^2", "pt:a") rather than JSON.
Json text_or_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return qfilt::io::parse_document(text);
  return text;
}

int emit(const qfilt::JobOutcome& outcome, const Common& c) {
  if (!outcome.error.empty()) std::cerr << "qfilt: " << (outcome.exit_code == qfilt::kExitMismatch ? "" : "error: ")
                                        << outcome.error << '\n';
  if (outcome.document.is_null()) return outcome.exit_code;
  const std::string text =
      c.format == "table" ? qfilt::io::render_table(outcome.document) : outcome.document.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      std::cerr << "qfilt: error: cannot write '" << c.out << "'\n";
      return qfilt::kExitInvalid;
    }
    f << text;
  }
  return outcome.exit_code;
}

qfilt::JobOptions options_of(const Common& c) { return {c.degree_bound, c.seed}; }

int run_generated(const Json& job, const Common& c) {
  return emit(qfilt::run_job(job, options_of(c)), c);
}

Json base_job(const std::string& scheme) {
  return Json{{"version", qfilt::kJobFormatVersion}, {"scheme", scheme}};
}

Json named_filters(const std::vector<std::string>& lits, Json& names) {
  Json filters = Json::object();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const std::string name = "F" + std::to_string(i + 1);
    filters[name] = literal(lits[i]);
    names.push_back(name);
  }
  return filters;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filters of ideal sheaves: classification, operations and brute-force verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", c.out, "Write output to PATH instead of stdout");
  app.add_option("--degree-bound", c.degree_bound, "Degree bound for listing closed points");
  app.add_option("--seed", c.seed, "Seed for randomized law checks");

  std::string job_path;
  auto* run = app.add_subcommand("run", "Run a job file ('-' reads stdin)");
  run->add_option("job", job_path, "Job file")->required();

  std::string scheme = "A1";
  std::vector<std::string> filters, modules, ideals, labels, shapes;
  auto scheme_opt = [&](CLI::App* sub) {
    sub->add_option("--scheme", scheme, "Scheme literal or shorthand (A1, A1:F2, P1, DU:Z, p:2,mod:x^3)")
        ->capture_default_str();
  };

  auto* classify = app.add_subcommand("classify", "Classify filters");
  scheme_opt(classify);
  classify->add_option("filter", filters, "Filter literals")->required();

  auto* spec = app.add_subcommand("spec", "List points and the specialization order");
  scheme_opt(spec);
  spec->add_option("--labels", labels, "Labels to list over a symbolic field")->delimiter(',');

  std::string op_name;
  std::int64_t chart = 0;
  std::string point;
  auto* op = app.add_subcommand("op", "Filter operations");
  scheme_opt(op);
  op->add_option("name", op_name, "meet | join | product | restrict | localize | generate")
      ->required()
      ->check(CLI::IsMember({"meet", "join", "product", "restrict", "localize", "generate"}));
  op->add_option("filter", filters, "Filter literals");
  op->add_option("--chart", chart, "Chart index for restrict");
  op->add_option("--point", point, "Point for localize");
  op->add_option("--ideal", ideals, "Ideal literals for generate");

  auto* member = app.add_subcommand("member", "Subcategory membership of modules");
  scheme_opt(member);
  member->add_option("--module", modules, "Module literals")->required();
  member->add_option("--filter", filters, "Filter literals")->required();

  std::string ring;
  unsigned length_bound = 4;
  auto* oracle = app.add_subcommand("oracle", "Brute-force verification on finite rings");
  auto* verify = oracle->add_subcommand("verify", "Cross-check the symbolic engine on one ring");
  oracle->require_subcommand(1);
  verify->add_option("--ring", ring, "Ring as p:<p>,mod:<poly>")->required();
  verify->add_option("--length-bound", length_bound, "Module length bound")->capture_default_str();

  auto* explain = app.add_subcommand("explain", "Filter -> subcategory -> attachment");
  scheme_opt(explain);
  explain->add_option("filter", filters, "Filter literals")->required();

  std::size_t count = 10000;
  auto* laws = app.add_subcommand("laws", "Randomized law suite");
  laws->add_option("--shape", shapes, "Scheme shapes (default: all)");
  laws->add_option("--count", count, "Instances per shape")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return emit(qfilt::run_job_text(read_file(job_path), options_of(c)), c);

    if (*oracle) {
      Json job = base_job(ring);
      job["commands"] = Json::array({Json{{"cmd", "oracle"}, {"length_bound", length_bound}}});
      return run_generated(job, c);
    }
    if (*laws) {
      Json job = base_job("A1");
      Json cmd{{"cmd", "laws"}, {"count", count}, {"shapes", shapes.empty() ? Json::array({"all"}) : Json(shapes)}};
      job["commands"] = Json::array({cmd});
      return run_generated(job, c);
    }

    Json job = base_job(scheme);
    Json names = Json::array();
    if (!filters.empty()) job["filters"] = named_filters(filters, names);
    Json cmd;
    if (*classify) {
      cmd = Json{{"cmd", "classify"}};
    } else if (*explain) {
      cmd = Json{{"cmd", "explain"}};
    } else if (*spec) {
      cmd = Json{{"cmd", "spec"}};
      if (!labels.empty()) cmd["labels"] = labels;
    } else if (*member) {
      Json mods = Json::object();
      for (std::size_t i = 0; i < modules.size(); ++i) mods["M" + std::to_string(i + 1)] = literal(modules[i]);
      job["modules"] = mods;
      cmd = Json{{"cmd", "member"}};
    } else {
      cmd = Json{{"cmd", "op"}, {"op", op_name}};
      if (op_name == "generate") {
        Json list = Json::array();
        for (const auto& i : ideals) list.push_back(text_or_json(i));
        cmd["ideals"] = list;
      } else {
        cmd["args"] = names;
        if (op_name == "restrict") cmd["chart"] = chart;
        if (op_name == "localize") cmd["point"] = point;
      }
    }
    job["commands"] = Json::array({cmd});
    return run_generated(job, c);
  } catch (const std::exception& e) {
    std::cerr << "qfilt: error: " << e.what() << '\n';
    return qfilt::kExitInvalid;
  }
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "qfilt/error.hpp"
#include "qfilt/job.hpp"
#include "qfilt/laws.hpp"
#include "qfilt/literals.hpp"

using namespace qfilt;
using namespace fx;
using io::Json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kProductJob = R"({
  "version": 1,
  "scheme": "A1",
  "filters": {
    "F1": {"kind": "exponents", "default": 0, "exceptions": {"a": 2}},
    "F2": {"kind": "exponents", "default": 0, "exceptions": {"a": 3}}
  },
  "commands": [{"cmd": "op", "op": "product", "args": ["F1", "F2"]}]
})";

}  // namespace

TEST_CASE("product job") {
  const JobOutcome out = run_job_text(kProductJob);
  REQUIRE(out.exit_code == kExitOk);
  const Json& res = out.document["results"][0]["result"];
  CHECK(res["default"] == 0);
  CHECK(res["exceptions"]["pt:a"] == 5);
  CHECK(out.document["version"] == kJobFormatVersion);
}

TEST_CASE("empty command list") {
  const JobOutcome out = run_job_text(R"({"version": 1, "scheme": "A1", "commands": []})");
  CHECK(out.exit_code == kExitOk);
  CHECK(out.document.is_null());
  CHECK(out.error.empty());
}

TEST_CASE("parse errors carry line and column") {
  const JobOutcome out = run_job_text("{\n  \"version\": 1,\n  \"scheme\": A1\n}");
  CHECK(out.exit_code == kExitInvalid);
  CHECK(out.error.find("line 3") != std::string::npos);
  CHECK(out.error.find("column") != std::string::npos);
  try {
    io::parse_document("[1,\n 2,,\n]");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 3);
  }
}

TEST_CASE("validation errors name the entity") {
  const JobOutcome undefined = run_job_text(
      R"({"version": 1, "scheme": "A1", "filters": {"F": "trivial"},
          "commands": [{"cmd": "op", "op": "meet", "args": ["F", "G"]}]})");
  CHECK(undefined.exit_code == kExitInvalid);
  CHECK(undefined.error.find("G") != std::string::npos);
  CHECK(undefined.error.find("commands[0]") != std::string::npos);

  const JobOutcome bad_filter = run_job_text(
      R"({"version": 1, "scheme": "A1", "filters": {"F1": {"kind": "exponents", "default": "seven"}}, "commands": []})");
  CHECK(bad_filter.exit_code == kExitInvalid);
  CHECK(bad_filter.error.rfind("filters.F1", 0) == 0);

  CHECK(run_job_text(R"({"scheme": "A1", "commands": []})").exit_code == kExitInvalid);
  CHECK(run_job_text(R"({"version": 2, "scheme": "A1", "commands": []})").exit_code == kExitInvalid);
  CHECK(run_job_text(R"({"version": 1, "scheme": "A1", "colour": 3, "commands": []})").exit_code == kExitInvalid);
}

TEST_CASE("oracle mismatch exit code is distinct") {
  CHECK(kExitMismatch == 3);
  const JobOutcome ok = run_job_text(
      R"({"version": 1, "scheme": "p:2,mod:x^2+x", "commands": [{"cmd": "oracle", "length_bound": 3}]})");
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.document["results"][0]["passed"] == true);
}

TEST_CASE("output is deterministic") {
  for (const auto& entry : std::filesystem::directory_iterator(QFILT_JOBS_DIR)) {
    const std::string text = slurp(entry.path());
    const JobOutcome a = run_job_text(text), b = run_job_text(text);
    CHECK(a.document.dump() == b.document.dump());
    CHECK(io::render_table(a.document) == io::render_table(b.document));
  }
}

TEST_CASE("shipped jobs succeed") {
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QFILT_JOBS_DIR)) {
    const JobOutcome out = run_job_text(slurp(entry.path()));
    CHECK_MESSAGE(out.exit_code == kExitOk, entry.path().filename().string() << ": " << out.error);
    ++n;
  }
  CHECK(n >= 8);
}

TEST_CASE("affine line table reproduces the four families") {
  const JobOutcome out = run_job_text(slurp(std::filesystem::path(QFILT_JOBS_DIR) / "affine_line_table.json"));
  REQUIRE(out.exit_code == kExitOk);
  const Json& rows = out.document["results"][0]["rows"];
  REQUIRE(rows.size() == 18);
  const Scheme a1 = A1();
  std::map<std::string, std::array<bool, 3>> want;
  for (const Level d : {L(0), inf()})
    for (unsigned ra = 0; ra <= 2; ++ra)
      for (unsigned rb = 0; rb <= 2; ++rb) {
        const LocalFilter f = expo(a1, d, {{"a", L(ra)}, {"b", L(rb)}});
        const auto in01 = [](Level v) { return v == L(0) || v.is_infinite(); };
        const bool localizing = in01(d) && in01(L(ra)) && in01(L(rb));
        const bool closed = d == L(0);
        const bool biloc = d == L(0) && ra == 0 && rb == 0;
        want[f.to_string()] = {localizing, closed, biloc};
      }
  CHECK(want.size() == 18);
  for (const auto& row : rows) {
    const std::string name = row["filter"];
    REQUIRE(want.count(name));
    const auto& w = want[name];
    CHECK_MESSAGE((row["localizing"] == "yes") == w[0], name);
    CHECK_MESSAGE((row["closed"] == "yes") == w[1], name);
    CHECK_MESSAGE((row["bilocalizing"] == "yes") == w[2], name);
  }
}

TEST_CASE("literals round trip") {
  for (const auto& [name, scheme] : laws::standard_shapes()) {
    laws::Generator gen(scheme, 21);
    for (int t = 0; t < 300; ++t) {
      const LocalFilter f = gen.filter();
      REQUIRE_MESSAGE(io::filter_from_json(scheme, io::filter_to_json(f)) == f, name << ": " << f.to_string());
      const TorsionSheafData m = gen.module();
      REQUIRE(io::module_from_json(scheme, io::module_to_json(m)) == m);
      const Level l = gen.level();
      REQUIRE(io::level_from_json(io::level_to_json(l)) == l);
    }
  }
  const Scheme q = io::scheme_from_text("p:2,mod:x^3");
  CHECK(q == quotient("x^3"));
  CHECK(io::scheme_from_text("P1") == P1());
  CHECK(io::scheme_from_text("DU:Z") == DUZ());
  CHECK(io::filter_from_json(A1(), "improper").is_improper());
  CHECK_THROWS_AS(io::filter_from_json(A1(), Json{{"kind", "exponents"}, {"defualt", 0}}), Error);
}

TEST_CASE("table rendering is a view of the document") {
  const JobOutcome out = run_job_text(kProductJob);
  const std::string table = io::render_table(out.document);
  CHECK(table.find("pt:a=5") != std::string::npos);
}

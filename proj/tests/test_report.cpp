#include <sstream>

#include "doctest.h"
#include "mzv/report.hpp"

using namespace mzv;
using nlohmann::json;

namespace {

CheckOptions options() {
  CheckOptions o;
  o.ctx = PrecisionContext{40};
  return o;
}

std::string scan_text(const ScanConfig& config, Execution exec) {
  std::ostringstream out;
  write_reports(run_scan(config, exec), config, out);
  return out.str();
}

std::string config_error(const char* text) {
  try {
    parse_scan_config(json::parse(text), 40);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("report json round trip reproduces the decimal strings") {
  const auto opts = options();
  PrecisionScope scope(opts.ctx);
  const auto r = check_prop1(2, 1, Complex::parse("0.75+0.25i"), Complex::parse("1.5"), opts);
  const auto j = report_to_json(r, false);
  CHECK(j["id"] == "prop1");
  CHECK(j["params"]["alpha"] == "7.5e-1+2.5e-1i");
  CHECK_FALSE(j.contains("wall_time"));
  CHECK_FALSE(j.contains("error"));
  const auto back = report_from_json(json::parse(j.dump()), opts.ctx);
  CHECK(report_to_json(back, false).dump() == j.dump());
  CHECK(back.lhs.value == Complex::parse(j["lhs"]["value"].get<std::string>()));
  CHECK(back.pass == r.pass);

  const auto keys = {"id", "params", "lhs", "rhs", "residual", "tol", "pass", "err_lhs", "err_rhs", "digits"};
  auto it = j.begin();
  for (const char* key : keys) CHECK((it++).key() == key);
  CHECK(report_to_json(r, true).contains("wall_time"));
}

TEST_CASE("failed reports carry the error and null values") {
  auto opts = options();
  PrecisionScope scope(opts.ctx);
  opts.plan.cutoffs = {10};
  const auto r = check_prop3(3, 2, Complex(5), opts);
  const auto j = report_to_json(r, false);
  CHECK(j["lhs"].is_null());
  CHECK(j["residual"].is_null());
  CHECK(j["pass"] == false);
  CHECK(j["error"].get<std::string>().rfind("ConvergenceError", 0) == 0);
  const auto back = report_from_json(j, opts.ctx);
  CHECK(back.error == r.error);
  CHECK_FALSE(back.pass);
}

TEST_CASE("csv rows follow the header") {
  const auto opts = options();
  PrecisionScope scope(opts.ctx);
  const auto header = csv_header();
  CHECK(header.rfind("id,params,", 0) == 0);
  const auto r = check_sum_formula(3, 2, opts);
  const auto row = report_to_csv(r, false);
  CHECK(row.rfind("sum_formula,n=2;k=3,", 0) == 0);
  auto columns = [](const std::string& line) {
    std::size_t count = 1;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) ++count;
    }
    return count;
  };
  CHECK(columns(row) == columns(header));
  CHECK(params_to_string(r.params, 40) == "n=2;k=3");
}

TEST_CASE("config validation names the offending field") {
  CHECK(config_error(R"({"checks":[{"id":"prop1","n":[1],"m":[1],"alpha":["1","-1"],"beta":["1"]}]})") ==
        "checks[0].alpha[1]: real part must be positive (got -1)");
  CHECK(config_error(R"({"digits":10})").rfind("digits:", 0) == 0);
  CHECK(config_error(R"({"tol":0})").rfind("tol:", 0) == 0);
  CHECK(config_error(R"({"colour":1})") == "colour: unknown config field");
  CHECK(config_error(R"({"checks":[{"id":"prop9"}]})").rfind("checks[0].id:", 0) == 0);
  CHECK(config_error(R"({"checks":[{"id":"cor2","n":[1],"alpha":["1"]}]})") == "checks[0].k: required for cor2");
  CHECK(config_error(R"({"checks":[{"id":"cor2","n":[1],"k":[3],"alpha":["1"],"beta":["1"]}]})") ==
        "checks[0].beta: not used by cor2");
  CHECK(config_error(R"({"checks":[{"id":"sum_formula","n":[1],"k":{"from":2}}]})").rfind("checks[0].k", 0) == 0);
  CHECK(config_error(R"({"plan":{"cutoffs":[100,50]}})").rfind("plan:", 0) == 0);
  CHECK(config_error(R"({"checks":[{"id":"cov_eq6","n":[1],"alpha":["1"],"level":[1]}]})") ==
        "checks[0].level: levels must lie in [2, 16]");
  CHECK(config_error(R"({"checks":[{"id":"sum_formula","n":{"from":1,"to":2},"k":[3]}]})").empty());
}

TEST_CASE("grid expansion") {
  const auto c = parse_scan_config(json::parse(R"({"checks":[
      {"id":"sum_formula","n":{"from":1,"to":3},"k":{"from":2,"to":4}},
      {"id":"cov_eq6","n":[1],"alpha":["1","2"]}]})"),
                                   40);
  const auto points = expand_grid(c);
  // (k,n) with n < k: k=2:1, k=3:2, k=4:3
  REQUIRE(points.size() == 6 + 2);
  CHECK(*points[0].params.n == 1);
  CHECK(*points[0].params.k == 2);
  CHECK(points[6].id == IdentityId::cov_eq6);
  CHECK(*points[6].params.level == 6);
  CHECK(*points[6].params.x == Complex(0));
}

TEST_CASE("empty grid") {
  const auto c = parse_scan_config(json::parse(R"({"checks":[]})"), 40);
  std::ostringstream out;
  const auto summary = write_reports(run_scan(c, Execution::serial), c, out);
  CHECK(summary.total == 0);
  CHECK(out.str().empty());
}

TEST_CASE("scans are deterministic across runs and execution modes") {
  const auto c = parse_scan_config(json::parse(R"({"digits":30,"checks":[
      {"id":"prop1","n":[1,2],"m":[1],"alpha":["1","0.5+0.5i"],"beta":["1.5"]},
      {"id":"prop3","n":[1,2],"k":[3,4],"alpha":["0.75"]},
      {"id":"gf_prop3","n":[2],"alpha":["1"],"X":["0.1"]}]})"),
                                   40);
  const auto first = scan_text(c, Execution::parallel);
  CHECK(first == scan_text(c, Execution::parallel));
  CHECK(first == scan_text(c, Execution::serial));
  std::istringstream lines(first);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = json::parse(line);
    CHECK(j["pass"] == true);
    CHECK(j["digits"] == 30);
    ++count;
  }
  CHECK(count == 4 + 4 + 1);
}

TEST_CASE("run_point turns numerical failures into reports") {
  auto opts = options();
  opts.plan.cutoffs = {10};
  CheckPoint p{IdentityId::cor2, {}};
  p.params.k = 3;
  p.params.n = 2;
  p.params.alpha = Complex(5);
  const auto r = run_point(p, opts);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.error.empty());
  ScanConfig c;
  std::ostringstream out;
  const auto summary = write_reports({r}, c, out);
  CHECK(summary.errored == 1);
  CHECK(summary.passed == 0);
}

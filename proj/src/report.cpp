#include "mzv/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "mzv/quadrature.hpp"

namespace mzv {

using nlohmann::ordered_json;

namespace {

constexpr int kErrDigits = 6;

ordered_json params_to_json(const IdentityParams& p, int digits) {
  ordered_json j = ordered_json::object();
  if (p.n) j["n"] = *p.n;
  if (p.m) j["m"] = *p.m;
  if (p.k) j["k"] = *p.k;
  if (p.alpha) j["alpha"] = p.alpha->to_string(digits);
  if (p.beta) j["beta"] = p.beta->to_string(digits);
  if (p.x) j["X"] = p.x->to_string(digits);
  if (p.level) j["level"] = *p.level;
  return j;
}

ordered_json side_to_json(const SeriesValue& v, int digits) {
  ordered_json j;
  j["value"] = v.value.to_string(digits);
  j["err"] = v.err.to_string(kErrDigits);
  j["cutoff"] = v.cutoff;
  j["method"] = std::string(to_string(v.method));
  return j;
}

SeriesMethod parse_method(const std::string& s) {
  for (auto m : {SeriesMethod::direct, SeriesMethod::euler_maclaurin, SeriesMethod::extrapolated,
                 SeriesMethod::partial_fraction, SeriesMethod::taylor, SeriesMethod::quadrature})
    if (to_string(m) == s) return m;
  throw DomainError("unknown series method '" + s + "'");
}

SeriesValue side_from_json(const ordered_json& j) {
  SeriesValue v;
  v.value = Complex::parse(j.at("value").get<std::string>());
  v.err = Real::parse(j.at("err").get<std::string>());
  v.cutoff = j.at("cutoff").get<long>();
  v.method = parse_method(j.at("method").get<std::string>());
  return v;
}

}  // namespace

std::string params_to_string(const IdentityParams& p, int digits) {
  std::string out;
  auto add = [&](const char* key, const std::string& value) {
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += value;
  };
  if (p.n) add("n", std::to_string(*p.n));
  if (p.m) add("m", std::to_string(*p.m));
  if (p.k) add("k", std::to_string(*p.k));
  if (p.alpha) add("alpha", p.alpha->to_string(digits));
  if (p.beta) add("beta", p.beta->to_string(digits));
  if (p.x) add("X", p.x->to_string(digits));
  if (p.level) add("level", std::to_string(*p.level));
  return out;
}

ordered_json report_to_json(const IdentityReport& r, bool timings) {
  ordered_json j;
  j["id"] = std::string(to_string(r.id));
  j["params"] = params_to_json(r.params, r.digits);
  if (r.error.empty()) {
    j["lhs"] = side_to_json(r.lhs, r.digits);
    j["rhs"] = side_to_json(r.rhs, r.digits);
    j["residual"] = r.residual.to_string(kErrDigits);
  } else {
    j["lhs"] = nullptr;
    j["rhs"] = nullptr;
    j["residual"] = nullptr;
  }
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  if (r.error.empty()) {
    j["err_lhs"] = r.lhs.err.to_string(kErrDigits);
    j["err_rhs"] = r.rhs.err.to_string(kErrDigits);
  } else {
    j["err_lhs"] = nullptr;
    j["err_rhs"] = nullptr;
  }
  j["digits"] = r.digits;
  if (timings) j["wall_time"] = r.wall_time;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

IdentityReport report_from_json(const ordered_json& j, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  IdentityReport r;
  r.id = parse_identity_id(j.at("id").get<std::string>());
  const auto& p = j.at("params");
  if (p.contains("n")) r.params.n = p["n"].get<int>();
  if (p.contains("m")) r.params.m = p["m"].get<int>();
  if (p.contains("k")) r.params.k = p["k"].get<int>();
  if (p.contains("alpha")) r.params.alpha = Complex::parse(p["alpha"].get<std::string>());
  if (p.contains("beta")) r.params.beta = Complex::parse(p["beta"].get<std::string>());
  if (p.contains("X")) r.params.x = Complex::parse(p["X"].get<std::string>());
  if (p.contains("level")) r.params.level = p["level"].get<int>();
  if (!j.at("lhs").is_null()) {
    r.lhs = side_from_json(j["lhs"]);
    r.rhs = side_from_json(j.at("rhs"));
    r.residual = Real::parse(j.at("residual").get<std::string>());
  }
  r.tol = j.at("tol").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.digits = j.at("digits").get<int>();
  if (j.contains("wall_time")) r.wall_time = j["wall_time"].get<double>();
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  return r;
}

std::string csv_header() {
  return "id,params,lhs,rhs,residual,tol,pass,err_lhs,err_rhs,digits,wall_time,error";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string report_to_csv(const IdentityReport& r, bool timings) {
  const ordered_json j = report_to_json(r, timings);
  std::ostringstream tol;
  tol << j["tol"].dump();
  const bool ok = r.error.empty();
  std::vector<std::string> fields = {
      std::string(to_string(r.id)),
      params_to_string(r.params, r.digits),
      ok ? r.lhs.value.to_string(r.digits) : "",
      ok ? r.rhs.value.to_string(r.digits) : "",
      ok ? r.residual.to_string(kErrDigits) : "",
      tol.str(),
      r.pass ? "true" : "false",
      ok ? r.lhs.err.to_string(kErrDigits) : "",
      ok ? r.rhs.err.to_string(kErrDigits) : "",
      std::to_string(r.digits),
      timings ? nlohmann::json(r.wall_time).dump() : "",
      r.error,
  };
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line;
}

std::string report_summary(const IdentityReport& r) {
  std::string s = std::string(to_string(r.id)) + " " + params_to_string(r.params, r.digits) + ": ";
  if (!r.error.empty()) return s + "ERROR " + r.error;
  s += r.pass ? "PASS" : "FAIL";
  s += " residual=" + r.residual.to_string(3);
  s += " lhs=" + r.lhs.value.to_string(r.digits) + " (err " + r.lhs.err.to_string(2) + ")";
  s += " rhs=" + r.rhs.value.to_string(r.digits) + " (err " + r.rhs.err.to_string(2) + ")";
  return s;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

std::string field(const std::string& prefix, const std::string& key) { return prefix + "." + key; }

std::vector<int> int_list(const json& j, const std::string& name) {
  std::vector<int> out;
  if (j.is_number_integer()) {
    out.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer()) throw DomainError(name + "[" + std::to_string(i) + "]: expected an integer");
      out.push_back(j[i].get<int>());
    }
  } else if (j.is_object()) {
    if (!j.contains("from") || !j.contains("to") || !j["from"].is_number_integer() || !j["to"].is_number_integer())
      throw DomainError(name + ": a range needs integer 'from' and 'to'");
    for (int v = j["from"].get<int>(); v <= j["to"].get<int>(); ++v) out.push_back(v);
  } else {
    throw DomainError(name + ": expected an integer, a list or a {from, to} range");
  }
  return out;
}

std::vector<Complex> complex_list(const json& j, const std::string& name, bool positive_real) {
  std::vector<json> items;
  if (j.is_array()) {
    items.assign(j.begin(), j.end());
  } else {
    items.push_back(j);
  }
  std::vector<Complex> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string at = name + "[" + std::to_string(i) + "]";
    if (!items[i].is_string()) throw DomainError(at + ": expected a decimal string such as \"0.75+0.25i\"");
    const auto text = items[i].get<std::string>();
    Complex z;
    try {
      z = Complex::parse(text);
    } catch (const Error& e) {
      throw DomainError(at + ": " + e.what());
    }
    if (positive_real && z.re.sign() <= 0)
      throw DomainError(at + ": real part must be positive (got " + text + ")");
    out.push_back(std::move(z));
  }
  return out;
}

struct Requirement {
  bool n, m, k, alpha, beta, x, level;
};

Requirement requirement_for(IdentityId id) {
  switch (id) {
    case IdentityId::prop1: return {true, true, false, true, true, false, false};
    case IdentityId::cor2:
    case IdentityId::prop3: return {true, false, true, true, false, false, false};
    case IdentityId::sum_formula: return {true, false, true, false, false, false, false};
    case IdentityId::gf_prop1: return {true, false, false, true, true, true, false};
    case IdentityId::gf_prop3: return {true, false, false, true, false, true, false};
    case IdentityId::cov_eq4: return {true, false, false, true, true, true, true};
    case IdentityId::cov_eq6:
    case IdentityId::eq7_series:
    case IdentityId::integral_prop3: return {true, false, false, true, false, true, true};
    case IdentityId::integral_prop1: return {true, false, false, true, true, true, true};
  }
  return {};
}

constexpr int kDefaultLevel = 6;

}  // namespace

ScanConfig parse_scan_config(const json& j, int default_digits) {
  if (!j.is_object()) throw DomainError("config: expected a JSON object");
  ScanConfig c;
  c.digits = default_digits;
  for (const auto& [key, value] : j.items()) {
    if (key == "digits") {
      if (!value.is_number_integer()) throw DomainError("digits: expected an integer");
      c.digits = value.get<int>();
    } else if (key == "tol") {
      if (!value.is_number()) throw DomainError("tol: expected a number");
      c.tol = value.get<double>();
    } else if (key == "jobs") {
      if (!value.is_number_integer() || value.get<int>() < 0) throw DomainError("jobs: expected a nonnegative integer");
      c.jobs = value.get<int>();
    } else if (key == "timings") {
      if (!value.is_boolean()) throw DomainError("timings: expected true or false");
      c.timings = value.get<bool>();
    } else if (key == "output") {
      if (!value.is_string()) throw DomainError("output: expected a path string");
      c.output = value.get<std::string>();
    } else if (key == "format") {
      const auto f = value.is_string() ? value.get<std::string>() : "";
      if (f == "jsonl" || f == "json")
        c.format = ReportFormat::jsonl;
      else if (f == "csv")
        c.format = ReportFormat::csv;
      else
        throw DomainError("format: expected \"jsonl\" or \"csv\"");
    } else if (key == "plan" || key == "checks") {
      continue;
    } else {
      throw DomainError(key + ": unknown config field");
    }
  }
  if (c.digits < 20) throw DomainError("digits: must be >= 20 (got " + std::to_string(c.digits) + ")");
  if (!(c.tol > 0)) throw DomainError("tol: must be positive");
  PrecisionScope scope(PrecisionContext(c.digits));

  if (j.contains("plan")) {
    const auto& p = j["plan"];
    if (!p.is_object()) throw DomainError("plan: expected an object");
    for (const auto& [key, value] : p.items()) {
      if (key == "cutoffs") {
        c.plan.cutoffs.clear();
        for (int v : int_list(value, "plan.cutoffs")) c.plan.cutoffs.push_back(v);
      } else if (key == "tail") {
        const auto t = value.is_string() ? value.get<std::string>() : "";
        if (t == "euler_maclaurin")
          c.plan.tail = TailModel::euler_maclaurin;
        else if (t == "extrapolate")
          c.plan.tail = TailModel::extrapolate;
        else
          throw DomainError("plan.tail: expected \"euler_maclaurin\" or \"extrapolate\"");
      } else if (key == "target_tol") {
        if (!value.is_number()) throw DomainError("plan.target_tol: expected a number");
        c.plan.target_tol = value.get<double>();
      } else {
        throw DomainError("plan." + key + ": unknown plan field");
      }
    }
    try {
      c.plan.validate();
    } catch (const Error& e) {
      throw DomainError(std::string("plan: ") + e.what());
    }
  }

  if (j.contains("checks")) {
    const auto& checks = j["checks"];
    if (!checks.is_array()) throw DomainError("checks: expected a list");
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const std::string at = "checks[" + std::to_string(i) + "]";
      const auto& item = checks[i];
      if (!item.is_object() || !item.contains("id") || !item["id"].is_string())
        throw DomainError(at + ": needs a string 'id'");
      CheckGrid g;
      try {
        g.id = parse_identity_id(item["id"].get<std::string>());
      } catch (const Error& e) {
        throw DomainError(field(at, "id") + ": " + e.what());
      }
      const Requirement req = requirement_for(g.id);
      auto need = [&](bool required, const char* key) {
        if (required && !item.contains(key))
          throw DomainError(field(at, key) + ": required for " + std::string(to_string(g.id)));
        if (!required && item.contains(key) && !(std::string(key) == "X" || std::string(key) == "level"))
          throw DomainError(field(at, key) + ": not used by " + std::string(to_string(g.id)));
      };
      for (const auto& [key, value] : item.items())
        if (key != "id" && key != "n" && key != "m" && key != "k" && key != "alpha" && key != "beta" && key != "X" &&
            key != "level")
          throw DomainError(field(at, key) + ": unknown check field");
      need(req.n, "n");
      need(req.m, "m");
      need(req.k, "k");
      need(req.alpha, "alpha");
      need(req.beta, "beta");
      if (req.n) g.n = int_list(item["n"], field(at, "n"));
      if (req.m) g.m = int_list(item["m"], field(at, "m"));
      if (req.k) g.k = int_list(item["k"], field(at, "k"));
      if (req.alpha) g.alpha = complex_list(item["alpha"], field(at, "alpha"), true);
      if (req.beta) g.beta = complex_list(item["beta"], field(at, "beta"), true);
      if (item.contains("X")) {
        if (!req.x) throw DomainError(field(at, "X") + ": not used by " + std::string(to_string(g.id)));
        g.x = complex_list(item["X"], field(at, "X"), false);
      } else if (req.x) {
        g.x.push_back(Complex(0));
      }
      if (item.contains("level")) {
        if (!req.level) throw DomainError(field(at, "level") + ": not used by " + std::string(to_string(g.id)));
        g.level = int_list(item["level"], field(at, "level"));
        for (int v : g.level)
          if (v < 2 || v > 16) throw DomainError(field(at, "level") + ": levels must lie in [2, 16]");
      } else if (req.level) {
        g.level.push_back(kDefaultLevel);
      }
      for (int v : g.n)
        if (v < 1) throw DomainError(field(at, "n") + ": values must be >= 1");
      for (int v : g.m)
        if (v < 1) throw DomainError(field(at, "m") + ": values must be >= 1");
      for (int v : g.k)
        if (v < 2) throw DomainError(field(at, "k") + ": values must be >= 2");
      c.checks.push_back(std::move(g));
    }
  }
  return c;
}

ScanConfig load_scan_config(const std::string& path, int default_digits) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("config: invalid JSON (" + std::string(e.what()) + ")");
  }
  return parse_scan_config(j, default_digits);
}

std::vector<CheckPoint> expand_grid(const ScanConfig& config) {
  std::vector<CheckPoint> out;
  auto opt_ints = [](const std::vector<int>& v) {
    std::vector<std::optional<int>> r;
    if (v.empty()) r.emplace_back();
    for (int x : v) r.emplace_back(x);
    return r;
  };
  auto opt_complex = [](const std::vector<Complex>& v) {
    std::vector<std::optional<Complex>> r;
    if (v.empty()) r.emplace_back();
    for (const auto& x : v) r.emplace_back(x);
    return r;
  };
  for (const auto& g : config.checks) {
    const bool has_k = !g.k.empty();
    for (const auto& n : opt_ints(g.n))
      for (const auto& m : opt_ints(g.m))
        for (const auto& k : opt_ints(g.k)) {
          if (has_k && !(*n < *k)) continue;
          for (const auto& a : opt_complex(g.alpha))
            for (const auto& b : opt_complex(g.beta))
              for (const auto& x : opt_complex(g.x))
                for (const auto& level : opt_ints(g.level)) out.push_back({g.id, {n, m, k, a, b, x, level}});
        }
  }
  return out;
}

IdentityReport run_point(const CheckPoint& point, const CheckOptions& opts) {
  const auto& p = point.params;
  try {
    switch (point.id) {
      case IdentityId::prop1: return check_prop1(*p.n, *p.m, *p.alpha, *p.beta, opts);
      case IdentityId::cor2: return check_cor2(*p.k, *p.n, *p.alpha, opts);
      case IdentityId::prop3: return check_prop3(*p.k, *p.n, *p.alpha, opts);
      case IdentityId::sum_formula: return check_sum_formula(*p.k, *p.n, opts);
      case IdentityId::gf_prop1: return check_gf_prop1(*p.n, *p.alpha, *p.beta, *p.x, opts);
      case IdentityId::gf_prop3: return check_gf_prop3(*p.n, *p.alpha, *p.x, opts);
      case IdentityId::cov_eq4:
        return check_change_of_variables(ChangeOfVariables::eq4, *p.n, *p.alpha, *p.beta, *p.x, *p.level, opts);
      case IdentityId::cov_eq6:
        return check_change_of_variables(ChangeOfVariables::eq6, *p.n, *p.alpha, Complex(), *p.x, *p.level, opts);
      case IdentityId::eq7_series: return check_series_form(*p.n, *p.alpha, *p.x, *p.level, opts);
      case IdentityId::integral_prop1:
        return check_integral(IntegralFamily::prop1, *p.n, *p.alpha, *p.beta, *p.x, *p.level, opts);
      case IdentityId::integral_prop3:
        return check_integral(IntegralFamily::prop3, *p.n, *p.alpha, Complex(), *p.x, *p.level, opts);
    }
  } catch (const Error& e) {
    IdentityReport r;
    r.id = point.id;
    r.params = p;
    r.tol = opts.tol;
    r.digits = opts.ctx.digits;
    r.error = std::string(to_string(e.kind())) + ": " + e.what();
    return r;
  }
  throw DomainError("unhandled identity id");
}

std::vector<IdentityReport> run_scan(const ScanConfig& config, Execution exec) {
  const auto points = expand_grid(config);
  CheckOptions opts;
  opts.tol = config.tol;
  opts.plan = config.plan;
  opts.ctx = PrecisionContext(config.digits);
  opts.exec = exec;
  std::vector<IdentityReport> reports(points.size());
  const long count = static_cast<long>(points.size());
  const int threads = config.jobs > 0 ? config.jobs : 0;
  if (exec == Execution::parallel && threads > 0) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i)
      reports[static_cast<std::size_t>(i)] = run_point(points[static_cast<std::size_t>(i)], opts);
  } else {
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
    for (long i = 0; i < count; ++i)
      reports[static_cast<std::size_t>(i)] = run_point(points[static_cast<std::size_t>(i)], opts);
  }
  return reports;
}

ScanSummary write_reports(const std::vector<IdentityReport>& reports, const ScanConfig& config, std::ostream& out) {
  ScanSummary s;
  if (config.format == ReportFormat::csv) out << csv_header() << '\n';
  for (const auto& r : reports) {
    if (config.format == ReportFormat::csv)
      out << report_to_csv(r, config.timings) << '\n';
    else
      out << report_to_json(r, config.timings).dump() << '\n';
    ++s.total;
    if (!r.error.empty())
      ++s.errored;
    else if (r.pass)
      ++s.passed;
    else
      ++s.failed;
  }
  return s;
}

}  // namespace mzv

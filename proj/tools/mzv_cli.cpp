// mzv: verify multiple zeta sum formulas, evaluate the underlying series and
// run parameter scans.

#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mzv/identities.hpp"
#include "mzv/multiseries.hpp"
#include "mzv/quadrature.hpp"
#include "mzv/report.hpp"
#include "mzv/taylor.hpp"

namespace {

using namespace mzv;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Globals {
  int digits = 40;
  double tol = 1e-10;
  bool json = false;
  int jobs = 0;
  std::vector<long> cutoffs;
  std::string tail;
  double target_tol = 0;
};

struct Params {
  int n = 0;
  int m = 0;
  int k = 0;
  std::string s;
  std::string alpha = "1";
  std::string beta = "1";
  std::string x = "0";
  std::string variant = "prop1";
  std::string which;
  int level = 6;
};

CheckOptions make_options(const Globals& g) {
  CheckOptions opts;
  opts.ctx = PrecisionContext(g.digits);
  opts.tol = g.tol;
  if (!g.cutoffs.empty()) opts.plan.cutoffs = g.cutoffs;
  if (g.tail == "extrapolate")
    opts.plan.tail = TailModel::extrapolate;
  else if (!g.tail.empty() && g.tail != "euler_maclaurin")
    throw DomainError("--tail must be euler_maclaurin or extrapolate");
  if (g.target_tol > 0) opts.plan.target_tol = g.target_tol;
  opts.plan.validate();
  return opts;
}

int emit(const std::vector<IdentityReport>& reports, const Globals& g) {
  int rc = kExitPass;
  for (const auto& r : reports) {
    std::cout << report_summary(r) << '\n';
    if (g.json) std::cout << report_to_json(r, true).dump() << '\n';
    if (!r.error.empty())
      rc = kExitError;
    else if (!r.pass && rc == kExitPass)
      rc = kExitFail;
  }
  return rc;
}

void print_value(const SeriesValue& v, const Globals& g) {
  if (g.json) {
    nlohmann::ordered_json j;
    j["value"] = v.value.to_string(g.digits);
    j["err"] = v.err.to_string(6);
    j["cutoff"] = v.cutoff;
    j["method"] = std::string(to_string(v.method));
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << "value  = " << v.value.to_string(g.digits) << '\n'
            << "err    = " << v.err.to_string(3) << '\n'
            << "cutoff = " << v.cutoff << '\n'
            << "method = " << to_string(v.method) << '\n';
}

void add_int(CLI::App* app, const char* name, int& target, const char* help) {
  app->add_option(name, target, help)->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-precision verification of generalized sum formulas for multiple zeta values"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--digits", g.digits, "working precision in decimal digits (>= 20)")
      ->envname("MZV_DIGITS")
      ->check(CLI::Range(20, 100000));
  app.add_option("--tol", g.tol, "pass tolerance for identity residuals")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "also print JSON reports");
  app.add_option("--jobs", g.jobs, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--cutoffs", g.cutoffs, "cutoff schedule, e.g. 2000,4000,8000,16000")->delimiter(',');
  app.add_option("--tail", g.tail, "tail model: euler_maclaurin or extrapolate");
  app.add_option("--target-tol", g.target_tol, "extrapolation spread allowed before failing");

  Params p;
  int rc = kExitPass;
  auto sub = [](CLI::App* parent, const char* name, const char* help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  auto* verify = sub(&app, "verify", "check one identity");
  verify->require_subcommand(1);
  auto* v_prop1 = sub(verify, "prop1", "double-pole series against the weighted multiple series");
  add_int(v_prop1, "--n", p.n, "n >= 1");
  add_int(v_prop1, "--m", p.m, "m >= 1");
  v_prop1->add_option("--alpha", p.alpha, "complex, Re > 0")->required();
  v_prop1->add_option("--beta", p.beta, "complex, Re > 0")->required();
  auto* v_cor2 = sub(verify, "cor2", "Hurwitz zeta against the cor2 weighted sums");
  add_int(v_cor2, "--k", p.k, "weight k");
  add_int(v_cor2, "--n", p.n, "depth 0 < n < k");
  v_cor2->add_option("--alpha", p.alpha, "complex, Re > 0")->required();
  auto* v_prop3 = sub(verify, "prop3", "multiple Hurwitz sums against the Pochhammer-ratio derivative series");
  add_int(v_prop3, "--k", p.k, "weight k");
  add_int(v_prop3, "--n", p.n, "depth 0 < n < k");
  v_prop3->add_option("--alpha", p.alpha, "complex, Re > 0")->required();
  auto* v_sum = sub(verify, "sum-formula", "sum of zeta over compositions against zeta(k)");
  add_int(v_sum, "--k", p.k, "weight k");
  add_int(v_sum, "--n", p.n, "depth 0 < n < k");
  auto* v_gf = sub(verify, "gf", "generating-function form at a numeric X");
  v_gf->add_option("--which", p.which, "prop1 or prop3")->check(CLI::IsMember({"prop1", "prop3"}));
  add_int(v_gf, "--n", p.n, "depth n >= 1");
  v_gf->add_option("--alpha", p.alpha, "complex, Re > 0");
  v_gf->add_option("--beta", p.beta, "complex, Re > 0 (prop1 only)");
  v_gf->add_option("--X,--x", p.x, "complex, |X| < Re/4");

  auto* eval = sub(&app, "eval", "evaluate one series");
  eval->require_subcommand(1);
  auto* e_mzv = sub(eval, "mzv", "multiple zeta value zeta(s1,...,sn), last part >= 2");
  e_mzv->add_option("--s", p.s, "composition, e.g. 1,2")->required();
  auto* e_hur = sub(eval, "hurwitz", "Hurwitz zeta at an integer s >= 2");
  add_int(e_hur, "--s", p.k, "s >= 2");
  e_hur->add_option("--alpha", p.alpha, "complex, Re > 0");
  auto* e_mh = sub(eval, "multiple-hurwitz", "multiple Hurwitz zeta");
  e_mh->add_option("--s", p.s, "composition, e.g. 1,2")->required();
  e_mh->add_option("--alpha", p.alpha, "complex, Re > 0");
  auto* e_w = sub(eval, "weighted", "Pochhammer-weighted multiple series");
  e_w->add_option("--k", p.s, "composition, e.g. 1,2")->required();
  e_w->add_option("--alpha", p.alpha, "complex, Re > 0");
  e_w->add_option("--beta", p.beta, "complex, Re > 0");
  e_w->add_option("--variant", p.variant, "prop1 or cor2")->check(CLI::IsMember({"prop1", "cor2"}));
  e_w->add_option("--X,--x", p.x, "shift X, |X| < Re beta");
  auto* e_p3 = sub(eval, "prop3-rhs", "derivative series sum_l (l+1)^-n [X^(k-n-1)] (1-X)_l/(alpha-X)_{l+1}");
  add_int(e_p3, "--k", p.k, "weight k");
  add_int(e_p3, "--n", p.n, "depth 0 < n < k");
  e_p3->add_option("--alpha", p.alpha, "complex, Re > 0");
  auto* e_int = sub(eval, "integral", "simplex integral by nested tanh-sinh");
  e_int->add_option("--which", p.which, "prop1 or prop3")->required()->check(CLI::IsMember({"prop1", "prop3"}));
  add_int(e_int, "--n", p.n, "depth 1 or 2");
  e_int->add_option("--alpha", p.alpha, "complex, Re > 0");
  e_int->add_option("--beta", p.beta, "complex, Re > 0 (prop1 only)");
  e_int->add_option("--X,--x", p.x, "complex, |X| < Re/4");
  e_int->add_option("--level", p.level, "quadrature level (step 2^(2-level))");

  auto* oracle = sub(&app, "oracle", "quadrature cross-checks");
  oracle->require_subcommand(1);
  auto* o_int = sub(oracle, "integral", "simplex integral against its series value");
  o_int->add_option("--which", p.which, "prop1 or prop3")->required()->check(CLI::IsMember({"prop1", "prop3"}));
  add_int(o_int, "--n", p.n, "depth 1 or 2");
  o_int->add_option("--alpha", p.alpha, "complex, Re > 0");
  o_int->add_option("--beta", p.beta, "complex, Re > 0 (prop1 only)");
  o_int->add_option("--X,--x", p.x, "complex, |X| < Re/4");
  o_int->add_option("--level", p.level, "quadrature level");
  auto* o_cov = sub(oracle, "change-of-vars", "t_i -> 1 - t_{n-i} symmetry of the simplex integrals");
  o_cov->add_option("--which", p.which, "eq4 (prop1 family) or eq6 (prop3 family)")
      ->required()
      ->check(CLI::IsMember({"eq4", "eq6"}));
  add_int(o_cov, "--n", p.n, "depth 1 or 2");
  o_cov->add_option("--alpha", p.alpha, "complex, Re > 0");
  o_cov->add_option("--beta", p.beta, "complex, Re > 0 (eq4 only)");
  o_cov->add_option("--X,--x", p.x, "complex, |X| < Re/4");
  o_cov->add_option("--level", p.level, "quadrature level");

  auto* scan = sub(&app, "scan", "run a parameter grid from a JSON config");
  std::string config_path;
  scan->add_option("--config", config_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (g.jobs > 0) omp_set_num_threads(g.jobs);
    CheckOptions opts = make_options(g);
    PrecisionScope scope(opts.ctx);
    auto cx = [](const std::string& s) { return Complex::parse(s); };

    if (*verify) {
      std::vector<IdentityReport> reports;
      if (*v_prop1) reports.push_back(check_prop1(p.n, p.m, cx(p.alpha), cx(p.beta), opts));
      if (*v_cor2) reports.push_back(check_cor2(p.k, p.n, cx(p.alpha), opts));
      if (*v_prop3) reports.push_back(check_prop3(p.k, p.n, cx(p.alpha), opts));
      if (*v_sum) reports.push_back(check_sum_formula(p.k, p.n, opts));
      if (*v_gf) {
        if (p.which == "prop3")
          reports.push_back(check_gf_prop3(p.n, cx(p.alpha), cx(p.x), opts));
        else
          reports.push_back(check_gf_prop1(p.n, cx(p.alpha), cx(p.beta), cx(p.x), opts));
      }
      rc = emit(reports, g);
    } else if (*eval) {
      if (*e_mzv) print_value(multiple_hurwitz_zeta(Composition::parse(p.s), Complex(1), opts.plan, opts.ctx), g);
      if (*e_hur) print_value(hurwitz_zeta(p.k, cx(p.alpha), opts.ctx), g);
      if (*e_mh) print_value(multiple_hurwitz_zeta(Composition::parse(p.s), cx(p.alpha), opts.plan, opts.ctx), g);
      if (*e_w)
        print_value(weighted_multiple_series(Composition::parse(p.s), cx(p.alpha), cx(p.beta),
                                             parse_weight_variant(p.variant), cx(p.x), opts.plan, opts.ctx),
                    g);
      if (*e_p3) print_value(prop3_rhs(p.k, p.n, cx(p.alpha), opts.plan, opts.ctx), g);
      if (*e_int) {
        const QuadResult q = p.which == "prop1" ? iterated_integral_prop1(p.n, cx(p.alpha), cx(p.beta), cx(p.x), p.level)
                                                : iterated_integral_prop3(p.n, cx(p.alpha), cx(p.x), p.level);
        print_value(to_series_value(q), g);
      }
    } else if (*oracle) {
      std::vector<IdentityReport> reports;
      if (*o_int) {
        const auto family = p.which == "prop1" ? IntegralFamily::prop1 : IntegralFamily::prop3;
        reports.push_back(check_integral(family, p.n, cx(p.alpha), cx(p.beta), cx(p.x), p.level, opts));
      }
      if (*o_cov) {
        if (p.which == "eq4") {
          reports.push_back(
              check_change_of_variables(ChangeOfVariables::eq4, p.n, cx(p.alpha), cx(p.beta), cx(p.x), p.level, opts));
        } else {
          reports.push_back(
              check_change_of_variables(ChangeOfVariables::eq6, p.n, cx(p.alpha), Complex(), cx(p.x), p.level, opts));
          reports.push_back(check_series_form(p.n, cx(p.alpha), cx(p.x), p.level, opts));
        }
      }
      rc = emit(reports, g);
    } else if (*scan) {
      ScanConfig config = load_scan_config(config_path, g.digits);
      if (app.get_option("--digits")->count() > 0) config.digits = g.digits;
      if (app.get_option("--tol")->count() > 0) config.tol = g.tol;
      if (g.jobs > 0) config.jobs = g.jobs;
      if (!g.cutoffs.empty() || !g.tail.empty() || g.target_tol > 0) config.plan = opts.plan;
      const auto reports = run_scan(config, Execution::parallel);
      ScanSummary summary;
      if (config.output.empty()) {
        summary = write_reports(reports, config, std::cout);
      } else {
        std::ofstream out(config.output, std::ios::binary);
        if (!out) throw DomainError("output: cannot write '" + config.output + "'");
        summary = write_reports(reports, config, out);
      }
      std::ostream& log = config.output.empty() ? std::cerr : std::cout;
      log << summary.total << " checks: " << summary.passed << " passed, " << summary.failed << " failed, "
          << summary.errored << " errors\n";
      rc = summary.passed == summary.total ? kExitPass : kExitFail;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return rc;
}

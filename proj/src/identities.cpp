#include "mzv/identities.hpp"

#include <chrono>
#include <exception>
#include <string>

#include "mzv/taylor.hpp"

namespace mzv {

namespace {

constexpr std::pair<IdentityId, std::string_view> kIdentityNames[] = {
    {IdentityId::prop1, "prop1"},       {IdentityId::cor2, "cor2"},         {IdentityId::prop3, "prop3"},
    {IdentityId::sum_formula, "sum_formula"}, {IdentityId::gf_prop1, "gf_prop1"}, {IdentityId::gf_prop3, "gf_prop3"},
    {IdentityId::cov_eq4, "cov_eq4"},   {IdentityId::cov_eq6, "cov_eq6"},   {IdentityId::eq7_series, "eq7_series"},
    {IdentityId::integral_prop1, "integral_prop1"}, {IdentityId::integral_prop3, "integral_prop3"},
};

}  // namespace

std::string_view to_string(IdentityId id) noexcept {
  for (const auto& [key, name] : kIdentityNames)
    if (key == id) return name;
  return "unknown";
}

IdentityId parse_identity_id(std::string_view text) {
  for (const auto& [key, name] : kIdentityNames)
    if (name == text) return key;
  if (text == "sum-formula") return IdentityId::sum_formula;
  throw DomainError("unknown identity id '" + std::string(text) + "'");
}

void finalize_report(IdentityReport& report) {
  if (!report.error.empty()) {
    report.pass = false;
    return;
  }
  report.residual = abs(report.lhs.value - report.rhs.value);
  const Real allowed = max(Real(report.tol), (report.lhs.err + report.rhs.err) * 10);
  report.pass = report.residual <= allowed;
}

SeriesValue composition_sum(const std::vector<Composition>& comps,
                            const std::function<SeriesValue(const Composition&)>& eval, Execution exec) {
  const long count = static_cast<long>(comps.size());
  std::vector<SeriesValue> slots(comps.size());
  std::vector<std::exception_ptr> failures(comps.size());
  const mpfr_prec_t bits = working_bits();
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel && count > 1)
  for (long i = 0; i < count; ++i) {
    PrecisionScope scope(bits);
    try {
      slots[static_cast<std::size_t>(i)] = eval(comps[static_cast<std::size_t>(i)]);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  SeriesValue total;
  for (const auto& s : slots) {
    total.value += s.value;
    total.err += s.err;
    total.cutoff = std::max(total.cutoff, s.cutoff);
    total.method = s.method;
  }
  return total;
}

namespace {

template <class Body>
IdentityReport run_check(IdentityId id, IdentityParams params, const CheckOptions& opts, Body body) {
  if (!(opts.tol > 0)) throw DomainError("tolerance must be positive");
  IdentityReport report;
  report.id = id;
  report.params = std::move(params);
  report.tol = opts.tol;
  report.digits = opts.ctx.digits;
  const auto start = std::chrono::steady_clock::now();
  PrecisionScope scope(opts.ctx);
  try {
    body(report);
  } catch (const DomainError&) {
    throw;
  } catch (const Error& e) {
    report.error = std::string(to_string(e.kind())) + ": " + e.what();
  }
  finalize_report(report);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void require_kn(int k, int n) {
  if (!(0 < n && n < k)) throw DomainError("need 0 < n < k (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

void require_positive(const Complex& z, const char* name) {
  if (z.re.sign() <= 0) throw DomainError(std::string(name) + " must have positive real part (got " + z.to_string(12) + ")");
}

}  // namespace

SeriesValue cor2_weighted_sum(int k, int n, const Complex& alpha, const CheckOptions& opts) {
  require_kn(k, n);
  require_positive(alpha, "alpha");
  PrecisionScope scope(opts.ctx);
  return composition_sum(
      all_compositions(k, n, 2),
      [&](const Composition& c) {
        return weighted_multiple_series(c, alpha, alpha, WeightVariant::cor2, Complex(0), opts.plan, opts.ctx);
      },
      opts.exec);
}

SeriesValue prop3_hurwitz_sum(int k, int n, const Complex& alpha, const CheckOptions& opts) {
  require_kn(k, n);
  require_positive(alpha, "alpha");
  PrecisionScope scope(opts.ctx);
  return composition_sum(
      all_compositions(k, n, 2),
      [&](const Composition& c) { return multiple_hurwitz_zeta(c, alpha, opts.plan, opts.ctx); }, opts.exec);
}

IdentityReport check_prop1(int n, int m, const Complex& alpha, const Complex& beta, const CheckOptions& opts) {
  if (n < 1 || m < 1) throw DomainError("prop1 needs n, m >= 1");
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  IdentityParams p;
  p.n = n;
  p.m = m;
  p.alpha = alpha;
  p.beta = beta;
  return run_check(IdentityId::prop1, p, opts, [&](IdentityReport& r) {
    r.lhs = lhs_double_pole(n, m, alpha, beta, opts.ctx);
    r.rhs = composition_sum(
        all_compositions(m + n - 1, n, 1),
        [&](const Composition& c) {
          return weighted_multiple_series(c, alpha, beta, WeightVariant::prop1, Complex(0), opts.plan, opts.ctx);
        },
        opts.exec);
  });
}

IdentityReport check_cor2(int k, int n, const Complex& alpha, const CheckOptions& opts) {
  require_kn(k, n);
  require_positive(alpha, "alpha");
  IdentityParams p;
  p.k = k;
  p.n = n;
  p.alpha = alpha;
  return run_check(IdentityId::cor2, p, opts, [&](IdentityReport& r) {
    r.lhs = hurwitz_zeta(k, alpha, opts.ctx);
    r.rhs = cor2_weighted_sum(k, n, alpha, opts);
  });
}

IdentityReport check_prop3(int k, int n, const Complex& alpha, const CheckOptions& opts) {
  require_kn(k, n);
  require_positive(alpha, "alpha");
  IdentityParams p;
  p.k = k;
  p.n = n;
  p.alpha = alpha;
  return run_check(IdentityId::prop3, p, opts, [&](IdentityReport& r) {
    r.lhs = prop3_hurwitz_sum(k, n, alpha, opts);
    r.rhs = prop3_rhs(k, n, alpha, opts.plan, opts.ctx);
  });
}

IdentityReport check_sum_formula(int k, int n, const CheckOptions& opts) {
  require_kn(k, n);
  IdentityParams p;
  p.k = k;
  p.n = n;
  return run_check(IdentityId::sum_formula, p, opts, [&](IdentityReport& r) {
    const Complex one(1);
    r.lhs = composition_sum(
        all_compositions(k, n, 2),
        [&](const Composition& c) { return multiple_hurwitz_zeta(c, one, opts.plan, opts.ctx); }, opts.exec);
    r.rhs = hurwitz_zeta(k, one, opts.ctx);
  });
}

IdentityReport check_gf_prop1(int n, const Complex& alpha, const Complex& beta, const Complex& x,
                              const CheckOptions& opts) {
  if (n < 1) throw DomainError("gf_prop1 needs n >= 1");
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  {
    PrecisionScope scope(opts.ctx);
    if (!(abs(x) * 4 < beta.re)) throw DomainError("gf_prop1 needs |X| < Re beta/4");
  }
  IdentityParams p;
  p.n = n;
  p.alpha = alpha;
  p.beta = beta;
  p.x = x;
  return run_check(IdentityId::gf_prop1, p, opts, [&](IdentityReport& r) {
    r.lhs = lhs_double_pole(n, 1, alpha, beta - x, opts.ctx);
    const Composition ones(std::vector<int>(static_cast<std::size_t>(n), 1));
    r.rhs = weighted_multiple_series(ones, alpha, beta, WeightVariant::prop1, x, opts.plan, opts.ctx);
  });
}

IdentityReport check_gf_prop3(int n, const Complex& alpha, const Complex& x, const CheckOptions& opts) {
  if (n < 1) throw DomainError("gf_prop3 needs n >= 1");
  require_positive(alpha, "alpha");
  {
    PrecisionScope scope(opts.ctx);
    if (!(abs(x) * 4 < alpha.re)) throw DomainError("gf_prop3 needs |X| < Re alpha/4");
  }
  IdentityParams p;
  p.n = n;
  p.alpha = alpha;
  p.x = x;
  return run_check(IdentityId::gf_prop3, p, opts, [&](IdentityReport& r) {
    // sum over k of X^{k-n-1} times the composition sums, resummed per index:
    // every level gives 1/(m+alpha-X), the last one an extra 1/(m+alpha).
    const Complex shift = alpha - x;
    NestedSeries series;
    series.levels.assign(static_cast<std::size_t>(n), LevelTerm{{}, {{shift, 1}}});
    series.levels.back().powers.push_back({alpha, 1});
    r.lhs = nested_sum(series, opts.plan, opts.ctx);
    r.rhs = ratio_series_sum(n, alpha, x, 0, opts.plan, opts.ctx);
  });
}

}  // namespace mzv

#include "mzv/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mzv/multiseries.hpp"
#include "mzv/taylor.hpp"

namespace mzv {

namespace {

struct Node {
  double x;
  double omx;
  double log_x;
  double log_omx;
  double weight;
  double log_weight;
};

// Past |t| = 5.4 the abscissae sit within ~1e-150 of an endpoint.
constexpr double kTMax = 5.4;

std::vector<Node> tanh_sinh_nodes(int level) {
  if (level < 1 || level > 16) throw DomainError("quadrature level must be in [1, 16]");
  const double h = std::ldexp(1.0, 2 - level);
  const long count = static_cast<long>(std::ceil(kTMax / h));
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(2 * count + 1));
  for (long k = -count; k <= count; ++k) {
    const double t = static_cast<double>(k) * h;
    const double s = std::numbers::pi * std::sinh(t);
    // x = 1/(1+e^-s), 1-x = 1/(1+e^s)
    const double x = 1.0 / (1.0 + std::exp(-s));
    const double omx = 1.0 / (1.0 + std::exp(s));
    if (x <= 0.0 || omx <= 0.0) continue;
    const double w = h * std::numbers::pi * std::cosh(t) * x * omx;
    if (w == 0.0) continue;
    nodes.push_back({x, omx, std::log(x), std::log(omx), w, std::log(w)});
  }
  return nodes;
}

void require_finite_value(const std::complex<double>& v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonFinite("integrand is not finite at an interior quadrature node");
}

std::complex<double> tanh_sinh_sum(const Integrand1D& f, int level) {
  std::complex<double> acc;
  for (const auto& node : tanh_sinh_nodes(level)) {
    const auto v = f(node.x, node.omx);
    require_finite_value(v);
    acc += node.weight * v;
  }
  return acc;
}

/// Exponents of prod_i t_i^{a_i} (1-t_i)^{b_i}, i = 0..n.
struct Exponents {
  std::vector<std::complex<double>> a;
  std::vector<std::complex<double>> b;
};

Exponents exponents_for(SimplexForm form, int n, std::complex<double> alpha, std::complex<double> beta,
                        std::complex<double> x) {
  const auto size = static_cast<std::size_t>(n + 1);
  Exponents e{std::vector<std::complex<double>>(size), std::vector<std::complex<double>>(size)};
  const auto un = static_cast<std::size_t>(n);
  switch (form) {
    case SimplexForm::prop1_gf:
      e.a[0] = -alpha;
      for (std::size_t i = 1; i < un; ++i) e.a[i] = -1.0;
      e.a[un] = alpha - 1.0;
      e.b[0] = beta - 1.0 - x;
      e.b[un] = x - beta;
      break;
    case SimplexForm::prop1_gf_dual:
      e.a[0] = x - beta;
      e.a[un] = beta - x - 1.0;
      e.b[0] = alpha - 1.0;
      for (std::size_t i = 1; i < un; ++i) e.b[i] = -1.0;
      e.b[un] = -alpha;
      break;
    case SimplexForm::prop3_gf:
      e.a[0] = x - 1.0;
      e.a[un] = alpha - x - 1.0;
      for (std::size_t i = 1; i <= un; ++i) e.b[i] = -1.0;
      break;
    case SimplexForm::prop3_gf_dual:
      for (std::size_t i = 0; i < un; ++i) e.a[i] = -1.0;
      e.b[0] = alpha - x - 1.0;
      e.b[un] = x - 1.0;
      break;
  }
  // t_i = t_{i-1} u_i contributes the Jacobian t_0 ... t_{n-1}.
  for (std::size_t i = 0; i < un; ++i) e.a[i] += 1.0;
  return e;
}

class SimplexSum {
 public:
  SimplexSum(const Exponents& e, const std::vector<Node>& nodes) : e_(e), nodes_(nodes) {}

  /// Weighted sum over the remaining variables i..n given t_{i-1} (as log and
  /// complement). Node weights are carried in the exponent so that products of
  /// large integrand values and tiny weights never overflow.
  std::complex<double> inner(std::size_t i, double log_prev, double om_prev, std::complex<double> log_acc) const {
    const double prev = std::exp(log_prev);
    std::complex<double> acc;
    for (const auto& node : nodes_) {
      const double log_t = log_prev + node.log_x;
      const double om_t = om_prev + prev * node.omx;
      const std::complex<double> log_f =
          log_acc + node.log_weight + e_.a[i] * log_t + e_.b[i] * std::log(om_t);
      const auto v = i + 1 == e_.a.size() ? std::exp(log_f) : inner(i + 1, log_t, om_t, log_f);
      require_finite_value(v);
      acc += v;
    }
    return acc;
  }

  std::complex<double> outer_node(std::size_t k) const {
    const Node& node = nodes_[k];
    const std::complex<double> log_f = node.log_weight + e_.a[0] * node.log_x + e_.b[0] * node.log_omx;
    return inner(1, node.log_x, node.omx, log_f);
  }

 private:
  const Exponents& e_;
  const std::vector<Node>& nodes_;
};

std::complex<double> simplex_sum(const Exponents& e, int level, Execution exec) {
  const auto nodes = tanh_sinh_nodes(level);
  SimplexSum sum(e, nodes);
  const long count = static_cast<long>(nodes.size());
  std::vector<std::complex<double>> slots(nodes.size());
  std::vector<std::exception_ptr> failures(nodes.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Execution::parallel)
  for (long k = 0; k < count; ++k) {
    try {
      slots[static_cast<std::size_t>(k)] = sum.outer_node(static_cast<std::size_t>(k));
    } catch (...) {
      failures[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  std::complex<double> total;
  for (const auto& s : slots) total += s;
  return total;
}

std::complex<double> to_std(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

void check_level(int level) {
  if (level < 2 || level > 16) throw DomainError("quadrature level must be in [2, 16]");
}

}  // namespace

QuadResult tanh_sinh(const Integrand1D& f, int level) {
  check_level(level);
  const auto fine = tanh_sinh_sum(f, level);
  const auto coarse = tanh_sinh_sum(f, level - 1);
  return {fine, std::abs(fine - coarse), level};
}

QuadResult simplex_integral(SimplexForm form, int n, std::complex<double> alpha, std::complex<double> beta,
                            std::complex<double> x, int level, Execution exec) {
  if (n < 1) throw DomainError("simplex integral needs n >= 1");
  if (n > 2) throw DepthUnsupported("simplex integrals are limited to n <= 2 (got n=" + std::to_string(n) + ")");
  check_level(level);
  const auto e = exponents_for(form, n, alpha, beta, x);
  const auto fine = simplex_sum(e, level, exec);
  const auto coarse = simplex_sum(e, level - 1, exec);
  return {fine, std::abs(fine - coarse), level};
}

namespace {

void require_prop1_domain(const Complex& alpha, const Complex& beta, const Complex& x) {
  if (alpha.re.sign() <= 0 || beta.re.sign() <= 0) throw DomainError("alpha and beta need positive real parts");
  if (!(abs(x) * 4 < beta.re)) throw DomainError("need |X| < Re beta/4");
}

void require_prop3_domain(const Complex& alpha, const Complex& x) {
  if (alpha.re.sign() <= 0) throw DomainError("alpha needs a positive real part");
  if (!(abs(x) * 4 < alpha.re)) throw DomainError("need |X| < Re alpha/4");
}

}  // namespace

QuadResult iterated_integral_prop1(int n, const Complex& alpha, const Complex& beta, const Complex& x, int level) {
  require_prop1_domain(alpha, beta, x);
  return simplex_integral(SimplexForm::prop1_gf, n, to_std(alpha), to_std(beta), to_std(x), level);
}

QuadResult iterated_integral_prop3(int n, const Complex& alpha, const Complex& x, int level) {
  require_prop3_domain(alpha, x);
  return simplex_integral(SimplexForm::prop3_gf, n, to_std(alpha), {}, to_std(x), level);
}

SeriesValue to_series_value(const QuadResult& q) {
  SeriesValue v;
  v.value = Complex(Real(q.value.real()), Real(q.value.imag()));
  v.err = Real(q.err);
  v.cutoff = q.levels;
  v.method = SeriesMethod::quadrature;
  return v;
}

namespace {

template <class Body>
IdentityReport run_quadrature_check(IdentityId id, IdentityParams params, const CheckOptions& opts, Body body) {
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

}  // namespace

IdentityReport check_change_of_variables(ChangeOfVariables which, int n, const Complex& alpha, const Complex& beta,
                                         const Complex& x, int level, const CheckOptions& opts) {
  IdentityParams p;
  p.n = n;
  p.alpha = alpha;
  p.x = x;
  p.level = level;
  {
    PrecisionScope scope(opts.ctx);
    if (which == ChangeOfVariables::eq4) {
      require_prop1_domain(alpha, beta, x);
      p.beta = beta;
    } else {
      require_prop3_domain(alpha, x);
    }
  }
  const SimplexForm left = which == ChangeOfVariables::eq4 ? SimplexForm::prop1_gf : SimplexForm::prop3_gf;
  const SimplexForm right = which == ChangeOfVariables::eq4 ? SimplexForm::prop1_gf_dual : SimplexForm::prop3_gf_dual;
  const IdentityId id = which == ChangeOfVariables::eq4 ? IdentityId::cov_eq4 : IdentityId::cov_eq6;
  return run_quadrature_check(id, p, opts, [&](IdentityReport& r) {
    const auto b = which == ChangeOfVariables::eq4 ? to_std(beta) : std::complex<double>{};
    r.lhs = to_series_value(simplex_integral(left, n, to_std(alpha), b, to_std(x), level, opts.exec));
    r.rhs = to_series_value(simplex_integral(right, n, to_std(alpha), b, to_std(x), level, opts.exec));
  });
}

IdentityReport check_series_form(int n, const Complex& alpha, const Complex& x, int level, const CheckOptions& opts) {
  {
    PrecisionScope scope(opts.ctx);
    require_prop3_domain(alpha, x);
  }
  IdentityParams p;
  p.n = n;
  p.alpha = alpha;
  p.x = x;
  p.level = level;
  return run_quadrature_check(IdentityId::eq7_series, p, opts, [&](IdentityReport& r) {
    r.lhs = to_series_value(
        simplex_integral(SimplexForm::prop3_gf_dual, n, to_std(alpha), {}, to_std(x), level, opts.exec));
    r.rhs = ratio_series_sum(n, alpha, x, 0, opts.plan, opts.ctx);
  });
}

IdentityReport check_integral(IntegralFamily family, int n, const Complex& alpha, const Complex& beta,
                              const Complex& x, int level, const CheckOptions& opts) {
  IdentityParams p;
  p.n = n;
  p.alpha = alpha;
  p.x = x;
  p.level = level;
  {
    PrecisionScope scope(opts.ctx);
    if (family == IntegralFamily::prop1) {
      require_prop1_domain(alpha, beta, x);
      p.beta = beta;
    } else {
      require_prop3_domain(alpha, x);
    }
  }
  const IdentityId id = family == IntegralFamily::prop1 ? IdentityId::integral_prop1 : IdentityId::integral_prop3;
  return run_quadrature_check(id, p, opts, [&](IdentityReport& r) {
    if (family == IntegralFamily::prop1) {
      r.lhs = to_series_value(
          simplex_integral(SimplexForm::prop1_gf, n, to_std(alpha), to_std(beta), to_std(x), level, opts.exec));
      r.rhs = lhs_double_pole(n, 1, alpha, beta - x, opts.ctx);
    } else {
      r.lhs = to_series_value(simplex_integral(SimplexForm::prop3_gf, n, to_std(alpha), {}, to_std(x), level, opts.exec));
      r.rhs = ratio_series_sum(n, alpha, x, 0, opts.plan, opts.ctx);
    }
  });
}

}  // namespace mzv

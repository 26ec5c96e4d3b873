#include "mzv/special.hpp"

#include <cmath>
#include <map>
#include <string>

namespace mzv {

std::string_view to_string(SeriesMethod method) noexcept {
  switch (method) {
    case SeriesMethod::direct: return "direct";
    case SeriesMethod::euler_maclaurin: return "euler_maclaurin";
    case SeriesMethod::extrapolated: return "extrapolated";
    case SeriesMethod::partial_fraction: return "partial_fraction";
    case SeriesMethod::taylor: return "taylor";
    case SeriesMethod::quadrature: return "quadrature";
  }
  return "direct";
}

Complex pochhammer(const Complex& a, long m, const PrecisionContext& ctx) {
  if (m < 0) throw DomainError("pochhammer: negative length " + std::to_string(m));
  PrecisionScope scope(ctx);
  Complex result(Real(1));
  for (long i = 0; i < m; ++i) {
    result *= a + i;
    if (!result.is_finite()) throw OverflowError("pochhammer: magnitude exceeds the exponent range");
  }
  return result;
}

namespace {

std::vector<Real> bernoulli_recurrence(int count) {
  // B_n = -1/(n+1) sum_{j<n} C(n+1, j) B_j
  std::vector<Real> b;
  b.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    if (n == 0) {
      b.emplace_back(1);
      continue;
    }
    if (n > 1 && n % 2 == 1) {
      b.emplace_back(0);
      continue;
    }
    Real acc;
    Real binom = 1;  // C(n+1, j)
    for (int j = 0; j < n; ++j) {
      acc += binom * b[static_cast<std::size_t>(j)];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    b.push_back(-acc / (n + 1));
  }
  return b;
}

}  // namespace

std::vector<Real> bernoulli_numbers(int count, const PrecisionContext& ctx) {
  if (count < 1) throw DomainError("bernoulli_numbers: count must be >= 1");
  PrecisionScope scope(ctx);
  return bernoulli_recurrence(count);
}

const std::vector<Real>& bernoulli_table(int count) {
  thread_local std::map<mpfr_prec_t, std::vector<Real>> cache;
  auto& table = cache[working_bits()];
  if (static_cast<int>(table.size()) < count) {
    // Grow geometrically so repeated small extensions stay cheap.
    int target = std::max(count, 2 * static_cast<int>(table.size()));
    table = bernoulli_recurrence(target);
  }
  return table;
}

Complex digamma(const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Real pole_radius = pow10(-ctx.digits);
  if (z.re <= pole_radius) {
    Real nearest = Real(std::round(z.re.to_double()));
    if (nearest.sign() <= 0 && abs(Complex(z.re - nearest, z.im)) < pole_radius)
      throw PoleError("digamma: argument within 1e-" + std::to_string(ctx.digits) +
                      " of the pole at " + nearest.to_string(6));
  }
  const int p = ctx.working_digits();
  // Shift to |w| >= R where the asymptotic error ~ exp(-2 pi R) is below 10^-p.
  const double shift_target = std::max(20.0, 0.5 * p + 10.0);
  Complex w = z;
  Complex acc;
  while (w.re.to_double() < shift_target) {
    acc -= reciprocal(w);
    w = w + 1;
  }
  // psi(w) ~ log w - 1/(2w) - sum_k B_2k / (2k w^2k)
  Complex result = log(w) - reciprocal(w) / 2;
  const Complex inv_w2 = reciprocal(w * w);
  Complex power = inv_w2;
  const Real tiny = pow10(-p) * (abs(result) + 1);
  const auto& bern = bernoulli_table(2 * p + 4);
  for (int k = 1; 2 * k < static_cast<int>(bern.size()); ++k) {
    Complex term = power * bern[static_cast<std::size_t>(2 * k)] / (2 * k);
    result -= term;
    if (abs(term) < tiny) break;
    power *= inv_w2;
  }
  return require_finite(result + acc, "digamma");
}

namespace {

SeriesValue hurwitz_zeta_from(int s, const Complex& a, long n, int terms, const PrecisionContext& ctx) {
  const int p = ctx.working_digits();
  const int omitted = terms + 1;
  const auto& bern = bernoulli_table(2 * terms + 4);
  Complex direct;
  for (long m = n - 1; m >= 0; --m) direct += pow(a + m, -static_cast<long>(s));

  const Complex x = a + n;
  const Complex inv_x = reciprocal(x);
  const Complex inv_x2 = inv_x * inv_x;
  Complex x_pow = pow(inv_x, s - 1);  // x^{1-s}
  Complex tail = x_pow / (s - 1);
  x_pow *= inv_x;  // x^{-s}
  tail += x_pow / 2;
  // term_j = B_2j/(2j)! (s)_{2j-1} x^{-s-2j+1}
  Real coeff = s;  // (s)_{1} / 2!
  coeff /= 2;
  Complex power = x_pow * inv_x;  // x^{-s-1}
  Complex last_term;
  for (int j = 1; j <= omitted; ++j) {
    Complex term = power * (coeff * bern[static_cast<std::size_t>(2 * j)]);
    if (j == omitted) {
      last_term = term;
      break;
    }
    tail += term;
    // (s)_{2j+1}/(2j+2)! from (s)_{2j-1}/(2j)!
    coeff = coeff * ((s + 2 * j - 1) * static_cast<long>(s + 2 * j)) / ((2 * j + 1) * static_cast<long>(2 * j + 2));
    power *= inv_x2;
  }

  SeriesValue out;
  out.value = require_finite(direct + tail, "hurwitz_zeta");
  out.err = abs(last_term) + pow10(-p) * n * (abs(out.value) + 1);
  out.cutoff = n - 1;
  out.method = SeriesMethod::euler_maclaurin;
  return out;
}

void check_hurwitz_args(int s, const Complex& a) {
  if (s < 2) throw DomainError("hurwitz_zeta: exponent must be >= 2 (got " + std::to_string(s) + ")");
  if (a.re.sign() <= 0) throw DomainError("hurwitz_zeta: Re a must be positive");
}

int hurwitz_terms(const PrecisionContext& ctx) { return (ctx.digits + 3) / 4 + 2; }  // ceil(digits/4) + 2

}  // namespace

SeriesValue hurwitz_zeta(int s, const Complex& a, const PrecisionContext& ctx) {
  check_hurwitz_args(s, a);
  PrecisionScope scope(ctx);
  const int p = ctx.working_digits();
  const int terms = hurwitz_terms(ctx);
  const auto& bern = bernoulli_table(2 * terms + 4);

  // Pick N so that the first omitted correction,
  // |B_{2J+2}/(2J+2)! (s)_{2J+1}| |N+a|^{-(s+2J+1)}, drops below 10^-(digits+guard).
  const int omitted = terms + 1;
  double log_coeff = log10_abs(bern[static_cast<std::size_t>(2 * omitted)]);
  for (int i = 1; i <= 2 * omitted; ++i) log_coeff -= std::log10(static_cast<double>(i));
  for (int i = 0; i < 2 * omitted - 1; ++i) log_coeff += std::log10(static_cast<double>(s + i));
  const double decay = s + 2.0 * omitted - 1.0;
  const double min_shift = std::pow(10.0, (log_coeff + p) / decay);
  const long n = std::max<long>(8, static_cast<long>(std::ceil(min_shift - a.re.to_double())) + 1);
  return hurwitz_zeta_from(s, a, n, terms, ctx);
}

SeriesValue hurwitz_zeta(int s, const Complex& a, long cutoff, const PrecisionContext& ctx) {
  check_hurwitz_args(s, a);
  if (cutoff < 1) throw DomainError("hurwitz_zeta: cutoff must be >= 1");
  PrecisionScope scope(ctx);
  return hurwitz_zeta_from(s, a, cutoff, hurwitz_terms(ctx), ctx);
}

}  // namespace mzv

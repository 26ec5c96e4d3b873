#include "mzv/taylor.hpp"

#include <string>

namespace mzv {

TruncSeries::TruncSeries(int order) {
  if (order < 0) throw DomainError("truncated series order must be >= 0");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, Complex());
}

TruncSeries::TruncSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("truncated series needs at least one coefficient");
}

TruncSeries TruncSeries::constant(const Complex& c, int order) {
  TruncSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

namespace {

void require_same_order(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) throw DomainError("truncated series orders differ");
}

}  // namespace

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  require_same_order(*this, o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  require_same_order(*this, o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Complex& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
TruncSeries operator*(TruncSeries a, const Complex& c) { return a *= c; }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  const int d = a.order();
  TruncSeries out(d);
  for (int i = 0; i <= d; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= d; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  if (b[0].is_zero()) throw DivisionByZero("truncated series division by a series with zero constant term");
  const int d = a.order();
  const Complex inv = reciprocal(b[0]);
  TruncSeries out(d);
  for (int j = 0; j <= d; ++j) {
    Complex acc = a[j];
    for (int i = 1; i <= j; ++i) acc -= b[i] * out[j - i];
    out[j] = acc * inv;
  }
  return out;
}

TruncSeries mul_linear(const TruncSeries& s, const Complex& c) {
  TruncSeries out(s.order());
  out[0] = s[0] * c;
  for (int j = 1; j <= s.order(); ++j) out[j] = s[j] * c - s[j - 1];
  return out;
}

TruncSeries div_linear(const TruncSeries& s, const Complex& c, const PrecisionContext& ctx) {
  if (abs(c) < pow10(-ctx.digits)) throw DivisionByZero("div_linear: |c| below 10^-digits");
  const Complex inv = reciprocal(c);
  TruncSeries out(s.order());
  out[0] = s[0] * inv;
  for (int j = 1; j <= s.order(); ++j) out[j] = (s[j] + out[j - 1]) * inv;
  return out;
}

namespace {

void check_order(int d) {
  if (d < 0 || d > kMaxDerivativeOrder)
    throw DomainError("derivative order " + std::to_string(d) + " outside [0, " +
                      std::to_string(kMaxDerivativeOrder) + "]");
}

}  // namespace

TruncSeries pochhammer_ratio_coeffs(long l, const Complex& alpha, int d, const PrecisionContext& ctx) {
  if (l < 0) throw DomainError("pochhammer_ratio_coeffs: l must be >= 0");
  if (alpha.re.sign() <= 0) throw DomainError("pochhammer_ratio_coeffs: Re alpha must be positive");
  check_order(d);
  PrecisionScope scope(ctx);
  TruncSeries s = TruncSeries::constant(Complex(1), d);
  for (long i = 0; i < l; ++i) s = mul_linear(s, Complex(1 + i));
  for (long i = 0; i <= l; ++i) s = div_linear(s, alpha + i, ctx);
  return s;
}

PochhammerRatioSweep::PochhammerRatioSweep(const Complex& alpha, const Complex& x0, int d,
                                           const PrecisionContext& ctx)
    : alpha_(alpha), x0_(x0), ctx_(ctx), current_(d) {
  check_order(d);
  PrecisionScope scope(ctx_);
  if ((alpha - x0).re.sign() <= 0) throw DomainError("Pochhammer ratio sweep needs Re(alpha - X) > 0");
  current_ = div_linear(TruncSeries::constant(Complex(1), d), alpha_ - x0_, ctx_);
}

void PochhammerRatioSweep::advance() {
  PrecisionScope scope(ctx_);
  // f_{l+1} = f_l (l+1-X) / (alpha+l+1-X), X = x0 + Y
  ++l_;
  current_ = div_linear(mul_linear(current_, Complex(l_) - x0_), alpha_ + l_ - x0_, ctx_);
}

namespace {

AsymptoticSeries<Complex> coefficient(const AsymptoticSeries<TruncSeries>& f, int d) {
  AsymptoticSeries<Complex> out{f.sigma, {}};
  for (const auto& c : f.coeffs) out.coeffs.push_back(c[d]);
  return out;
}

SeriesValue ratio_sum_euler_maclaurin(int n, const Complex& alpha, const Complex& x0, int d, long cutoff,
                                      const PrecisionContext& ctx) {
  const double scale = abs(alpha).to_double() + abs(x0).to_double() + 3.0;
  if (static_cast<double>(cutoff) < 8.0 * scale)
    throw ConvergenceError("cutoff " + std::to_string(cutoff) + " too small for the asymptotic tail");
  const int order = asymptotic::order_for(cutoff, scale, ctx.working_digits());

  PochhammerRatioSweep sweep(alpha, x0, d, ctx);
  Complex head;
  double head_abs = 0;
  for (long l = 0; l < cutoff; ++l) {
    Complex term = sweep.current()[d] * pow(Complex(l + 1), -static_cast<long>(n));
    head_abs += abs(term).to_double();
    head += term;
    sweep.advance();
  }

  // f_x(X) = P(Y) Gamma(x+1-X)/Gamma(x+1+alpha-X), with P fixed by f at the cutoff.
  TruncSeries a = TruncSeries::constant(1 - x0, d);
  TruncSeries b = TruncSeries::constant(alpha + 1 - x0, d);
  if (d >= 1) {
    a[1] = Complex(-1);
    b[1] = Complex(-1);
  }
  const Real x_cut = Real(cutoff);
  auto ratio = asymptotic::gamma_ratio(a, b, -alpha, order);
  const TruncSeries normaliser = sweep.current() / asymptotic::evaluate(ratio, x_cut).value;
  auto power = asymptotic::shifted_power(Complex(1), Complex(n), order, TruncSeries::constant(Complex(1), d));
  auto term = asymptotic::multiply(power, ratio);
  for (auto& c : term.coeffs) c = c * normaliser;
  auto tail = asymptotic::tail_sum(term);
  auto projected = coefficient(tail, d);
  auto at_cut = asymptotic::evaluate(projected, x_cut);

  SeriesValue out;
  out.value = require_finite(head + at_cut.value, "ratio_series_sum");
  out.err = at_cut.last_term + pow10(-ctx.working_digits()) * Real(static_cast<double>(cutoff) * (head_abs + 1.0));
  out.cutoff = cutoff - 1;
  out.method = SeriesMethod::euler_maclaurin;
  return out;
}

SeriesValue ratio_sum_extrapolated(int n, const Complex& alpha, const Complex& x0, int d, const TruncationPlan& plan,
                                   const PrecisionContext& ctx) {
  PochhammerRatioSweep sweep(alpha, x0, d, ctx);
  Complex head;
  std::vector<Checkpoint> checkpoints;
  std::size_t next = 0;
  for (long l = 0; l < plan.cutoffs.back(); ++l) {
    head += sweep.current()[d] * pow(Complex(l + 1), -static_cast<long>(n));
    sweep.advance();
    if (l + 1 == plan.cutoffs[next]) checkpoints.push_back({plan.cutoffs[next++], head});
  }
  std::vector<TailShape> basis = plan.basis;
  if (basis.empty()) basis.push_back({alpha - x0 + (n - 1), d, 1});
  auto fit = extrapolate_tail(checkpoints, basis, ctx);
  if (fit.err > Real(10 * plan.target_tol))
    throw ConvergenceError("extrapolated tail did not settle: window spread " + fit.err.to_string(3) +
                           " exceeds 10 x target_tol");
  SeriesValue out;
  out.value = std::move(fit.limit);
  out.err = std::move(fit.err);
  out.cutoff = plan.cutoffs.back() - 1;
  out.method = SeriesMethod::extrapolated;
  return out;
}

}  // namespace

SeriesValue ratio_series_sum(int n, const Complex& alpha, const Complex& x0, int d, const TruncationPlan& plan,
                             const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("ratio_series_sum: n must be >= 1");
  if (alpha.re.sign() <= 0) throw DomainError("ratio_series_sum: Re alpha must be positive");
  check_order(d);
  plan.validate();
  PrecisionScope scope(ctx);
  if ((alpha - x0).re.sign() <= 0 || (n + alpha - x0).re <= Real(1))
    throw DomainError("ratio_series_sum: series diverges at this X");
  return plan.tail == TailModel::euler_maclaurin ? ratio_sum_euler_maclaurin(n, alpha, x0, d, plan.cutoffs.front(), ctx)
                                                 : ratio_sum_extrapolated(n, alpha, x0, d, plan, ctx);
}

SeriesValue prop3_rhs(int k, int n, const Complex& alpha, const TruncationPlan& plan, const PrecisionContext& ctx) {
  if (!(0 < n && n < k)) throw DomainError("prop3_rhs requires 0 < n < k");
  if (k - n - 1 > kMaxDerivativeOrder) throw DomainError("prop3_rhs: derivative order k-n-1 exceeds 24");
  return ratio_series_sum(n, alpha, Complex(0), k - n - 1, plan, ctx);
}

}  // namespace mzv

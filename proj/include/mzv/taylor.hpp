#pragma once

#include <vector>

#include "mzv/asymptotic.hpp"
#include "mzv/hp.hpp"
#include "mzv/multiseries.hpp"
#include "mzv/special.hpp"

namespace mzv {

/// Power series in X truncated at a fixed order d: coeffs[j] is the X^j
/// coefficient. Products drop everything above X^d.
class TruncSeries {
 public:
  /// Zero series of order d.
  explicit TruncSeries(int order = 0);
  /// Throws DomainError on an empty coefficient list.
  explicit TruncSeries(std::vector<Complex> coeffs);
  static TruncSeries constant(const Complex& c, int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  Complex& operator[](int j) { return coeffs_[static_cast<std::size_t>(j)]; }

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries& operator*=(const Complex& c);

 private:
  std::vector<Complex> coeffs_;
};

TruncSeries operator+(TruncSeries a, const TruncSeries& b);
TruncSeries operator-(TruncSeries a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(TruncSeries a, const Complex& c);
/// a / b; throws DivisionByZero when b's constant term vanishes.
TruncSeries operator/(const TruncSeries& a, const TruncSeries& b);

/// s * (c - X)
TruncSeries mul_linear(const TruncSeries& s, const Complex& c);
/// s / (c - X); DivisionByZero when |c| < 10^-digits.
TruncSeries div_linear(const TruncSeries& s, const Complex& c, const PrecisionContext& ctx);

template <>
struct RingOps<TruncSeries> {
  static TruncSeries zero_like(const TruncSeries& s) { return TruncSeries(s.order()); }
  static TruncSeries one_like(const TruncSeries& s) { return TruncSeries::constant(Complex(1), s.order()); }
  static Real magnitude(const TruncSeries& s) {
    Real m;
    for (const auto& c : s.coeffs()) m = max(m, abs(c));
    return m;
  }
};

/// Coefficients of f_l(X) = (1-X)_l / (alpha-X)_{l+1} at X = 0 up to X^d,
/// built from scratch.
TruncSeries pochhammer_ratio_coeffs(long l, const Complex& alpha, int d, const PrecisionContext& ctx);

/// Incremental f_l expansion around X = x0 for l = 0, 1, 2, ...; one
/// mul_linear and one div_linear per step.
class PochhammerRatioSweep {
 public:
  PochhammerRatioSweep(const Complex& alpha, const Complex& x0, int d, const PrecisionContext& ctx);

  long index() const noexcept { return l_; }
  const TruncSeries& current() const noexcept { return current_; }
  void advance();

 private:
  Complex alpha_;
  Complex x0_;
  PrecisionContext ctx_;
  long l_ = 0;
  TruncSeries current_;
};

inline constexpr int kMaxDerivativeOrder = 24;

/// sum_{l>=0} (l+1)^-n [Y^d] f_l(x0 + Y). With x0 = 0 and d = k-n-1 this is
/// the derivative side of the multiple Hurwitz sum formula; with d = 0 it is
/// the series sum_l (1-x0)_l / ((alpha-x0)_{l+1} (l+1)^n).
SeriesValue ratio_series_sum(int n, const Complex& alpha, const Complex& x0, int d, const TruncationPlan& plan,
                             const PrecisionContext& ctx);

/// ratio_series_sum(n, alpha, 0, k-n-1): requires 0 < n < k, k-n-1 <= 24.
SeriesValue prop3_rhs(int k, int n, const Complex& alpha, const TruncationPlan& plan, const PrecisionContext& ctx);

}  // namespace mzv

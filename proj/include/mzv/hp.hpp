#pragma once

// Arbitrary precision real and complex numbers on top of MPFR.
//
// Every value carries its own MPFR precision. Values created without an
// explicit source (zero, integers, parsed strings) take the calling thread's
// working precision, which is set for a lexical scope by PrecisionScope.
// Binary operations produce a result at the larger operand precision.

#include <mpfr.h>

#include <concepts>
#include <string>
#include <string_view>
#include <utility>

#include "mzv/errors.hpp"

namespace mzv {

/// Working precision in decimal digits plus guard digits. Arithmetic runs at
/// digits + guard; values are reported at digits.
struct PrecisionContext {
  int digits = 40;
  int guard = 15;

  PrecisionContext() = default;
  explicit PrecisionContext(int digits, int guard = 15);

  int working_digits() const noexcept { return digits + guard; }
  mpfr_prec_t bits() const noexcept;
};

mpfr_prec_t digits_to_bits(int decimal_digits) noexcept;

/// The calling thread's working precision in bits.
mpfr_prec_t working_bits() noexcept;

class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx);
  explicit PrecisionScope(mpfr_prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real();
  template <std::integral I>
  Real(I v) : Real(with_bits(working_bits())) {
    mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN);
  }
  Real(double v);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a plain decimal (optionally with exponent) at working precision.
  static Real parse(std::string_view text);
  /// Zero at an explicit precision.
  static Real with_bits(mpfr_prec_t bits);

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits, e.g. 1.25e-3.
  std::string to_string(int digits) const;

  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  template <std::integral I>
  Real& operator*=(I o) { return mul_si(static_cast<long>(o)); }
  template <std::integral I>
  Real& operator/=(I o) { return div_si(static_cast<long>(o)); }
  Real& mul_si(long o);
  Real& div_si(long o);

  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

 private:
  struct prec_tag {};
  Real(prec_tag, mpfr_prec_t bits);

  mpfr_t v_;
  bool live_ = true;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

// Integer operands go through the *_si kernels; the named functions keep a
// double argument from silently converting to long.
Real add_si(const Real& a, long b);
Real mul_si(const Real& a, long b);
Real div_si(const Real& a, long b);
Real si_div(long a, const Real& b);
Real si_sub(long a, const Real& b);

template <std::integral I>
Real operator+(const Real& a, I b) { return add_si(a, static_cast<long>(b)); }
template <std::integral I>
Real operator+(I a, const Real& b) { return add_si(b, static_cast<long>(a)); }
template <std::integral I>
Real operator-(const Real& a, I b) { return add_si(a, -static_cast<long>(b)); }
template <std::integral I>
Real operator-(I a, const Real& b) { return si_sub(static_cast<long>(a), b); }
template <std::integral I>
Real operator*(const Real& a, I b) { return mul_si(a, static_cast<long>(b)); }
template <std::integral I>
Real operator*(I a, const Real& b) { return mul_si(b, static_cast<long>(a)); }
template <std::integral I>
Real operator/(const Real& a, I b) { return div_si(a, static_cast<long>(b)); }
template <std::integral I>
Real operator/(I a, const Real& b) { return si_div(static_cast<long>(a), b); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
/// 10^e at working precision.
Real pow10(long e);
Real pi();
/// Decimal logarithm of |x| as a double; -inf for zero.
double log10_abs(const Real& x) noexcept;
Real max(const Real& a, const Real& b);

/// 2^(1-bits) at the calling thread's working precision.
Real working_epsilon();

class Complex {
 public:
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(Real::with_bits(re.bits())) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  template <std::integral I>
  Complex(I v) : re(v), im() {}
  Complex(double v) : re(v), im() {}

  /// Parses `re[+im i]` forms: "1", "0.75+0.25i", "-2.5e-1i", "1-i".
  static Complex parse(std::string_view text);
  /// `re` when the imaginary part is zero, else `re+imi` / `re-imi`.
  std::string to_string(int digits) const;

  bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }
  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  bool is_real() const noexcept { return im.is_zero(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Complex& o);
  Complex& operator/=(const Real& o);

  Complex operator-() const { return {-re, -im}; }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);
Complex add_si(const Complex& a, long b);
Complex mul_si(const Complex& a, long b);
Complex div_si(const Complex& a, long b);
template <std::integral I>
Complex operator+(const Complex& a, I b) { return add_si(a, static_cast<long>(b)); }
template <std::integral I>
Complex operator+(I a, const Complex& b) { return add_si(b, static_cast<long>(a)); }
template <std::integral I>
Complex operator-(const Complex& a, I b) { return add_si(a, -static_cast<long>(b)); }
template <std::integral I>
Complex operator-(I a, const Complex& b) { return add_si(-b, static_cast<long>(a)); }
template <std::integral I>
Complex operator*(const Complex& a, I b) { return mul_si(a, static_cast<long>(b)); }
template <std::integral I>
Complex operator*(I a, const Complex& b) { return mul_si(b, static_cast<long>(a)); }
template <std::integral I>
Complex operator/(const Complex& a, I b) { return div_si(a, static_cast<long>(b)); }

Real abs(const Complex& z);
Real norm(const Complex& z);
Complex conj(const Complex& z);
Complex reciprocal(const Complex& z);
Complex log(const Complex& z);
Complex exp(const Complex& z);
/// z^k for any integer k (negative k inverts first).
Complex pow(const Complex& z, long k);
/// x^s for real x > 0 and complex s.
Complex pow(const Real& x, const Complex& s);
/// Throws OverflowError when a value left the representable range.
const Complex& require_finite(const Complex& z, std::string_view what);
const Real& require_finite(const Real& x, std::string_view what);

}  // namespace mzv

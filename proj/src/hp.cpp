#include "mzv/hp.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

namespace mzv {

namespace {

thread_local mpfr_prec_t tl_working_bits = digits_to_bits(55);

mpfr_prec_t max_bits(const Real& a, const Real& b) {
  return std::max(a.bits(), b.bits());
}

bool parse_decimal(std::string_view text, mpfr_ptr out) {
  if (text.empty()) return false;
  // Strict grammar: [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  std::size_t mantissa_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++mantissa_digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++mantissa_digits;
  }
  if (mantissa_digits == 0) return false;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  if (i != text.size()) return false;
  std::string buf(text);
  return mpfr_set_str(out, buf.c_str(), 10, MPFR_RNDN) == 0;
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::overflow: return "OverflowError";
    case ErrorKind::pole: return "PoleError";
    case ErrorKind::cancellation: return "CancellationError";
    case ErrorKind::convergence: return "ConvergenceError";
    case ErrorKind::ill_conditioned: return "IllConditioned";
    case ErrorKind::division_by_zero: return "DivisionByZero";
    case ErrorKind::non_finite: return "NonFinite";
    case ErrorKind::depth_unsupported: return "DepthUnsupported";
  }
  return "Error";
}

PrecisionContext::PrecisionContext(int digits_, int guard_) : digits(digits_), guard(guard_) {
  if (digits < 20) throw DomainError("precision digits must be >= 20, got " + std::to_string(digits));
  if (guard < 5) throw DomainError("guard digits must be >= 5, got " + std::to_string(guard));
}

mpfr_prec_t digits_to_bits(int decimal_digits) noexcept {
  return static_cast<mpfr_prec_t>(std::ceil(decimal_digits * 3.3219280948873623)) + 4;
}

mpfr_prec_t PrecisionContext::bits() const noexcept { return digits_to_bits(working_digits()); }

mpfr_prec_t working_bits() noexcept { return tl_working_bits; }

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.bits()) {}

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(tl_working_bits) { tl_working_bits = bits; }

PrecisionScope::~PrecisionScope() { tl_working_bits = saved_; }

// ---------------------------------------------------------------- Real

Real::Real(prec_tag, mpfr_prec_t bits) { mpfr_init2(v_, bits); }

Real::Real() : Real(prec_tag{}, tl_working_bits) { mpfr_set_zero(v_, 1); }

Real::Real(double v) : Real(prec_tag{}, tl_working_bits) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real::Real(const Real& other) : Real(prec_tag{}, other.bits()) { mpfr_set(v_, other.v_, MPFR_RNDN); }

Real::Real(Real&& other) noexcept : live_(other.live_) {
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.live_ = false;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (!live_) {
    mpfr_init2(v_, other.bits());
    live_ = true;
  } else if (bits() != other.bits()) {
    mpfr_set_prec(v_, other.bits());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  mpfr_t tmp;
  std::memcpy(tmp, v_, sizeof(mpfr_t));
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  std::memcpy(other.v_, tmp, sizeof(mpfr_t));
  std::swap(live_, other.live_);
  return *this;
}

Real::~Real() {
  if (live_) mpfr_clear(v_);
}

Real Real::with_bits(mpfr_prec_t bits) {
  Real r(prec_tag{}, bits);
  mpfr_set_zero(r.v_, 1);
  return r;
}

Real Real::parse(std::string_view text) {
  Real r;
  if (!parse_decimal(text, r.v_)) throw DomainError("not a decimal number: '" + std::string(text) + "'");
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string out;
  if (mant.front() == '-') {
    out.push_back('-');
    mant.erase(0, 1);
  }
  // Trailing zeros carry no information and would break string round trips
  // between contexts that differ only in reporting digits.
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  out.push_back(mant[0]);
  if (mant.size() > 1) {
    out.push_back('.');
    out.append(mant, 1, std::string::npos);
  }
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

Real& Real::operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::mul_si(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
Real& Real::div_si(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

Real Real::operator-() const {
  Real r = with_bits(bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

#define MZV_REAL_BINARY(op, fn)                           \
  Real operator op(const Real& a, const Real& b) {        \
    Real r = Real::with_bits(max_bits(a, b));             \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);             \
    return r;                                             \
  }
MZV_REAL_BINARY(+, mpfr_add)
MZV_REAL_BINARY(-, mpfr_sub)
MZV_REAL_BINARY(*, mpfr_mul)
MZV_REAL_BINARY(/, mpfr_div)
#undef MZV_REAL_BINARY

Real add_si(const Real& a, long b) {
  Real r = Real::with_bits(a.bits());
  mpfr_add_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real mul_si(const Real& a, long b) {
  Real r = Real::with_bits(a.bits());
  mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real div_si(const Real& a, long b) {
  Real r = Real::with_bits(a.bits());
  mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real si_div(long a, const Real& b) {
  Real r = Real::with_bits(b.bits());
  mpfr_si_div(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
Real si_sub(long a, const Real& b) {
  Real r = Real::with_bits(b.bits());
  mpfr_si_sub(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}

#define MZV_REAL_UNARY(name, fn)               \
  Real name(const Real& x) {                   \
    Real r = Real::with_bits(x.bits());        \
    fn(r.get(), x.get(), MPFR_RNDN);           \
    return r;                                  \
  }
MZV_REAL_UNARY(abs, mpfr_abs)
MZV_REAL_UNARY(sqrt, mpfr_sqrt)
MZV_REAL_UNARY(exp, mpfr_exp)
MZV_REAL_UNARY(log, mpfr_log)
MZV_REAL_UNARY(sin, mpfr_sin)
MZV_REAL_UNARY(cos, mpfr_cos)
#undef MZV_REAL_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_bits(max_bits(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r = Real::with_bits(max_bits(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r = Real::with_bits(max_bits(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow10(long e) {
  Real r;
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

double log10_abs(const Real& x) noexcept {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real working_epsilon() {
  Real r = 1;
  mpfr_mul_2si(r.get(), r.get(), 1 - static_cast<long>(working_bits()), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------- Complex

Complex Complex::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw DomainError("empty complex number");
  if (s.back() != 'i' && s.back() != 'I') return Complex(Real::parse(s));
  s.pop_back();
  // Split at the last sign that is not a leading sign and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string re_text = split == std::string::npos ? std::string() : s.substr(0, split);
  std::string im_text = split == std::string::npos ? s : s.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  if (!im_text.empty() && im_text.front() == '+') im_text.erase(0, 1);
  Real re = re_text.empty() ? Real() : Real::parse(re_text);
  Real im = Real::parse(im_text);
  return {std::move(re), std::move(im)};
}

std::string Complex::to_string(int digits) const {
  std::string out = re.to_string(digits);
  if (im.is_zero()) return out;
  std::string im_text = im.to_string(digits);
  if (im_text.front() != '-') out.push_back('+');
  out += im_text;
  out.push_back('i');
  return out;
}

Complex& Complex::operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
Complex& Complex::operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
Complex& Complex::operator*=(const Complex& o) { *this = *this * o; return *this; }
Complex& Complex::operator*=(const Real& o) { re *= o; im *= o; return *this; }
Complex& Complex::operator/=(const Complex& o) { *this = *this / o; return *this; }
Complex& Complex::operator/=(const Real& o) { re /= o; im /= o; return *this; }

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  if (a.im.is_zero()) return {a.re * b.re, a.re * b.im};
  if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(const Complex& a, const Complex& b) {
  if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
  return a * reciprocal(b);
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
Complex add_si(const Complex& a, long b) { return {add_si(a.re, b), a.im}; }
Complex mul_si(const Complex& a, long b) { return {mul_si(a.re, b), mul_si(a.im, b)}; }
Complex div_si(const Complex& a, long b) { return {div_si(a.re, b), div_si(a.im, b)}; }

Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex reciprocal(const Complex& z) {
  if (z.im.is_zero()) return Complex(si_div(1, z.re), Real::with_bits(z.re.bits()));
  Real d = norm(z);
  return {z.re / d, -z.im / d};
}

Complex log(const Complex& z) { return {log(abs(z)), atan2(z.im, z.re)}; }

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  if (z.im.is_zero()) return Complex(m);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex pow(const Complex& z, long k) {
  if (k < 0) return pow(reciprocal(z), -k);
  Complex result = Complex(Real::with_bits(std::max(z.re.bits(), z.im.bits())) + 1);
  Complex base = z;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Complex pow(const Real& x, const Complex& s) {
  if (x.sign() <= 0) throw DomainError("real power base must be positive");
  return exp(s * log(x));
}

const Complex& require_finite(const Complex& z, std::string_view what) {
  if (!z.is_finite()) throw OverflowError(std::string(what) + ": result left the representable range");
  return z;
}

const Real& require_finite(const Real& x, std::string_view what) {
  if (!x.is_finite()) throw OverflowError(std::string(what) + ": result left the representable range");
  return x;
}

}  // namespace mzv

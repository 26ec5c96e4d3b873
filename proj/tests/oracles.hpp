#pragma once

// Independent reference values for the tests: double precision brute force,
// closed forms from MPFR constants, exact rationals.

#include <cmath>
#include <complex>
#include <functional>

#include "mzv/hp.hpp"

namespace oracle {

using cd = std::complex<double>;

/// Kahan-compensated sum of f(0..count-1), summed from the small end.
inline cd sum_backward(long count, const std::function<cd(long)>& f) {
  cd sum = 0, comp = 0;
  for (long i = count - 1; i >= 0; --i) {
    const cd y = f(i) - comp;
    const cd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

/// sum_{l>=0} (l+a)^-n (l+b)^-m: 10^6 terms plus the tail of the matching
/// power (l+c)^-(n+m), c = (n a + m b)/(n+m), by the midpoint integral.
inline cd double_pole_brute(int n, int m, cd a, cd b, long terms = 1000000) {
  const cd head = sum_backward(terms, [&](long l) {
    return std::pow(double(l) + a, -n) * std::pow(double(l) + b, -m);
  });
  const int p = n + m;
  const cd c = (double(n) * a + double(m) * b) / double(p);
  const cd tail = std::pow(double(terms) - 0.5 + c, double(1 - p)) / double(p - 1);
  return head + tail;
}

/// zeta(s) by direct summation with the midpoint tail, double precision.
inline double zeta_brute(int s, long terms = 100000) {
  const cd head = sum_backward(terms, [&](long l) { return cd(std::pow(double(l + 1), -s)); });
  return head.real() + std::pow(double(terms) + 0.5, 1 - s) / (s - 1);
}

/// Euler's constant from H_N - log N with the first asymptotic corrections.
inline double euler_gamma_limit(long n = 1000000) {
  const cd h = sum_backward(n, [](long l) { return cd(1.0 / double(l + 1)); });
  const double nn = double(n);
  return h.real() - std::log(nn) - 1 / (2 * nn) + 1 / (12 * nn * nn);
}

inline mzv::Complex hp(cd z) { return mzv::Complex(mzv::Real(z.real()), mzv::Real(z.imag())); }
inline cd to_cd(const mzv::Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

inline double dist(const mzv::Complex& a, const mzv::Complex& b) { return mzv::abs(a - b).to_double(); }
inline double dist(const mzv::Complex& a, cd b) { return std::abs(to_cd(a) - b); }

inline mzv::Real zeta2() { return mzv::pi() * mzv::pi() / 6; }

}  // namespace oracle

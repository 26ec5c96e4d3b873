#pragma once

// Asymptotic expansions in a large variable x,
//
//     f(x) ~ x^{-sigma} * sum_{i < K} c_i x^{-i},
//
// with coefficients in a commutative ring C (Complex, or truncated power
// series in a second variable). These carry the tails of nested sums: the
// tail sum_{m >= x} f(m) of such an expansion is again one (Euler-Maclaurin
// term by term), so an arbitrarily nested suffix sum can be continued to
// infinity from a finite cutoff.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mzv/hp.hpp"
#include "mzv/special.hpp"

namespace mzv {

template <class C>
struct RingOps;

template <>
struct RingOps<Complex> {
  static Complex zero_like(const Complex&) { return Complex(); }
  static Complex one_like(const Complex&) { return Complex(1); }
  static Real magnitude(const Complex& c) { return abs(c); }
};

template <class C>
struct AsymptoticSeries {
  Complex sigma;
  std::vector<C> coeffs;

  int order() const noexcept { return static_cast<int>(coeffs.size()); }
};

namespace asymptotic {

/// Bernoulli polynomials B_0(h) .. B_{count-1}(h) with a ring-valued argument.
template <class C>
std::vector<C> bernoulli_polynomials(const C& h, int count) {
  const auto& bern = bernoulli_table(count + 1);
  std::vector<C> powers;
  powers.reserve(static_cast<std::size_t>(count));
  powers.push_back(RingOps<C>::one_like(h));
  for (int i = 1; i < count; ++i) powers.push_back(powers.back() * h);
  std::vector<C> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    C acc = RingOps<C>::zero_like(h);
    Real binom = 1;  // C(k, j)
    for (int j = 0; j <= k; ++j) {
      const Real& bj = bern[static_cast<std::size_t>(j)];
      if (!bj.is_zero()) acc += powers[static_cast<std::size_t>(k - j)] * Complex(binom * bj);
      binom = binom * (k - j) / (j + 1);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// (x + shift)^{-s} for complex s, coefficients scaled by `unit`.
template <class C>
AsymptoticSeries<C> shifted_power(const Complex& shift, const Complex& s, int order, const C& unit) {
  AsymptoticSeries<C> out{s, {}};
  out.coeffs.reserve(static_cast<std::size_t>(order));
  Complex c(Real(1));  // binom(-s, j) shift^j
  for (int j = 0; j < order; ++j) {
    out.coeffs.push_back(unit * c);
    c = c * (-s - j) * shift / (j + 1);
  }
  return out;
}

/// Gamma(x + a) / Gamma(x + b) where a - b is the scalar `a_minus_b`.
template <class C>
AsymptoticSeries<C> gamma_ratio(const C& a, const C& b, const Complex& a_minus_b, int order) {
  // log of the ratio = (a-b) log x + sum_{k>=1} l_k x^{-k},
  // l_k = (-1)^{k+1} (B_{k+1}(a) - B_{k+1}(b)) / (k (k+1)).
  const auto ba = bernoulli_polynomials(a, order + 1);
  const auto bb = bernoulli_polynomials(b, order + 1);
  std::vector<C> l(static_cast<std::size_t>(order), RingOps<C>::zero_like(a));
  for (int k = 1; k < order; ++k) {
    C diff = ba[static_cast<std::size_t>(k + 1)];
    diff -= bb[static_cast<std::size_t>(k + 1)];
    Real scale = Real(k % 2 == 1 ? 1 : -1) / (static_cast<long>(k) * (k + 1));
    l[static_cast<std::size_t>(k)] = diff * Complex(scale);
  }
  AsymptoticSeries<C> out{-a_minus_b, {}};
  out.coeffs.reserve(static_cast<std::size_t>(order));
  out.coeffs.push_back(RingOps<C>::one_like(a));
  for (int r = 1; r < order; ++r) {
    C acc = RingOps<C>::zero_like(a);
    for (int k = 1; k <= r; ++k) acc += l[static_cast<std::size_t>(k)] * out.coeffs[static_cast<std::size_t>(r - k)] * Complex(k);
    out.coeffs.push_back(acc * Complex(Real(1) / r));
  }
  return out;
}

template <class C>
AsymptoticSeries<C> multiply(const AsymptoticSeries<C>& f, const AsymptoticSeries<C>& g) {
  const int order = std::min(f.order(), g.order());
  AsymptoticSeries<C> out{f.sigma + g.sigma, {}};
  out.coeffs.reserve(static_cast<std::size_t>(order));
  for (int r = 0; r < order; ++r) {
    C acc = f.coeffs[0] * g.coeffs[static_cast<std::size_t>(r)];
    for (int i = 1; i <= r; ++i) acc += f.coeffs[static_cast<std::size_t>(i)] * g.coeffs[static_cast<std::size_t>(r - i)];
    out.coeffs.push_back(std::move(acc));
  }
  return out;
}

template <class C>
AsymptoticSeries<C> scale(AsymptoticSeries<C> f, const Complex& factor) {
  for (auto& c : f.coeffs) c = c * factor;
  return f;
}

/// f(x + h) re-expanded in powers of x.
template <class C>
AsymptoticSeries<C> shift(const AsymptoticSeries<C>& f, const Complex& h) {
  const int order = f.order();
  std::vector<C> out;
  out.reserve(static_cast<std::size_t>(order));
  for (int r = 0; r < order; ++r) out.push_back(RingOps<C>::zero_like(f.coeffs[0]));
  for (int i = 0; i < order; ++i) {
    Complex b(Real(1));  // binom(-sigma-i, j) h^j
    const Complex e = -f.sigma - i;
    for (int j = 0; i + j < order; ++j) {
      out[static_cast<std::size_t>(i + j)] += f.coeffs[static_cast<std::size_t>(i)] * b;
      b = b * (e - j) * h / (j + 1);
    }
  }
  return {f.sigma, std::move(out)};
}

/// T(x) = sum_{m >= x} f(m), term-by-term Euler-Maclaurin:
/// sum_{m>=x} m^{-s} ~ x^{1-s}/(s-1) + x^{-s}/2 + sum_j B_2j/(2j)! (s)_{2j-1} x^{1-s-2j}.
/// Requires Re sigma > 1.
template <class C>
AsymptoticSeries<C> tail_sum(const AsymptoticSeries<C>& f) {
  if (f.sigma.re <= Real(1)) throw DomainError("tail of a divergent series (Re sigma <= 1)");
  const int order = f.order();
  const auto& bern = bernoulli_table(order + 2);
  std::vector<C> out;
  out.reserve(static_cast<std::size_t>(order));
  for (int r = 0; r < order; ++r) {
    C acc = f.coeffs[static_cast<std::size_t>(r)] * reciprocal(f.sigma + (r - 1));
    if (r >= 1) acc += f.coeffs[static_cast<std::size_t>(r - 1)] * Complex(Real(1) / 2);
    Real inv_fact = Real(1) / 2;  // 1/(2j)!
    for (int j = 1; 2 * j <= r; ++j) {
      const Complex s = f.sigma + (r - 2 * j);
      Complex poch(Real(1));  // (s)_{2j-1}
      for (int t = 0; t < 2 * j - 1; ++t) poch *= s + t;
      acc += f.coeffs[static_cast<std::size_t>(r - 2 * j)] * (poch * (inv_fact * bern[static_cast<std::size_t>(2 * j)]));
      inv_fact = inv_fact / ((2 * j + 1) * static_cast<long>(2 * j + 2));
    }
    out.push_back(std::move(acc));
  }
  return {f.sigma - 1, std::move(out)};
}

template <class C>
struct Evaluation {
  C value;
  Real last_term;  // magnitude of the final retained term, the truncation estimate
};

/// f(x) for real x > 0.
template <class C>
Evaluation<C> evaluate(const AsymptoticSeries<C>& f, const Real& x) {
  const Real inv_x = Real(1) / x;
  C acc = RingOps<C>::zero_like(f.coeffs[0]);
  for (int i = f.order() - 1; i >= 0; --i) {
    acc = acc * Complex(inv_x);
    acc += f.coeffs[static_cast<std::size_t>(i)];
  }
  const Complex lead = pow(x, -f.sigma);
  Real last = RingOps<C>::magnitude(f.coeffs.back()) * abs(lead) * pow(inv_x, Real(f.order() - 1));
  return {acc * lead, std::move(last)};
}

/// Expansion order for evaluation at x >= `cutoff` to about `digits` digits
/// when the coefficients' natural scale is `scale`.
int order_for(long cutoff, double scale, int digits);

}  // namespace asymptotic
}  // namespace mzv

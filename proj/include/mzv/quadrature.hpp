#pragma once

// Double-precision tanh-sinh quadrature for the simplex integral
// representations. Accuracy target is about 1e-10 whatever the context
// precision; the series evaluators own the high-precision results.

#include <complex>
#include <functional>

#include "mzv/hp.hpp"
#include "mzv/identities.hpp"

namespace mzv {

struct QuadResult {
  std::complex<double> value;
  double err = 0.0;  // |Q(level) - Q(level-1)|
  int levels = 0;
};

/// Integrand on (0,1); receives x and 1-x, both accurate near their zero.
using Integrand1D = std::function<std::complex<double>(double x, double one_minus_x)>;

/// Step h = 2^(2-level); level >= 2.
QuadResult tanh_sinh(const Integrand1D& f, int level);

/// Integrands over 0 < t_n < ... < t_0 < 1 of the form
/// prod_i t_i^{a_i} (1-t_i)^{b_i}.
enum class SimplexForm {
  prop1_gf,       // generating function of the double-pole sums
  prop1_gf_dual,  // the same after t_i -> 1 - t_{n-i}
  prop3_gf,       // generating function of the multiple Hurwitz sums
  prop3_gf_dual,  // the same after t_i -> 1 - t_{n-i}
};

/// n in {1, 2} (dimension n+1); DepthUnsupported beyond.
QuadResult simplex_integral(SimplexForm form, int n, std::complex<double> alpha, std::complex<double> beta,
                            std::complex<double> x, int level, Execution exec = Execution::parallel);

/// Equals sum_l (l+alpha)^-n (l+beta-X)^-1; |X| < Re beta/4.
QuadResult iterated_integral_prop1(int n, const Complex& alpha, const Complex& beta, const Complex& x, int level);
/// Equals sum_m X^m (sum over compositions of m+n+1, last part >= 2, of zeta(k; alpha)); |X| < Re alpha/4.
QuadResult iterated_integral_prop3(int n, const Complex& alpha, const Complex& x, int level);

enum class ChangeOfVariables { eq4, eq6 };

/// Both sides of the t_i -> 1 - t_{n-i} symmetry; beta is ignored for eq6.
IdentityReport check_change_of_variables(ChangeOfVariables which, int n, const Complex& alpha, const Complex& beta,
                                         const Complex& x, int level, const CheckOptions& opts);
/// The dual prop3 integral against sum_l (1-X)_l / ((alpha-X)_{l+1} (l+1)^n).
IdentityReport check_series_form(int n, const Complex& alpha, const Complex& x, int level, const CheckOptions& opts);

enum class IntegralFamily { prop1, prop3 };

/// The simplex integral against its series value: the double-pole sum for
/// prop1, the Pochhammer ratio series for prop3 (beta ignored).
IdentityReport check_integral(IntegralFamily family, int n, const Complex& alpha, const Complex& beta,
                              const Complex& x, int level, const CheckOptions& opts);

SeriesValue to_series_value(const QuadResult& q);

}  // namespace mzv

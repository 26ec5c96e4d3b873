#pragma once

#include <string_view>
#include <vector>

#include "mzv/hp.hpp"

namespace mzv {

enum class SeriesMethod { direct, euler_maclaurin, extrapolated, partial_fraction, taylor, quadrature };

std::string_view to_string(SeriesMethod method) noexcept;

/// A series limit together with its estimated absolute error and the largest
/// summation index that was summed explicitly.
struct SeriesValue {
  Complex value;
  Real err;
  long cutoff = 0;
  SeriesMethod method = SeriesMethod::direct;
};

/// (a)_m = a(a+1)...(a+m-1), with (a)_0 = 1.
Complex pochhammer(const Complex& a, long m, const PrecisionContext& ctx);

/// B_0 .. B_{count-1} with B_1 = -1/2.
std::vector<Real> bernoulli_numbers(int count, const PrecisionContext& ctx);

/// Bernoulli numbers at the calling thread's working precision, memoised per
/// thread; at least `count` entries.
const std::vector<Real>& bernoulli_table(int count);

Complex digamma(const Complex& z, const PrecisionContext& ctx);

/// Hurwitz zeta sum_{m>=0} (m+a)^-s for integer s >= 2 and Re a > 0.
SeriesValue hurwitz_zeta(int s, const Complex& a, const PrecisionContext& ctx);
/// Same with an explicit number of directly summed terms; err reports the
/// first omitted correction at that cutoff.
SeriesValue hurwitz_zeta(int s, const Complex& a, long cutoff, const PrecisionContext& ctx);

}  // namespace mzv

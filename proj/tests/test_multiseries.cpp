#include <cmath>

#include "doctest.h"
#include "mzv/multiseries.hpp"
#include "oracles.hpp"

using namespace mzv;

namespace {

const PrecisionContext ctx40{40};
const char* const kGrid[] = {"1", "0.5", "1.5", "0.75+0.25i", "1+0.5i"};

Complex cx(const char* s) { return Complex::parse(s); }

Complex zeta(int s) { return hurwitz_zeta(s, Complex(1), ctx40).value; }

/// Brute-force nested sum over 0 <= m_1 < ... < m_n < L.
Complex brute_nested(const NestedSeries& series, long L) {
  const std::size_t n = series.levels.size();
  std::vector<std::vector<Complex>> vals;
  for (const auto& level : series.levels) vals.push_back(level_values(level, L));
  Complex total;
  std::vector<long> idx(n);
  std::function<void(std::size_t, long, Complex)> rec = [&](std::size_t j, long from, Complex prod) {
    if (j == n) {
      total += prod;
      return;
    }
    for (long m = from; m < L; ++m) rec(j + 1, m + 1, prod * vals[j][static_cast<std::size_t>(m)]);
  };
  rec(0, 0, Complex(1));
  return total;
}

/// Weights computed from Pochhammer symbols directly, powers by pow.
Complex weighted_term_direct(const Composition& k, const std::vector<long>& m, const Complex& a, const Complex& b,
                             WeightVariant v) {
  const long m1 = m.front(), mn = m.back();
  Complex w = pochhammer(a, m1, ctx40) / pochhammer(Complex(1), m1, ctx40);
  if (v == WeightVariant::prop1)
    w = w * pochhammer(Complex(1), mn, ctx40) / pochhammer(a, mn + 1, ctx40);
  else
    w = w * pochhammer(Complex(1), mn, ctx40) / pochhammer(a, mn, ctx40);
  for (std::size_t j = 0; j < m.size(); ++j) w = w * pow(b + m[j], -static_cast<long>(k[static_cast<int>(j)]));
  return w;
}

}  // namespace

TEST_CASE("double pole series examples") {
  PrecisionScope scope(ctx40);
  const auto tele = lhs_double_pole(1, 1, Complex(1), Complex(2), ctx40);
  CHECK(oracle::dist(tele.value, Complex(1)) < 1e-50);
  CHECK(tele.method == SeriesMethod::partial_fraction);

  const auto eq = lhs_double_pole(2, 1, Complex(1), Complex(1), ctx40);
  CHECK(oracle::dist(eq.value, zeta(3)) < 1e-50);
  CHECK(eq.method == SeriesMethod::euler_maclaurin);

  const auto half = lhs_double_pole(1, 1, Complex(1), cx("0.5"), ctx40);
  CHECK(abs(half.value - log(Real(2)) * 4).to_double() < 1e-45);
  CHECK(oracle::dist(half.value, oracle::double_pole_brute(1, 1, 1.0, 0.5)) < 1e-10);
}

TEST_CASE("double pole series is symmetric") {
  PrecisionScope scope(ctx40);
  for (const char* a : kGrid)
    for (const char* b : kGrid)
      for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
          const auto x = lhs_double_pole(n, m, cx(a), cx(b), ctx40);
          const auto y = lhs_double_pole(m, n, cx(b), cx(a), ctx40);
          CHECK(abs(x.value - y.value) <= x.err + y.err);
        }
}

TEST_CASE("double pole series near the diagonal") {
  PrecisionScope scope(ctx40);
  const Complex a = cx("0.75+0.25i");
  // inside 10^-(digits/2): single Hurwitz value with a first-order error term
  const auto close = lhs_double_pole(2, 2, a, a + Complex(Real::parse("1e-25")), ctx40);
  CHECK(abs(close.value - hurwitz_zeta(4, a, ctx40).value) <= close.err);
  CHECK(close.err.to_double() > 1e-26);
  // just outside it the partial fractions cancel catastrophically
  CHECK_THROWS_AS(lhs_double_pole(3, 3, a, a + Complex(Real::parse("1e-15")), ctx40), CancellationError);
  CHECK_THROWS_AS(lhs_double_pole(1, 1, Complex(0), Complex(1), ctx40), DomainError);
  CHECK_THROWS_AS(lhs_double_pole(1, 1, Complex(1), cx("-0.5+i"), ctx40), DomainError);
}

TEST_CASE("single-level weighted series reduces to the double pole series") {
  PrecisionScope scope(ctx40);
  const TruncationPlan plan;
  for (const char* a : kGrid)
    for (const char* b : {"1", "0.5+0.25i"})
      for (int m = 1; m <= 3; ++m) {
        const auto w = weighted_multiple_series(Composition({m}), cx(a), cx(b), WeightVariant::prop1, Complex(0), plan, ctx40);
        const auto l = lhs_double_pole(1, m, cx(a), cx(b), ctx40);
        CHECK(abs(w.value - l.value) <= w.err + l.err);
      }
}

TEST_CASE("weighted series examples") {
  PrecisionScope scope(ctx40);
  const TruncationPlan plan;
  const auto z12 = weighted_multiple_series(Composition({1, 2}), Complex(1), Complex(1), WeightVariant::cor2, Complex(0), plan, ctx40);
  CHECK(oracle::dist(z12.value, zeta(3)) < 1e-45);
  CHECK(z12.err.to_double() < 1e-40);

  // stuffle: 2 zeta(2,2) = zeta(2)^2 - zeta(4)
  const auto z22 = weighted_multiple_series(Composition({2, 2}), Complex(1), Complex(1), WeightVariant::cor2, Complex(0), plan, ctx40);
  CHECK(oracle::dist(z22.value * 2, zeta(2) * zeta(2) - zeta(4)) < 1e-45);

  CHECK_THROWS_AS(weighted_multiple_series(Composition({1}), Complex(1), Complex(1), WeightVariant::prop1, cx("1.5"), plan, ctx40), DomainError);
  CHECK_THROWS_AS(weighted_multiple_series(Composition({1}), cx("-1"), Complex(1), WeightVariant::prop1, Complex(0), plan, ctx40), DomainError);
}

TEST_CASE("multiple hurwitz zeta examples") {
  PrecisionScope scope(ctx40);
  const TruncationPlan plan;
  CHECK(oracle::dist(multiple_hurwitz_zeta(Composition({2}), Complex(1), plan, ctx40).value, zeta(2)) < 1e-45);
  CHECK(oracle::dist(multiple_hurwitz_zeta(Composition({1, 2}), Complex(1), plan, ctx40).value, zeta(3)) < 1e-45);
  CHECK(oracle::dist(multiple_hurwitz_zeta(Composition({1, 1, 2}), Complex(1), plan, ctx40).value, zeta(4)) < 1e-45);

  // zeta(1,2; 1/2) = sum_l (l+1)^-2 l!/(1/2)_{l+1}, summed in double with the
  // Gamma(1/2) l^{-1/2} tail
  const double a = 0.5;
  const long terms = 1000000;
  double ratio = 1 / a;
  std::vector<double> c(static_cast<std::size_t>(terms));
  for (long l = 0; l < terms; ++l) {
    c[static_cast<std::size_t>(l)] = ratio / ((l + 1.0) * (l + 1.0));
    ratio *= (l + 1.0) / (a + l + 1.0);
  }
  const auto head = oracle::sum_backward(terms, [&](long l) { return oracle::cd(c[static_cast<std::size_t>(l)]); });
  const double tail = std::tgamma(a) * std::pow(terms + 0.5, -(1 + a)) / (1 + a);
  const auto v = multiple_hurwitz_zeta(Composition({1, 2}), cx("0.5"), plan, ctx40);
  CHECK(std::abs(v.value.re.to_double() - (head.real() + tail)) < 1e-10);

  CHECK_THROWS_AS(multiple_hurwitz_zeta(Composition({2, 1}), Complex(1), plan, ctx40), DomainError);
  CHECK_THROWS_AS(multiple_hurwitz_zeta(Composition({2}), Complex(0), plan, ctx40), DomainError);
}

TEST_CASE("partial sums match exhaustive enumeration") {
  PrecisionScope scope(ctx40);
  const std::vector<long> cutoffs = {1, 7, 30, 60};
  for (const auto& k : {Composition({3}), Composition({1, 2}), Composition({2, 1, 3}), Composition({1, 1, 1})})
    for (const char* a : {"0.5", "0.75+0.25i"})
      for (auto variant : {WeightVariant::prop1, WeightVariant::cor2}) {
        const Complex alpha = cx(a), beta = cx("1+0.5i"), x = cx("0.1-0.05i");
        const auto series = weighted_series_terms(k, alpha, beta, variant, x);
        const auto sums = nested_partial_sums(series, cutoffs, ctx40);
        for (std::size_t i = 0; i < cutoffs.size(); ++i) {
          const Complex brute = brute_nested(series, cutoffs[i]);
          CHECK(abs(sums[i] - brute) <= (abs(brute) + 1) * pow10(-50));
        }
      }
}

TEST_CASE("weighted terms match direct pochhammer evaluation") {
  PrecisionScope scope(ctx40);
  const Composition k({2, 1, 3});
  const Complex a = cx("0.75+0.25i"), b = cx("1.5");
  for (auto variant : {WeightVariant::prop1, WeightVariant::cor2}) {
    const auto series = weighted_series_terms(k, a, b, variant, Complex(0));
    std::vector<std::vector<Complex>> vals;
    for (const auto& level : series.levels) vals.push_back(level_values(level, 12));
    for (long m1 = 0; m1 < 4; ++m1)
      for (long m2 = m1 + 1; m2 < 8; ++m2)
        for (long m3 = m2 + 1; m3 < 12; ++m3) {
          const Complex dp = vals[0][static_cast<std::size_t>(m1)] * vals[1][static_cast<std::size_t>(m2)] *
                             vals[2][static_cast<std::size_t>(m3)];
          const Complex direct = weighted_term_direct(k, {m1, m2, m3}, a, b, variant);
          CHECK(abs(dp - direct) <= abs(direct) * pow10(-48));
        }
  }
}

TEST_CASE("values are stable under doubling the cutoffs") {
  PrecisionScope scope(ctx40);
  const TruncationPlan plan;
  const auto doubled = plan.scaled(2);
  CHECK(doubled.cutoffs.front() == 4000);
  for (const auto& k : {Composition({1, 2}), Composition({2, 1, 1})}) {
    const auto x = weighted_multiple_series(k, cx("0.5"), cx("1+0.5i"), WeightVariant::prop1, Complex(0), plan, ctx40);
    const auto y = weighted_multiple_series(k, cx("0.5"), cx("1+0.5i"), WeightVariant::prop1, Complex(0), doubled, ctx40);
    CHECK(abs(x.value - y.value) <= x.err + y.err);
  }
}

TEST_CASE("extrapolated and asymptotic tails agree") {
  PrecisionScope scope(ctx40);
  TruncationPlan em;
  TruncationPlan ex;
  ex.tail = TailModel::extrapolate;
  ex.target_tol = 1e-5;
  for (const auto& s : {Composition({3}), Composition({1, 2})}) {
    const auto a = multiple_hurwitz_zeta(s, cx("0.75"), em, ctx40);
    const auto b = multiple_hurwitz_zeta(s, cx("0.75"), ex, ctx40);
    CHECK(b.method == SeriesMethod::extrapolated);
    CHECK(abs(a.value - b.value) <= a.err + b.err * 10);
    CHECK(b.err.to_double() < 1e-4);
  }
  ex.target_tol = 1e-30;
  CHECK_THROWS_AS(multiple_hurwitz_zeta(Composition({1, 2}), Complex(1), ex, ctx40), ConvergenceError);
}

TEST_CASE("truncation plan validation") {
  TruncationPlan p;
  CHECK_NOTHROW(p.validate());
  p.cutoffs = {100, 100, 200, 300};
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.cutoffs = {100, 200, 400};
  p.tail = TailModel::extrapolate;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.cutoffs = {100, 200, 400, 800};
  p.target_tol = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  PrecisionScope scope(ctx40);
  TruncationPlan small;
  small.cutoffs = {10};
  CHECK_THROWS_AS(multiple_hurwitz_zeta(Composition({2}), Complex(5), small, ctx40), ConvergenceError);
}

TEST_CASE("tail extrapolation examples") {
  PrecisionScope scope(ctx40);
  std::vector<Checkpoint> cps;
  Complex partial;
  long m = 0;
  for (long cut : {100L, 200L, 400L, 800L}) {
    for (; m < cut; ++m) partial += pow(Complex(m + 1), -2L);
    cps.push_back({cut, partial});
  }
  const std::vector<TailShape> basis = {{Complex(1), 0, 2}};
  const auto fit = extrapolate_tail(cps, basis, ctx40);
  CHECK(abs(fit.limit - oracle::zeta2()).to_double() < 1e-8);

  // a finite sum has no tail
  std::vector<Checkpoint> flat;
  for (long cut : {10L, 20L, 40L, 80L}) flat.push_back({cut, Complex::parse("2.5+1i")});
  const auto exact = extrapolate_tail(flat, basis, ctx40);
  CHECK(oracle::dist(exact.limit, Complex::parse("2.5+1i")) < 1e-45);
  CHECK(exact.err.to_double() < 1e-45);
}

TEST_CASE("tail extrapolation with a log term") {
  PrecisionScope scope(ctx40);
  // sum log(m)/m^2 = -zeta'(2); reference by direct double summation to 1e7
  // plus the integral tail (log N + 1)/N
  const long big = 10000000;
  const auto head = oracle::sum_backward(big, [](long i) {
    const double m = double(i + 1);
    return oracle::cd(std::log(m) / (m * m));
  });
  const double nn = big + 0.5;
  const double reference = head.real() + (std::log(nn) + 1) / nn;

  std::vector<Checkpoint> cps;
  Complex partial;
  long m = 1;
  for (long cut : {100L, 200L, 400L, 800L, 1600L, 3200L, 6400L}) {
    for (; m <= cut; ++m) partial += Complex(log(Real(m)) / (Real(m) * Real(m)));
    cps.push_back({cut, partial});
  }
  const std::vector<TailShape> basis = {{Complex(1), 1, 2}};
  const auto fit = extrapolate_tail(cps, basis, ctx40);
  CHECK(std::abs(fit.limit.re.to_double() - reference) < 1e-6);
}

TEST_CASE("tail extrapolation failure modes") {
  PrecisionScope scope(ctx40);
  std::vector<Checkpoint> cps;
  for (long cut : {100L, 200L, 400L, 800L, 1600L}) cps.push_back({cut, Complex(Real(1) / Real(cut))});
  const std::vector<TailShape> twins = {{Complex(1), 0, 1}, {Complex(Real(1) + pow10(-30)), 0, 1}};
  CHECK_THROWS_AS(extrapolate_tail(cps, twins, ctx40), IllConditioned);
  const std::vector<TailShape> basis = {{Complex(1), 0, 1}};
  CHECK_THROWS_AS(extrapolate_tail(std::span(cps).first(3), basis, ctx40), DomainError);
  const std::vector<TailShape> wide = {{Complex(1), 2, 2}};
  CHECK_THROWS_AS(extrapolate_tail(cps, wide, ctx40), DomainError);
  std::swap(cps[1], cps[2]);
  CHECK_THROWS_AS(extrapolate_tail(cps, basis, ctx40), DomainError);
}

TEST_CASE("default tail basis follows the level exponents") {
  PrecisionScope scope(ctx40);
  const auto basis = default_tail_basis(multiple_hurwitz_terms(Composition({1, 2}), Complex(1)));
  REQUIRE(basis.size() == 1);
  CHECK(basis[0].exponent == Complex(1));
  CHECK(basis[0].log_power == 1);
  const auto weighted = default_tail_basis(
      weighted_series_terms(Composition({1, 1}), cx("0.5"), Complex(1), WeightVariant::prop1, Complex(0)));
  CHECK(weighted.size() == 2);
}

#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mzv/compositions.hpp"
#include "mzv/hp.hpp"
#include "mzv/special.hpp"

namespace mzv {

/// Which outer weight the Pochhammer-weighted series uses:
///   prop1: (alpha)_{m1}/m1! * mn!/(alpha)_{mn+1}
///   cor2:  (alpha)_{m1}/m1! * mn!/(alpha)_{mn}
enum class WeightVariant { prop1, cor2 };

std::string_view to_string(WeightVariant v) noexcept;
WeightVariant parse_weight_variant(std::string_view text);

/// One tail shape L^{-exponent} (c_0 + c_1 log L + ... + c_q log^q L), repeated
/// for `orders` consecutive integer shifts of the exponent.
struct TailShape {
  Complex exponent;
  int log_power = 0;
  int orders = 1;
};

enum class TailModel {
  /// Direct sum to cutoffs.front(), tail from the Euler-Maclaurin continuation
  /// of the series' asymptotic expansion.
  euler_maclaurin,
  /// Partial sums at every cutoff, limit by least-squares tail extrapolation.
  extrapolate,
};

struct TruncationPlan {
  std::vector<long> cutoffs{2000, 4000, 8000, 16000};
  /// Extrapolation basis; empty means "derive from the series' exponents".
  std::vector<TailShape> basis;
  double target_tol = 1e-10;
  TailModel tail = TailModel::euler_maclaurin;

  void validate() const;
  /// Every cutoff multiplied by `factor`.
  TruncationPlan scaled(long factor) const;
};

// ----------------------------------------------------------------------------
// Nested sums  sum_{0 <= m_1 < ... < m_n} t_1(m_1) ... t_n(m_n)
// where each level factor t_j is a product of Pochhammer-ratio weights and
// shifted negative powers.

/// w(m) = initial * (a)_m / (b)_m
struct PochhammerWeight {
  Complex a;
  Complex b;
  Complex initial;
};

/// (m + shift)^{-exponent}
struct ShiftedPower {
  Complex shift;
  int exponent = 1;
};

struct LevelTerm {
  std::vector<PochhammerWeight> weights;
  std::vector<ShiftedPower> powers;
};

/// levels[0] carries the smallest index m_1.
struct NestedSeries {
  std::vector<LevelTerm> levels;
};

/// t(m) for m in [0, count).
std::vector<Complex> level_values(const LevelTerm& term, long count);

/// Partial sums over 0 <= m_1 < ... < m_n < L for every L in `cutoffs`
/// (strictly increasing), by forward cumulative sums.
std::vector<Complex> nested_partial_sums(const NestedSeries& series, std::span<const long> cutoffs,
                                         const PrecisionContext& ctx);

/// Full series value according to the plan's tail model.
SeriesValue nested_sum(const NestedSeries& series, const TruncationPlan& plan, const PrecisionContext& ctx);

/// The series' tail exponents, used when a plan's basis is empty.
std::vector<TailShape> default_tail_basis(const NestedSeries& series);

// ----------------------------------------------------------------------------

/// sum_{l>=0} (l+alpha)^{-n} (l+beta)^{-m}.
SeriesValue lhs_double_pole(int n, int m, const Complex& alpha, const Complex& beta, const PrecisionContext& ctx);

NestedSeries weighted_series_terms(const Composition& k, const Complex& alpha, const Complex& beta,
                                   WeightVariant variant, const Complex& x);

/// sum_{0<=m1<...<mn} w1(m1) wn(mn) prod_j (m_j + beta - X)^{-k_j}.
SeriesValue weighted_multiple_series(const Composition& k, const Complex& alpha, const Complex& beta,
                                     WeightVariant variant, const Complex& x, const TruncationPlan& plan,
                                     const PrecisionContext& ctx);

NestedSeries multiple_hurwitz_terms(const Composition& s, const Complex& alpha);

/// sum_{0<=m1<...<mn} prod_j (m_j + alpha)^{-s_j}, last part >= 2.
SeriesValue multiple_hurwitz_zeta(const Composition& s, const Complex& alpha, const TruncationPlan& plan,
                                  const PrecisionContext& ctx);

struct Checkpoint {
  long cutoff;
  Complex partial_sum;
};

struct Extrapolation {
  Complex limit;
  Real err;
};

/// Least-squares fit of T(L) = T_inf + sum over the basis of c L^{-p} log^q L.
/// The limit comes from the trailing window; err is the spread of the limits
/// fitted on the last (up to three) trailing windows.
Extrapolation extrapolate_tail(std::span<const Checkpoint> checkpoints, std::span<const TailShape> basis,
                               const PrecisionContext& ctx);

}  // namespace mzv

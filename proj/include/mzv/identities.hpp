#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mzv/compositions.hpp"
#include "mzv/hp.hpp"
#include "mzv/multiseries.hpp"
#include "mzv/special.hpp"

namespace mzv {

enum class IdentityId {
  prop1,
  cor2,
  prop3,
  sum_formula,
  gf_prop1,
  gf_prop3,
  // quadrature-backed checks
  cov_eq4,
  cov_eq6,
  eq7_series,
  integral_prop1,
  integral_prop3,
};

std::string_view to_string(IdentityId id) noexcept;
IdentityId parse_identity_id(std::string_view text);

struct IdentityParams {
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> k;
  std::optional<Complex> alpha;
  std::optional<Complex> beta;
  std::optional<Complex> x;
  std::optional<int> level;
};

struct IdentityReport {
  IdentityId id = IdentityId::prop1;
  IdentityParams params;
  SeriesValue lhs;
  SeriesValue rhs;
  Real residual;
  double tol = 1e-10;
  bool pass = false;
  /// Non-empty when a numerical failure stopped the check ("ConvergenceError: ...").
  std::string error;
  int digits = 40;
  double wall_time = 0.0;
};

/// residual = |lhs - rhs|, pass <=> no error and residual <= max(tol, 10 (err_lhs + err_rhs)).
void finalize_report(IdentityReport& report);

enum class Execution { serial, parallel };

struct CheckOptions {
  double tol = 1e-10;
  TruncationPlan plan;
  PrecisionContext ctx;
  Execution exec = Execution::parallel;
};

/// Sum of `eval` over the compositions, accumulated in the given order. The
/// parallel path evaluates into indexed slots and reduces serially, so both
/// paths give identical results.
SeriesValue composition_sum(const std::vector<Composition>& comps,
                            const std::function<SeriesValue(const Composition&)>& eval, Execution exec);

IdentityReport check_prop1(int n, int m, const Complex& alpha, const Complex& beta, const CheckOptions& opts);
IdentityReport check_cor2(int k, int n, const Complex& alpha, const CheckOptions& opts);
IdentityReport check_prop3(int k, int n, const Complex& alpha, const CheckOptions& opts);
IdentityReport check_sum_formula(int k, int n, const CheckOptions& opts);
/// X only shifts beta: |X| < Re beta/4.
IdentityReport check_gf_prop1(int n, const Complex& alpha, const Complex& beta, const Complex& x,
                              const CheckOptions& opts);
/// Generating function of the multiple Hurwitz sums against the Pochhammer
/// ratio series at the same X; |X| < Re alpha/4.
IdentityReport check_gf_prop3(int n, const Complex& alpha, const Complex& x, const CheckOptions& opts);

/// The weighted side of the cor2 check and the multiple Hurwitz side of the
/// prop3 check, on their own.
SeriesValue cor2_weighted_sum(int k, int n, const Complex& alpha, const CheckOptions& opts);
SeriesValue prop3_hurwitz_sum(int k, int n, const Complex& alpha, const CheckOptions& opts);

}  // namespace mzv

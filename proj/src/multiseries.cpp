#include "mzv/multiseries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mzv/asymptotic.hpp"

namespace mzv {

std::string_view to_string(WeightVariant v) noexcept { return v == WeightVariant::prop1 ? "prop1" : "cor2"; }

WeightVariant parse_weight_variant(std::string_view text) {
  if (text == "prop1") return WeightVariant::prop1;
  if (text == "cor2") return WeightVariant::cor2;
  throw DomainError("unknown weight variant '" + std::string(text) + "' (expected prop1 or cor2)");
}

void TruncationPlan::validate() const {
  if (cutoffs.empty()) throw DomainError("truncation plan needs at least one cutoff");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 1) throw DomainError("truncation plan cutoffs must be positive");
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) throw DomainError("truncation plan cutoffs must be strictly increasing");
  }
  if (!(target_tol > 0)) throw DomainError("truncation plan target_tol must be positive");
  if (tail == TailModel::extrapolate && cutoffs.size() < 4)
    throw DomainError("extrapolation needs at least 4 cutoffs");
  for (const auto& shape : basis)
    if (shape.log_power < 0 || shape.orders < 1) throw DomainError("invalid tail shape in plan basis");
}

TruncationPlan TruncationPlan::scaled(long factor) const {
  TruncationPlan out = *this;
  for (auto& c : out.cutoffs) c *= factor;
  return out;
}

namespace {

std::vector<Complex> weight_values(const PochhammerWeight& w, long count) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  Complex cur = w.initial;
  for (long m = 0; m < count; ++m) {
    out.push_back(cur);
    cur = cur * (w.a + m) / (w.b + m);
  }
  return out;
}

/// Decay exponent of the level factor: t(m) ~ m^{-sigma}.
Complex level_sigma(const LevelTerm& term) {
  Complex sigma;
  for (const auto& w : term.weights) sigma += w.b - w.a;
  for (const auto& p : term.powers) sigma += Complex(p.exponent);
  return sigma;
}

/// Exponents of the suffix sums H_j(M) = sum over m_j >= M of levels j..n.
std::vector<Complex> suffix_sigmas(const NestedSeries& series) {
  const std::size_t n = series.levels.size();
  std::vector<Complex> out(n);
  Complex acc;
  for (std::size_t j = n; j-- > 0;) {
    Complex summand = level_sigma(series.levels[j]) + acc;
    if (summand.re <= Real(1))
      throw DomainError("nested series diverges: level " + std::to_string(j + 1) +
                        " summand decays like m^-" + summand.to_string(6));
    acc = summand - 1;
    out[j] = acc;
  }
  return out;
}

double parameter_scale(const NestedSeries& series) {
  double scale = 2.0;
  for (const auto& level : series.levels) {
    for (const auto& w : level.weights)
      scale = std::max({scale, abs(w.a).to_double() + 1.0, abs(w.b).to_double() + 1.0});
    for (const auto& p : level.powers) scale = std::max(scale, abs(p.shift).to_double() + 1.0);
  }
  return scale;
}

void validate_series(const NestedSeries& series) {
  if (series.levels.empty()) throw DomainError("nested series needs at least one level");
  for (const auto& level : series.levels)
    for (const auto& p : level.powers) {
      if (p.exponent < 0) throw DomainError("shifted power exponent must be nonnegative");
      const Real nearest = Real(std::round(p.shift.re.to_double()));
      if (p.shift.im.is_zero() && p.shift.re == nearest && nearest.sign() <= 0)
        throw DomainError("shifted power hits a pole at a nonnegative index");
    }
}

SeriesValue nested_sum_euler_maclaurin(const NestedSeries& series, const TruncationPlan& plan,
                                       const PrecisionContext& ctx) {
  const std::size_t n = series.levels.size();
  const long cutoff = plan.cutoffs.front();
  const double scale = parameter_scale(series);
  if (static_cast<double>(cutoff) < 8.0 * scale)
    throw ConvergenceError("cutoff " + std::to_string(cutoff) + " too small for the asymptotic tail");
  const int order = asymptotic::order_for(cutoff, scale, ctx.working_digits());

  std::vector<std::vector<Complex>> values(n);
  std::vector<double> abs_sums(n, 0.0);
  std::vector<AsymptoticSeries<Complex>> term_expansions;
  term_expansions.reserve(n);
  const Real x_cut = Real(cutoff);
  for (std::size_t j = 0; j < n; ++j) {
    const LevelTerm& level = series.levels[j];
    auto& vals = values[j];
    vals.assign(static_cast<std::size_t>(cutoff), Complex(Real(1)));
    AsymptoticSeries<Complex> expansion{Complex(), {}};
    expansion.coeffs.assign(static_cast<std::size_t>(order), Complex());
    expansion.coeffs[0] = Complex(Real(1));
    for (const auto& w : level.weights) {
      auto wv = weight_values(w, cutoff + 1);
      for (long m = 0; m < cutoff; ++m) vals[static_cast<std::size_t>(m)] *= wv[static_cast<std::size_t>(m)];
      // w(m) = C * Gamma(m+a)/Gamma(m+b); C is fixed by the exact value at the cutoff.
      auto ratio = asymptotic::gamma_ratio(w.a, w.b, w.a - w.b, order);
      const auto at_cut = asymptotic::evaluate(ratio, x_cut);
      expansion = asymptotic::multiply(expansion, asymptotic::scale(ratio, wv.back() / at_cut.value));
    }
    for (const auto& p : level.powers) {
      for (long m = 0; m < cutoff; ++m)
        vals[static_cast<std::size_t>(m)] *= pow(p.shift + m, -static_cast<long>(p.exponent));
      expansion = asymptotic::multiply(
          expansion, asymptotic::shifted_power(p.shift, Complex(p.exponent), order, Complex(Real(1))));
    }
    for (const auto& v : vals) abs_sums[j] += abs(v).to_double();
    term_expansions.push_back(std::move(expansion));
  }

  // Suffix sums at the cutoff from the continued expansions, innermost last.
  std::vector<Complex> suffix(n + 1, Complex(Real(1)));
  std::vector<Real> truncation(n);
  AsymptoticSeries<Complex> outer_tail{};
  for (std::size_t j = n; j-- > 0;) {
    AsymptoticSeries<Complex> summand =
        j + 1 == n ? term_expansions[j]
                   : asymptotic::multiply(term_expansions[j], asymptotic::shift(outer_tail, Complex(1)));
    outer_tail = asymptotic::tail_sum(summand);
    auto at_cut = asymptotic::evaluate(outer_tail, x_cut);
    suffix[j] = std::move(at_cut.value);
    truncation[j] = std::move(at_cut.last_term);
  }

  for (long m = cutoff - 1; m >= 0; --m)
    for (std::size_t j = 0; j < n; ++j) suffix[j] += values[j][static_cast<std::size_t>(m)] * suffix[j + 1];

  SeriesValue out;
  out.value = require_finite(suffix[0], "nested_sum");
  double prefix = 1.0;
  double total_abs = 1.0;
  Real err;
  for (std::size_t j = 0; j < n; ++j) {
    err += truncation[j] * Real(prefix);
    prefix *= std::max(abs_sums[j], 1.0);
    total_abs *= std::max(abs_sums[j], 1.0);
  }
  err += pow10(-ctx.working_digits()) * Real(static_cast<double>(cutoff) * static_cast<double>(n) * total_abs);
  out.err = err;
  out.cutoff = cutoff - 1;
  out.method = SeriesMethod::euler_maclaurin;
  return out;
}

SeriesValue nested_sum_extrapolated(const NestedSeries& series, const TruncationPlan& plan,
                                    const PrecisionContext& ctx) {
  auto sums = nested_partial_sums(series, plan.cutoffs, ctx);
  std::vector<Checkpoint> checkpoints;
  for (std::size_t i = 0; i < sums.size(); ++i) checkpoints.push_back({plan.cutoffs[i], std::move(sums[i])});
  const auto basis = plan.basis.empty() ? default_tail_basis(series) : plan.basis;
  auto fit = extrapolate_tail(checkpoints, basis, ctx);
  if (fit.err > Real(10 * plan.target_tol))
    throw ConvergenceError("extrapolated tail did not settle: window spread " + fit.err.to_string(3) +
                           " exceeds 10 x target_tol");
  SeriesValue out;
  out.value = std::move(fit.limit);
  out.err = std::move(fit.err);
  out.cutoff = plan.cutoffs.back() - 1;
  out.method = SeriesMethod::extrapolated;
  return out;
}

}  // namespace

std::vector<Complex> level_values(const LevelTerm& term, long count) {
  std::vector<Complex> vals(static_cast<std::size_t>(count), Complex(Real(1)));
  for (const auto& w : term.weights) {
    auto wv = weight_values(w, count);
    for (long m = 0; m < count; ++m) vals[static_cast<std::size_t>(m)] *= wv[static_cast<std::size_t>(m)];
  }
  for (const auto& p : term.powers)
    for (long m = 0; m < count; ++m)
      vals[static_cast<std::size_t>(m)] *= pow(p.shift + m, -static_cast<long>(p.exponent));
  return vals;
}

std::vector<Complex> nested_partial_sums(const NestedSeries& series, std::span<const long> cutoffs,
                                         const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  validate_series(series);
  for (std::size_t i = 1; i < cutoffs.size(); ++i)
    if (cutoffs[i] <= cutoffs[i - 1]) throw DomainError("partial-sum cutoffs must be strictly increasing");
  if (cutoffs.empty()) return {};
  const std::size_t n = series.levels.size();
  const long last = cutoffs.back();

  // Running weight values and power shifts per level.
  struct LevelState {
    std::vector<Complex> weights;
  };
  std::vector<LevelState> state(n);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& w : series.levels[j].weights) state[j].weights.push_back(w.initial);

  // prefix[j] = sum over m_1 < ... < m_j < m of levels 1..j; prefix[0] = 1.
  std::vector<Complex> prefix(n + 1);
  prefix[0] = Complex(Real(1));
  std::vector<Complex> out;
  out.reserve(cutoffs.size());
  std::size_t next_cut = 0;
  std::vector<Complex> term(n);
  for (long m = 0; m < last; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex t(Real(1));
      const LevelTerm& level = series.levels[j];
      for (std::size_t w = 0; w < level.weights.size(); ++w) {
        t *= state[j].weights[w];
        state[j].weights[w] = state[j].weights[w] * (level.weights[w].a + m) / (level.weights[w].b + m);
      }
      for (const auto& p : level.powers) t *= pow(p.shift + m, -static_cast<long>(p.exponent));
      term[j] = std::move(t);
    }
    for (std::size_t j = n; j >= 1; --j) prefix[j] += term[j - 1] * prefix[j - 1];
    if (m + 1 == cutoffs[next_cut]) {
      out.push_back(prefix[n]);
      ++next_cut;
    }
  }
  return out;
}

std::vector<TailShape> default_tail_basis(const NestedSeries& series) {
  const auto sigmas = suffix_sigmas(series);
  std::vector<TailShape> basis;
  const int logs = static_cast<int>(series.levels.size()) - 1;
  for (const auto& s : sigmas) {
    bool seen = false;
    for (const auto& b : basis) seen = seen || b.exponent == s;
    if (!seen) basis.push_back({s, logs, 1});
  }
  return basis;
}

SeriesValue nested_sum(const NestedSeries& series, const TruncationPlan& plan, const PrecisionContext& ctx) {
  plan.validate();
  PrecisionScope scope(ctx);
  validate_series(series);
  suffix_sigmas(series);
  return plan.tail == TailModel::euler_maclaurin ? nested_sum_euler_maclaurin(series, plan, ctx)
                                                 : nested_sum_extrapolated(series, plan, ctx);
}

// ---------------------------------------------------------------------------

namespace {

void require_positive_real_part(const Complex& z, const char* name) {
  if (z.re.sign() <= 0) throw DomainError(std::string(name) + " must have positive real part (got " + z.to_string(10) + ")");
}

/// binom(-m, r) = (-1)^r C(m+r-1, r)
Real negative_binomial(int m, int r) {
  Real c = 1;
  for (int i = 1; i <= r; ++i) c = c * (m + i - 1) / i;
  return r % 2 == 0 ? c : -c;
}

}  // namespace

SeriesValue lhs_double_pole(int n, int m, const Complex& alpha, const Complex& beta, const PrecisionContext& ctx) {
  if (n < 1 || m < 1) throw DomainError("lhs_double_pole: n and m must be >= 1");
  require_positive_real_part(alpha, "alpha");
  require_positive_real_part(beta, "beta");
  PrecisionScope scope(ctx);
  const Complex delta = beta - alpha;
  const Real delta_abs = abs(delta);

  if (delta_abs <= pow10(-ctx.digits / 2)) {
    SeriesValue v = hurwitz_zeta(n + m, alpha, ctx);
    // First-order sensitivity to beta: m * zeta(n+m+1; alpha).
    if (!delta_abs.is_zero()) v.err += delta_abs * m * abs(hurwitz_zeta(n + m + 1, alpha, ctx).value);
    return v;
  }

  // 1/((x+a)^n (x+b)^m) = sum_i A_i/(x+a)^i + sum_j B_j/(x+b)^j,
  // A_i = binom(-m, n-i) delta^{-m-n+i}, B_j = binom(-n, m-j) (-delta)^{-n-m+j}.
  const Complex inv_delta = reciprocal(delta);
  Complex value;
  Real magnitude;
  Real err;
  Complex a1;
  for (int i = 1; i <= n; ++i) {
    Complex coeff = pow(inv_delta, m + n - i) * negative_binomial(m, n - i);
    if (i == 1) {
      a1 = coeff;
      continue;
    }
    SeriesValue z = hurwitz_zeta(i, alpha, ctx);
    Complex term = coeff * z.value;
    magnitude += abs(term);
    err += abs(coeff) * z.err;
    value += term;
  }
  const Complex minus_inv_delta = -inv_delta;
  for (int j = 2; j <= m; ++j) {
    Complex coeff = pow(minus_inv_delta, m + n - j) * negative_binomial(n, m - j);
    SeriesValue z = hurwitz_zeta(j, beta, ctx);
    Complex term = coeff * z.value;
    magnitude += abs(term);
    err += abs(coeff) * z.err;
    value += term;
  }
  // The two exponent-1 pieces carry opposite residues (A_1 + B_1 = 0), so
  // they combine into a convergent digamma difference.
  const Complex psi_alpha = digamma(alpha, ctx);
  const Complex psi_beta = digamma(beta, ctx);
  Complex first_order = a1 * (psi_beta - psi_alpha);
  magnitude += abs(a1) * (abs(psi_alpha) + abs(psi_beta));
  value += first_order;

  const Real value_abs = abs(value);
  const double lost = log10_abs(magnitude) - log10_abs(value_abs);
  if (!value_abs.is_zero() && lost > ctx.guard)
    throw CancellationError("lhs_double_pole: partial fractions lose " + std::to_string(static_cast<int>(lost)) +
                            " digits (|alpha-beta| = " + delta_abs.to_string(3) + ")");

  SeriesValue out;
  out.value = require_finite(value, "lhs_double_pole");
  out.err = err + magnitude * pow10(-ctx.working_digits()) * 10;
  out.cutoff = 0;
  out.method = SeriesMethod::partial_fraction;
  return out;
}

NestedSeries weighted_series_terms(const Composition& k, const Complex& alpha, const Complex& beta,
                                   WeightVariant variant, const Complex& x) {
  const int n = k.depth();
  const Complex shift = beta - x;
  NestedSeries series;
  series.levels.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) series.levels[static_cast<std::size_t>(j)].powers.push_back({shift, k[j]});
  // (alpha)_m / m!
  series.levels.front().weights.push_back({alpha, Complex(1), Complex(1)});
  // m!/(alpha)_{m+1} = (1/alpha) (1)_m/(alpha+1)_m ;  m!/(alpha)_m = (1)_m/(alpha)_m
  if (variant == WeightVariant::prop1)
    series.levels.back().weights.push_back({Complex(1), alpha + 1, reciprocal(alpha)});
  else
    series.levels.back().weights.push_back({Complex(1), alpha, Complex(1)});
  return series;
}

SeriesValue weighted_multiple_series(const Composition& k, const Complex& alpha, const Complex& beta,
                                     WeightVariant variant, const Complex& x, const TruncationPlan& plan,
                                     const PrecisionContext& ctx) {
  require_positive_real_part(alpha, "alpha");
  require_positive_real_part(beta, "beta");
  PrecisionScope scope(ctx);
  if (!(abs(x) < beta.re)) throw DomainError("weighted_multiple_series: |X| must be below Re beta");
  return nested_sum(weighted_series_terms(k, alpha, beta, variant, x), plan, ctx);
}

NestedSeries multiple_hurwitz_terms(const Composition& s, const Complex& alpha) {
  NestedSeries series;
  for (int part : s.parts()) series.levels.push_back({{}, {{alpha, part}}});
  return series;
}

SeriesValue multiple_hurwitz_zeta(const Composition& s, const Complex& alpha, const TruncationPlan& plan,
                                  const PrecisionContext& ctx) {
  if (s.back() < 2) throw DomainError("multiple_hurwitz_zeta: last exponent must be >= 2 (series diverges)");
  require_positive_real_part(alpha, "alpha");
  return nested_sum(multiple_hurwitz_terms(s, alpha), plan, ctx);
}

// ---------------------------------------------------------------------------

namespace {

struct Fit {
  Complex limit;
  double condition;
};

/// Least squares by modified Gram-Schmidt with one reorthogonalisation pass.
Fit least_squares_limit(const std::vector<std::vector<Complex>>& columns, const std::vector<Complex>& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t cols = columns.size();
  std::vector<std::vector<Complex>> q = columns;
  std::vector<std::vector<Complex>> r(cols, std::vector<Complex>(cols));
  std::vector<Real> norms(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex dot;
        for (std::size_t t = 0; t < rows; ++t) dot += conj(q[i][t]) * q[j][t];
        for (std::size_t t = 0; t < rows; ++t) q[j][t] -= dot * q[i][t];
        r[i][j] += dot;
      }
    }
    Real nrm;
    for (std::size_t t = 0; t < rows; ++t) nrm += norm(q[j][t]);
    nrm = sqrt(nrm);
    if (nrm.is_zero()) throw IllConditioned("extrapolation basis is rank deficient");
    for (std::size_t t = 0; t < rows; ++t) q[j][t] /= nrm;
    r[j][j] = Complex(nrm);
    norms[j] = nrm;
  }
  std::vector<Complex> y(cols);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t t = 0; t < rows; ++t) y[i] += conj(q[i][t]) * rhs[t];
  std::vector<Complex> x(cols);
  for (std::size_t i = cols; i-- > 0;) {
    Complex acc = y[i];
    for (std::size_t j = i + 1; j < cols; ++j) acc -= r[i][j] * x[j];
    x[i] = acc / r[i][i];
  }
  double hi = 0, lo = INFINITY;
  for (const auto& nv : norms) {
    hi = std::max(hi, nv.to_double());
    lo = std::min(lo, nv.to_double());
  }
  return {x[0], hi / lo};
}

}  // namespace

Extrapolation extrapolate_tail(std::span<const Checkpoint> checkpoints, std::span<const TailShape> basis,
                               const PrecisionContext& ctx) {
  if (checkpoints.size() < 4) throw DomainError("extrapolate_tail needs at least 4 checkpoints");
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i].cutoff <= checkpoints[i - 1].cutoff)
      throw DomainError("extrapolate_tail: checkpoint cutoffs must be strictly increasing");
  PrecisionScope scope(ctx);

  std::size_t unknowns = 1;
  for (const auto& shape : basis) {
    if (shape.log_power < 0 || shape.orders < 1) throw DomainError("extrapolate_tail: invalid tail shape");
    unknowns += static_cast<std::size_t>((shape.log_power + 1) * shape.orders);
  }
  const std::size_t total = checkpoints.size();
  if (total < unknowns + 1)
    throw DomainError("extrapolate_tail: " + std::to_string(total) + " checkpoints cannot fit " +
                      std::to_string(unknowns) + " unknowns with a spread estimate");

  // Columns over all checkpoints, each normalised to unit max magnitude.
  std::vector<std::vector<Complex>> columns;
  columns.emplace_back(total, Complex(Real(1)));
  for (const auto& shape : basis) {
    for (int o = 0; o < shape.orders; ++o) {
      for (int q = 0; q <= shape.log_power; ++q) {
        std::vector<Complex> col;
        Real peak;
        for (const auto& cp : checkpoints) {
          const Real L = Real(cp.cutoff);
          const Real logl = log(L);
          Complex v = pow(L, -(shape.exponent + o));
          for (int t = 0; t < q; ++t) v *= logl;
          peak = max(peak, abs(v));
          col.push_back(std::move(v));
        }
        for (auto& v : col) v /= peak;
        columns.push_back(std::move(col));
      }
    }
  }

  const double limit_condition = std::pow(10.0, ctx.digits / 2.0);
  std::vector<Complex> limits;
  for (std::size_t start = 0; start < 3; ++start) {
    const std::size_t rows = total - start;
    if (rows < unknowns) break;
    std::vector<std::vector<Complex>> window;
    for (const auto& col : columns) window.emplace_back(col.begin() + static_cast<long>(start), col.end());
    std::vector<Complex> rhs;
    for (std::size_t t = start; t < total; ++t) rhs.push_back(checkpoints[t].partial_sum);
    Fit fit = least_squares_limit(window, rhs);
    if (!(fit.condition <= limit_condition))
      throw IllConditioned("extrapolate_tail: fit condition " + std::to_string(fit.condition) + " exceeds 10^(digits/2)");
    limits.push_back(std::move(fit.limit));
  }

  Real spread;
  for (std::size_t i = 0; i < limits.size(); ++i)
    for (std::size_t j = i + 1; j < limits.size(); ++j) spread = max(spread, abs(limits[i] - limits[j]));
  return {limits.back(), spread};
}

}  // namespace mzv

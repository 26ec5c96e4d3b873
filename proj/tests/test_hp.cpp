#include <thread>
#include <vector>

#include "doctest.h"
#include "mzv/special.hpp"
#include "oracles.hpp"

using namespace mzv;

namespace {
const PrecisionContext ctx40{40};
}

TEST_CASE("precision context bounds") {
  CHECK_THROWS_AS(PrecisionContext(19), DomainError);
  CHECK_THROWS_AS(PrecisionContext(40, 4), DomainError);
  const PrecisionContext c(30, 10);
  CHECK(c.working_digits() == 40);
  CHECK(c.bits() >= 133);
}

TEST_CASE("precision scope nests and restores") {
  const auto outer = working_bits();
  {
    PrecisionScope a(PrecisionContext(100));
    CHECK(working_bits() == PrecisionContext(100).bits());
    {
      PrecisionScope b(PrecisionContext(20));
      CHECK(Real(1).bits() == PrecisionContext(20).bits());
    }
    CHECK(working_bits() == PrecisionContext(100).bits());
  }
  CHECK(working_bits() == outer);
}

TEST_CASE("complex parse and print") {
  PrecisionScope scope(ctx40);
  CHECK(Complex::parse("1").to_string(10) == "1e0");
  CHECK(Complex::parse("0.75+0.25i").to_string(10) == "7.5e-1+2.5e-1i");
  CHECK(Complex::parse("-2.5e-1i").to_string(10) == "0-2.5e-1i");
  CHECK(Complex::parse("1-i").im == Real(-1));
  CHECK(Complex::parse("1e-3+2E2i").im == Real(200));
  CHECK_THROWS_AS(Complex::parse("1..2"), DomainError);
  CHECK_THROWS_AS(Complex::parse("abc"), DomainError);
  CHECK_THROWS_AS(Complex::parse(""), DomainError);

  // decimal strings survive a parse/print round trip at the printed digits
  for (const char* s : {"1.2345678901234567890123456789012345678e-7", "-3.14159e2+2.5e-1i"}) {
    const Complex z = Complex::parse(s);
    CHECK(Complex::parse(z.to_string(38)).to_string(38) == z.to_string(38));
  }
  // parsing keeps every digit rather than going through a double
  const Real third = Real::parse("0.3333333333333333333333333333333333333333");
  CHECK(abs(third * 3 - Real(1)).to_double() < 1e-39);
}

TEST_CASE("integer and real mixing does not truncate") {
  PrecisionScope scope(ctx40);
  const Real x(3);
  CHECK((x * Real(0.5)).to_double() == doctest::Approx(1.5));
  CHECK((x / 2).to_double() == doctest::Approx(1.5));
  CHECK((2 - x).to_double() == doctest::Approx(-1.0));
}

TEST_CASE("pochhammer examples") {
  PrecisionScope scope(ctx40);
  CHECK(pochhammer(Complex::parse("0.3+2i"), 0, ctx40) == Complex(1));
  CHECK(pochhammer(Complex(1), 3, ctx40) == Complex(6));
  CHECK(oracle::dist(pochhammer(Complex::parse("0.5"), 2, ctx40), Complex::parse("0.75")) < 1e-50);
  CHECK_THROWS_AS(pochhammer(Complex(1), -1, ctx40), DomainError);
}

TEST_CASE("pochhammer recurrence") {
  PrecisionScope scope(ctx40);
  for (const char* a : {"1", "0.5", "1+0.5i", "-2.25+3i"})
    for (long m = 0; m < 30; m += 3) {
      const Complex z = Complex::parse(a);
      const Complex lhs = pochhammer(z, m + 1, ctx40);
      const Complex rhs = pochhammer(z, m, ctx40) * (z + m);
      CHECK(abs(lhs - rhs) <= abs(lhs) * pow10(-50));
    }
}

TEST_CASE("bernoulli numbers") {
  PrecisionScope scope(ctx40);
  const auto b3 = bernoulli_numbers(3, ctx40);
  REQUIRE(b3.size() == 3);
  CHECK(b3[0] == Real(1));
  CHECK(abs(b3[1] + Real(1) / 2).to_double() < 1e-50);
  CHECK(abs(b3[2] - Real(1) / 6).to_double() < 1e-50);
  CHECK(bernoulli_numbers(5, ctx40)[3].is_zero());
  // n = 7: 1 + 7 B1 + 21 B2 + 35 B3 + 35 B4 + 21 B5 + 7 B6 = 0 with B4 = -1/30
  CHECK(abs(bernoulli_numbers(7, ctx40)[6] - Real(1) / 42).to_double() < 1e-50);
  CHECK_THROWS_AS(bernoulli_numbers(0, ctx40), DomainError);
}

TEST_CASE("digamma values") {
  PrecisionScope scope(ctx40);
  const Complex psi1 = digamma(Complex(1), ctx40);
  CHECK(std::abs(psi1.re.to_double() + oracle::euler_gamma_limit()) < 1e-13);
  CHECK(oracle::dist(digamma(Complex(2), ctx40), psi1 + 1) < 1e-50);
  const Complex half = digamma(Complex::parse("0.5"), ctx40);
  CHECK(oracle::dist(half, psi1 - log(Real(2)) * 2) < 1e-50);

  // psi(z) = -gamma + sum_k (1/(k+1) - 1/(k+z)) directly, with the tail (z-1)/(N + z/2)
  const double z = 0.5;
  const long n = 1000000;
  const auto head = oracle::sum_backward(n, [&](long k) { return oracle::cd(1.0 / (k + 1) - 1.0 / (k + z)); });
  const double direct = -oracle::euler_gamma_limit() + head.real() + (z - 1) / (n + z / 2);
  CHECK(std::abs(half.re.to_double() - direct) < 1e-10);
}

TEST_CASE("digamma recurrence") {
  PrecisionScope scope(ctx40);
  for (const char* s : {"0.1", "0.5+0.5i", "3.7-2i", "25+10i", "-1.5+0.25i"}) {
    const Complex z = Complex::parse(s);
    const Complex diff = digamma(z + 1, ctx40) - digamma(z, ctx40);
    CHECK(abs(diff - reciprocal(z)) <= pow10(-38));
  }
}

TEST_CASE("digamma poles") {
  PrecisionScope scope(ctx40);
  CHECK_THROWS_AS(digamma(Complex(0), ctx40), PoleError);
  CHECK_THROWS_AS(digamma(Complex(-3), ctx40), PoleError);
  CHECK_THROWS_AS(digamma(Complex::parse("-2.00000000000000000000000000000000000000000001"), ctx40), PoleError);
  CHECK_NOTHROW(digamma(Complex::parse("-2.0000000000001"), ctx40));
}

TEST_CASE("hurwitz zeta values") {
  PrecisionScope scope(ctx40);
  const auto z2 = hurwitz_zeta(2, Complex(1), ctx40);
  CHECK(abs(z2.value - oracle::zeta2()).to_double() < 1e-40);
  CHECK(z2.err.to_double() <= 1e-40);
  CHECK(z2.method == SeriesMethod::euler_maclaurin);
  CHECK(z2.cutoff > 0);

  const auto z2a2 = hurwitz_zeta(2, Complex(2), ctx40);
  CHECK(oracle::dist(z2a2.value, z2.value - 1) < 1e-45);

  const auto z3 = hurwitz_zeta(3, Complex(1), ctx40);
  CHECK(std::abs(z3.value.re.to_double() - oracle::zeta_brute(3)) < 1e-15);
  CHECK(z3.value.to_string(17) == "1.2020569031595943e0");

  // zeta(2; 1/2) = 3 zeta(2) = pi^2/2
  CHECK(abs(hurwitz_zeta(2, Complex::parse("0.5"), ctx40).value - pi() * pi() / 2).to_double() < 1e-40);
}

TEST_CASE("hurwitz zeta domain") {
  PrecisionScope scope(ctx40);
  CHECK_THROWS_AS(hurwitz_zeta(1, Complex(1), ctx40), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2, Complex(0), ctx40), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2, Complex::parse("-0.5+3i"), ctx40), DomainError);
}

TEST_CASE("hurwitz zeta telescopes") {
  PrecisionScope scope(ctx40);
  for (int s = 2; s <= 4; ++s)
    for (const char* a : {"1", "0.5", "1.5", "0.75+0.25i", "1+0.5i", "0.1+3i"}) {
      const Complex z = Complex::parse(a);
      const auto lo = hurwitz_zeta(s, z, ctx40);
      const auto hi = hurwitz_zeta(s, z + 1, ctx40);
      CHECK(abs(lo.value - hi.value - pow(z, -static_cast<long>(s))) <= lo.err + hi.err + pow10(-50));
    }
}

TEST_CASE("hurwitz zeta is cutoff independent") {
  PrecisionScope scope(ctx40);
  for (int s = 2; s <= 5; ++s)
    for (const char* a : {"1", "0.5", "1+0.5i"}) {
      const auto once = hurwitz_zeta(s, Complex::parse(a), 60, ctx40);
      const auto twice = hurwitz_zeta(s, Complex::parse(a), 120, ctx40);
      CHECK(abs(once.value - twice.value) <= once.err + twice.err);
      CHECK(twice.err < once.err);
    }
}

TEST_CASE("special functions are safe to call from several threads") {
  PrecisionScope scope(ctx40);
  const Complex a = Complex::parse("0.75+0.25i");
  const std::string expect = hurwitz_zeta(3, a, ctx40).value.to_string(40) + digamma(a, ctx40).to_string(40);
  std::vector<std::string> got(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      got[static_cast<std::size_t>(t)] = hurwitz_zeta(3, a, ctx40).value.to_string(40) + digamma(a, ctx40).to_string(40);
    });
  for (auto& th : threads) th.join();
  for (const auto& s : got) CHECK(s == expect);
}

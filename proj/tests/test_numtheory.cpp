#include <doctest.h>

#include <random>

#include "hfd/numtheory.hpp"
#include "oracles.hpp"

using namespace hfd;

namespace {

/// Legendre symbol by Euler's criterion with plain 64-bit arithmetic.
int legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

/// (x, -1)_p for odd p from the closed form: -1 iff v_p(x) is odd and p = 3 mod 4.
int symbol_minus_one(long num, long den, long p) {
  long v = 0;
  while (num % p == 0) num /= p, ++v;
  while (den % p == 0) den /= p, --v;
  return (v % 2 != 0 && p % 4 == 3) ? -1 : 1;
}

std::vector<long> odd_primes_upto(long n) {
  std::vector<long> out;
  for (long p = 3; p <= n; p += 2) {
    bool prime = true;
    for (long q = 3; q * q <= p; q += 2)
      if (p % q == 0) prime = false;
    if (prime) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("valuation") {
  CHECK(valuation(Rational(18), BigInt(3)) == 2);
  CHECK(valuation(Rational(BigInt(3), BigInt(4)), BigInt(2)) == -2);
  CHECK(valuation(Rational(21), BigInt(3)) == 1);
  CHECK(valuation(Rational(5), BigInt(3)) == 0);
  CHECK_THROWS(valuation(Rational(0), BigInt(3)));
}

TEST_CASE("norm residue symbol examples") {
  CHECK(norm_residue_symbol(Rational(3), Rational(-1), BigInt(3)) == -1);
  CHECK(norm_residue_symbol(Rational(2), Rational(-1), BigInt(3)) == 1);
  CHECK(norm_residue_symbol(Rational(21), Rational(-1), BigInt(3)) == -1);
  CHECK(norm_residue_symbol(Rational(21), Rational(-1), BigInt(7)) == -1);
  CHECK(norm_residue_symbol(Rational(21), Rational(-1), BigInt(5)) == 1);
  CHECK_THROWS(norm_residue_symbol(Rational(3), Rational(-1), BigInt(2)));
  CHECK_THROWS(norm_residue_symbol(Rational(0), Rational(-1), BigInt(3)));
}

TEST_CASE("norm residue symbol agrees with Legendre symbols") {
  // For p not dividing a, (a, p)_p = (a / p).
  for (long p : odd_primes_upto(50))
    for (long a = 1; a < 40; ++a) {
      if (a % p == 0) continue;
      CHECK(norm_residue_symbol(Rational(a), Rational(p), BigInt(p)) == legendre(a, p));
    }
}

TEST_CASE("symbol is bilinear and symmetric") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> dist(-60, 60), den(1, 30);
  const auto primes = odd_primes_upto(40);
  auto rnd = [&] {
    int n = 0;
    while (n == 0) n = dist(rng);
    return Rational(BigInt(n), BigInt(den(rng)));
  };
  for (int t = 0; t < 300; ++t) {
    const Rational a = rnd(), a2 = rnd(), b = rnd();
    const BigInt p(primes[static_cast<std::size_t>(t) % primes.size()]);
    CHECK(norm_residue_symbol(a * a2, b, p) == norm_residue_symbol(a, b, p) * norm_residue_symbol(a2, b, p));
    CHECK(norm_residue_symbol(a, b, p) == norm_residue_symbol(b, a, p));
  }
}

TEST_CASE("norms from Q(i)") {
  CHECK(is_norm_from_Qi(Rational(5)));
  CHECK_FALSE(is_norm_from_Qi(Rational(3)));
  CHECK(is_norm_from_Qi(Rational(2)));
  CHECK_FALSE(is_norm_from_Qi(Rational(-1)));
  CHECK(is_norm_from_Qi(Rational(BigInt(9), BigInt(5))));
  CHECK_THROWS(is_norm_from_Qi(Rational(0)));

  CHECK(norm_class_equal(Rational(3), Rational(3)));
  CHECK(norm_class_equal(Rational(21), Rational(3) * Rational(7)));
  CHECK_FALSE(norm_class_equal(Rational(3), Rational(1)));
  CHECK(norm_class_equal(Rational(3 * 25), Rational(BigInt(3), BigInt(2))));

  CHECK(norm_class_representative(Rational(21)) == 21);
  CHECK(norm_class_representative(Rational(3 * 5 * 9)) == 3);
  CHECK(norm_class_representative(Rational(BigInt(1), BigInt(7))) == 7);

  // Sum-of-two-squares oracle.
  for (long p = 1; p <= 60; ++p)
    for (long q = 1; q <= 12; ++q) {
      CHECK(is_norm_from_Qi(Rational(BigInt(p), BigInt(q))) == oracle::rational_is_qi_norm(p, q));
      CHECK_FALSE(is_norm_from_Qi(Rational(BigInt(-p), BigInt(q))));
    }
}

TEST_CASE("norms have trivial symbols") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long> dist(1, 5000);
  std::uniform_int_distribution<int> sign(0, 1);
  const auto primes = odd_primes_upto(100);
  for (int t = 0; t < 1000; ++t) {
    const long num = dist(rng) * (sign(rng) ? 1 : -1), den = dist(rng);
    const Rational x{BigInt(num), BigInt(den)};
    if (!is_norm_from_Qi(x)) continue;
    for (long p : primes) {
      if (num % p != 0 && den % p != 0) continue;
      CHECK(norm_residue_symbol(x, Rational(-1), BigInt(p)) == 1);
    }
  }
  // Closed-form oracle for (x, -1)_p.
  for (int t = 0; t < 500; ++t) {
    const long num = dist(rng), den = dist(rng);
    for (long p : {3L, 5L, 7L, 11L, 13L})
      CHECK(norm_residue_symbol(Rational(BigInt(num), BigInt(den)), Rational(-1), BigInt(p)) ==
            symbol_minus_one(num, den, p));
  }
}

TEST_CASE("symbol certificates") {
  const SymbolCertificate c = symbol_certificate(Rational(21));
  CHECK(c.verdict == SymbolCertificate::Verdict::not_norm);
  CHECK(c.has_negative_symbol());
  bool saw3 = false;
  for (const auto& [p, s] : c.symbols)
    if (p == 3) {
      saw3 = true;
      CHECK(s == -1);
    }
  CHECK(saw3);

  CHECK(symbol_certificate(Rational(5)).verdict == SymbolCertificate::Verdict::norm);
  CHECK(symbol_certificate(Rational(-5)).verdict == SymbolCertificate::Verdict::not_norm);

  const SymbolCertificate at = symbol_certificate_at(Rational(21), {BigInt(3), BigInt(5)});
  REQUIRE(at.symbols.size() == 2);
  CHECK(at.symbols[0].second == -1);
  CHECK(at.symbols[1].second == 1);
}

TEST_CASE("factorization") {
  const Factorization f = factor(BigInt(2) * 2 * 3 * 7 * 7 * 101);
  CHECK(f.complete());
  REQUIRE(f.primes.size() == 4);
  CHECK(f.primes[0] == std::pair<BigInt, int>{BigInt(2), 2});
  CHECK(f.primes[3] == std::pair<BigInt, int>{BigInt(101), 1});
  // Product of two primes beyond the trial bound goes to rho.
  const BigInt big = BigInt("1000003") * BigInt("1000033");
  const Factorization g = factor(big);
  CHECK(g.complete());
  CHECK(g.primes.size() == 2);
  FactorBudget tiny{100, 10};
  CHECK_FALSE(factor(big, tiny).complete());
  CHECK(is_probable_prime(BigInt("1000003")));
  CHECK_FALSE(is_probable_prime(big));
}

TEST_CASE("Pell solutions") {
  const auto sols = pell_solutions(3);
  REQUIRE(sols.size() == 3);
  CHECK(sols[0] == std::pair<BigInt, BigInt>{BigInt(3), BigInt(2)});
  CHECK(sols[1] == std::pair<BigInt, BigInt>{BigInt(17), BigInt(12)});
  CHECK(sols[2] == std::pair<BigInt, BigInt>{BigInt(99), BigInt(70)});

  const auto brute = oracle::pell_brute(10000);
  const auto rec = pell_solutions(static_cast<int>(brute.size()) + 1);
  for (std::size_t k = 0; k < brute.size(); ++k) {
    CHECK(rec[k].first == static_cast<long>(brute[k].first));
    CHECK(rec[k].second == static_cast<long>(brute[k].second));
  }
  CHECK(rec[brute.size()].second > 10000);
}

TEST_CASE("non-square multiples") {
  CHECK(non_square_multiple(BigInt(1)) == 1);
  CHECK(non_square_multiple(BigInt(3)) == 3);
  for (long q = 1; q < 200; q += 2) {
    const BigInt a = non_square_multiple(BigInt(q));
    CHECK(a % q == 0);
    CHECK((a / q) % 2 == 1);
    const BigInt v = 2 * a * a + 1;
    CHECK_FALSE(mpz_perfect_square_p(v.get_mpz_t()));
  }
  CHECK_THROWS(non_square_multiple(BigInt(2)));
}

TEST_CASE("lemma factors and Arf") {
  CHECK(lemma_factor_r1(BigInt(1)) == 3);
  CHECK(lemma_factor_r2(BigInt(1)) == 7);
  CHECK(lemma_factor_r1(BigInt(3)) == 19);
  CHECK(lemma_factor_r2(BigInt(3)) == 199);
  CHECK(arf_from_alexander_at_minus_one(BigInt(3)) == 1);
  CHECK(arf_from_alexander_at_minus_one(BigInt(-3)) == 1);
  CHECK(arf_from_alexander_at_minus_one(BigInt(1)) == 0);
  CHECK(arf_from_alexander_at_minus_one(BigInt(9)) == 0);
}

TEST_CASE("dual sequence") {
  const DualSequence one = dual_sequence(1);
  REQUIRE(one.pairs.size() == 1);
  CHECK(one.pairs[0].a == 1);
  CHECK(one.pairs[0].p == 3);
  CHECK_FALSE(one.truncated);

  const DualSequence two = dual_sequence(2);
  REQUIRE(two.pairs.size() == 2);
  const auto& [a2, p2] = two.pairs[1];
  CHECK(a2 % 2 == 1);
  CHECK((2 * a2 * a2 + 1) % 8 == 3);
  CHECK(p2 % 4 == 3);
  CHECK(norm_residue_symbol(Rational(BigInt(2 * a2 * a2 + 1)), Rational(-1), p2) == -1);
  CHECK(norm_residue_symbol(Rational(3), Rational(-1), p2) == 1);
  CHECK(dual_conditions_hold(two));

  for (const auto& e : dual_symbol_table(two)) {
    if (e.i == e.j) {
      CHECK(e.symbol_r1 == -1);
      CHECK(e.symbol_r2 == 1);
    } else {
      CHECK(e.symbol_r1 == 1);
      CHECK(e.symbol_r2 == 1);
    }
  }

  // A starved budget truncates instead of passing silently.
  const DualSequence starved = dual_sequence(3, FactorBudget{10, 1});
  if (starved.truncated) {
    CHECK(starved.pairs.size() < 3);
    CHECK_FALSE(starved.truncation_reason.empty());
  }
}

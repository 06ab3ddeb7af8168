#include "hfd/numtheory.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hfd {

namespace {

const std::vector<unsigned long>& small_primes(unsigned long limit) {
  static std::mutex mu;
  static std::vector<unsigned long> primes;
  static unsigned long sieved_to = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (limit > sieved_to) {
    std::vector<bool> composite(limit + 1, false);
    primes.clear();
    for (unsigned long i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (unsigned long j = i * i; j <= limit; j += i) composite[j] = true;
    }
    sieved_to = limit;
  }
  return primes;
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Pollard-Brent; returns a nontrivial factor of composite n or 0 when the
// iteration budget runs out.
BigInt brent_split(const BigInt& n, unsigned long& budget) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1; budget > 0; ++c) {
    auto f = [&](const BigInt& v) {
      BigInt r = v * v + c;
      r %= n;
      return r;
    };
    BigInt y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    const unsigned long m = 128;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        const unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = f(y);
          q = (q * abs_big(x - y)) % n;
          if (budget == 0) return 0;
          --budget;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs_big(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

void split_recursive(const BigInt& n, unsigned long& budget, std::map<BigInt, int>& found, BigInt& unfactored) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++found[n];
    return;
  }
  const BigInt g = brent_split(n, budget);
  if (g == 0) {
    unfactored *= n;
    return;
  }
  split_recursive(g, budget, found, unfactored);
  split_recursive(n / g, budget, found, unfactored);
}

}  // namespace

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Factorization factor(const BigInt& n, const FactorBudget& budget) {
  if (n <= 0) throw std::invalid_argument("factor: argument must be positive");
  Factorization out;
  BigInt m = n;
  std::map<BigInt, int> found;
  for (unsigned long p : small_primes(budget.trial_limit)) {
    if (BigInt(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      m /= p;
      ++e;
    }
    found[BigInt(p)] += e;
  }
  if (m > 1) {
    const BigInt limit = budget.trial_limit;
    if (m <= limit * limit) {
      ++found[m];
    } else {
      unsigned long rho_budget = budget.rho_iterations;
      split_recursive(m, rho_budget, found, out.unfactored);
    }
  }
  for (auto& [p, e] : found) out.primes.emplace_back(p, e);
  return out;
}

long valuation(const Rational& x, const BigInt& p) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation: p must be a prime");
  auto count = [&p](BigInt v) {
    v = abs_big(v);
    long e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    return e;
  };
  return count(x.numerator()) - count(x.denominator());
}

int norm_residue_symbol(const Rational& a, const Rational& b, const BigInt& p) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("norm residue symbol of zero");
  if (p == 2) throw std::invalid_argument("norm residue symbol at p = 2 is not supported");
  if (!is_probable_prime(p)) throw std::invalid_argument("norm residue symbol: " + p.get_str() + " is not prime");
  const long va = valuation(a, p);
  const long vb = valuation(b, p);
  // Unit parts a' = a p^-va, b' = b p^-vb reduced mod p.
  auto unit_mod_p = [&p](const Rational& x, long v) {
    BigInt num = x.numerator(), den = x.denominator();
    BigInt pv;
    mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
    if (v > 0) num /= pv;
    if (v < 0) den /= pv;
    BigInt den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    BigInt r = (num * den_inv) % p;
    if (r < 0) r += p;
    return r;
  };
  auto powm = [&p](const BigInt& base, long e) {
    BigInt b = base;
    if (e < 0) {
      mpz_invert(b.get_mpz_t(), base.get_mpz_t(), p.get_mpz_t());
      e = -e;
    }
    BigInt r;
    mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e), p.get_mpz_t());
    return r;
  };
  BigInt u = powm(unit_mod_p(a, va), vb) * powm(unit_mod_p(b, vb), -va);
  if ((va * vb) % 2 != 0) u = -u;
  u %= p;
  if (u < 0) u += p;
  BigInt r;
  const BigInt half = (p - 1) / 2;
  mpz_powm(r.get_mpz_t(), u.get_mpz_t(), half.get_mpz_t(), p.get_mpz_t());
  return r == 1 ? 1 : -1;
}

namespace {

std::vector<std::pair<BigInt, int>> factor_rational(const Rational& x, const FactorBudget& budget) {
  const Factorization fn = factor(abs_big(x.numerator()), budget);
  const Factorization fd = factor(x.denominator(), budget);
  if (!fn.complete() || !fd.complete())
    throw BudgetExhausted("could not factor " + x.str() + " within the factoring budget");
  std::map<BigInt, int> e;
  for (const auto& [p, k] : fn.primes) e[p] += k;
  for (const auto& [p, k] : fd.primes) e[p] -= k;
  std::vector<std::pair<BigInt, int>> out;
  for (const auto& [p, k] : e) out.emplace_back(p, k);
  return out;
}

}  // namespace

bool is_norm_from_Qi(const Rational& x, const FactorBudget& budget) {
  if (x.is_zero()) throw std::domain_error("norm test of zero");
  if (x.sign() < 0) return false;
  for (const auto& [p, e] : factor_rational(x, budget))
    if (p % 4 == 3 && e % 2 != 0) return false;
  return true;
}

bool norm_class_equal(const Rational& x, const Rational& y, const FactorBudget& budget) {
  if (x.is_zero() || y.is_zero()) throw std::domain_error("norm class of zero");
  return is_norm_from_Qi(x / y, budget);
}

BigInt norm_class_representative(const Rational& x, const FactorBudget& budget) {
  if (x.is_zero()) throw std::domain_error("norm class of zero");
  BigInt rep = x.sign();
  for (const auto& [p, e] : factor_rational(x, budget))
    if (p % 4 == 3 && e % 2 != 0) rep *= p;
  return rep;
}

BigInt square_class_representative(const Rational& x, const FactorBudget& budget) {
  if (x.is_zero()) throw std::domain_error("square class of zero");
  BigInt rep = x.sign();
  for (const auto& [p, e] : factor_rational(x, budget))
    if (e % 2 != 0) rep *= p;
  return rep;
}

bool SymbolCertificate::has_negative_symbol() const {
  return std::any_of(symbols.begin(), symbols.end(), [](const auto& s) { return s.second < 0; });
}

SymbolCertificate symbol_certificate(const Rational& x, const FactorBudget& budget) {
  if (x.is_zero()) throw std::domain_error("symbol certificate of zero");
  SymbolCertificate cert;
  cert.value = x;
  for (const auto& [p, e] : factor_rational(x, budget)) {
    (void)e;
    if (p == 2) continue;
    cert.symbols.emplace_back(p, norm_residue_symbol(x, Rational(-1), p));
  }
  cert.verdict = (x.sign() > 0 && !cert.has_negative_symbol()) ? SymbolCertificate::Verdict::norm
                                                                 : SymbolCertificate::Verdict::not_norm;
  return cert;
}

SymbolCertificate symbol_certificate_at(const Rational& x, const std::vector<BigInt>& primes) {
  SymbolCertificate cert;
  cert.value = x;
  for (const auto& p : primes) cert.symbols.emplace_back(p, norm_residue_symbol(x, Rational(-1), p));
  // A -1 symbol or a negative value certifies a non-norm; all +1 at a
  // partial prime list proves nothing, so the verdict stays "norm" only
  // when the caller supplied every odd prime of x.
  cert.verdict = (x.sign() < 0 || cert.has_negative_symbol()) ? SymbolCertificate::Verdict::not_norm
                                                               : SymbolCertificate::Verdict::norm;
  return cert;
}

std::vector<std::pair<BigInt, BigInt>> pell_solutions(int count) {
  if (count < 1) throw std::invalid_argument("pell_solutions: count must be >= 1");
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt x = 3, y = 2;
  for (int n = 0; n < count; ++n) {
    if (x * x != 2 * y * y + 1) throw std::logic_error("Pell recurrence left the solution set");
    out.emplace_back(x, y);
    const BigInt nx = 3 * x + 4 * y;
    const BigInt ny = 2 * x + 3 * y;
    x = nx;
    y = ny;
  }
  return out;
}

BigInt non_square_multiple(const BigInt& q) {
  if (q <= 0 || q % 2 == 0) throw std::invalid_argument("non_square_multiple: q must be odd and positive");
  for (BigInt k = 1;; k += 2) {
    const BigInt a = k * q;
    const BigInt v = 2 * a * a + 1;
    if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return a;
  }
}

BigInt lemma_factor_r1(const BigInt& a) { return 2 * a * a + 1; }

BigInt lemma_factor_r2(const BigInt& a) {
  const BigInt a2 = a * a;
  return 2 * a2 * a2 + 4 * a2 + 1;
}

DualSequence dual_sequence(int count, const FactorBudget& budget) {
  if (count < 1) throw std::invalid_argument("dual_sequence: count must be >= 1");
  DualSequence seq;
  BigInt q = 1;
  for (int n = 1; n <= count; ++n) {
    const BigInt a = non_square_multiple(q);
    const BigInt v = lemma_factor_r1(a);
    if (v % 8 != 3) throw std::logic_error("2a^2+1 is not 3 mod 8 for odd a");
    const Factorization f = factor(v, budget);
    BigInt chosen = 0;
    for (const auto& [p, e] : f.primes)
      if (p % 4 == 3 && e % 2 == 1) {
        chosen = p;
        break;
      }
    if (chosen == 0) {
      if (f.complete()) throw std::logic_error("no prime = 3 mod 4 with odd valuation in " + v.get_str());
      seq.truncated = true;
      seq.truncation_reason = "factoring budget exhausted on 2a^2+1 for a_" + std::to_string(n) + " (" +
                              std::to_string(v.get_str().size()) + " digits)";
      break;
    }
    seq.pairs.push_back({a, chosen});
    q *= lemma_factor_r1(a) * lemma_factor_r2(a);
  }
  if (!dual_conditions_hold(seq)) throw std::logic_error("dual prime conditions failed");
  return seq;
}

std::vector<DualSymbolEntry> dual_symbol_table(const DualSequence& seq) {
  std::vector<DualSymbolEntry> table;
  for (std::size_t i = 0; i < seq.pairs.size(); ++i)
    for (std::size_t j = 0; j < seq.pairs.size(); ++j) {
      const BigInt& a = seq.pairs[j].a;
      const BigInt& p = seq.pairs[i].p;
      table.push_back({i, j, norm_residue_symbol(Rational(lemma_factor_r1(a)), Rational(-1), p),
                       norm_residue_symbol(Rational(lemma_factor_r2(a)), Rational(-1), p)});
    }
  return table;
}

bool dual_conditions_hold(const DualSequence& seq) {
  for (const auto& e : dual_symbol_table(seq)) {
    if (e.i == e.j && (e.symbol_r1 != -1 || e.symbol_r2 != 1)) return false;
    if (e.i != e.j && (e.symbol_r1 != 1 || e.symbol_r2 != 1)) return false;
  }
  return true;
}

int arf_from_alexander_at_minus_one(const BigInt& delta_at_minus_one) {
  BigInt r = delta_at_minus_one % 8;
  if (r < 0) r += 8;
  if (r == 1 || r == 7) return 0;
  if (r == 3 || r == 5) return 1;
  throw std::invalid_argument("Delta(-1) must be odd for a knot");
}

}  // namespace hfd

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hfd/rational.hpp"

namespace hfd {

/// Raised when a factorisation cannot be completed within its budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FactorBudget {
  unsigned long trial_limit = 1'000'000;
  /// Total Pollard-Brent iterations across all cofactors of one call.
  unsigned long rho_iterations = 4'000'000;
};

struct Factorization {
  std::vector<std::pair<BigInt, int>> primes;  // ascending, with multiplicity
  BigInt unfactored = 1;                       // composite cofactor left over (1 when complete)

  bool complete() const { return unfactored == 1; }
};

/// Factors n > 0: trial division up to budget.trial_limit, then Pollard-Brent rho.
Factorization factor(const BigInt& n, const FactorBudget& budget = {});

bool is_probable_prime(const BigInt& n);

/// Exponent of p in x (x != 0).
long valuation(const Rational& x, const BigInt& p);

/// (a, b)_p at an odd prime p, evaluated by the closed formula
/// ((-1)^(v(a)v(b)) a^v(b) / b^v(a))^((p-1)/2) mod p.
int norm_residue_symbol(const Rational& a, const Rational& b, const BigInt& p);

/// True iff x = z * conj(z) for some z in Q(i): x > 0 and every prime
/// p = 3 mod 4 occurs to an even power. Throws BudgetExhausted if the
/// numerator or denominator cannot be factored.
bool is_norm_from_Qi(const Rational& x, const FactorBudget& budget = {});

/// Equality in Q^x / N(Q(i)^x).
bool norm_class_equal(const Rational& x, const Rational& y, const FactorBudget& budget = {});

/// Canonical representative of x in Q^x / N(Q(i)^x): sign(x) times the
/// product of the primes p = 3 mod 4 with odd valuation.
BigInt norm_class_representative(const Rational& x, const FactorBudget& budget = {});

/// Signed squarefree representative of x in Q^x / (Q^x)^2.
BigInt square_class_representative(const Rational& x, const FactorBudget& budget = {});

/// Symbols (x, -1)_p at every odd prime dividing x, plus the norm verdict.
struct SymbolCertificate {
  enum class Verdict { norm, not_norm };

  Rational value;
  std::vector<std::pair<BigInt, int>> symbols;
  Verdict verdict = Verdict::norm;

  bool has_negative_symbol() const;
};

SymbolCertificate symbol_certificate(const Rational& x, const FactorBudget& budget = {});

/// (x, -1)_p for each listed odd prime.
SymbolCertificate symbol_certificate_at(const Rational& x, const std::vector<BigInt>& primes);

/// First `count` positive solutions of x^2 = 2 y^2 + 1, from (3, 2) via
/// x' = 3x + 4y, y' = 2x + 3y.
std::vector<std::pair<BigInt, BigInt>> pell_solutions(int count);

/// Odd multiple a = kq (k odd, scanned upwards) with 2a^2 + 1 not a square.
BigInt non_square_multiple(const BigInt& q);

/// 2a^2 + 1 and 2a^4 + 4a^2 + 1.
BigInt lemma_factor_r1(const BigInt& a);
BigInt lemma_factor_r2(const BigInt& a);

struct DualPair {
  BigInt a;
  BigInt p;
};

struct DualSequence {
  std::vector<DualPair> pairs;
  bool truncated = false;
  std::string truncation_reason;
};

/// a_1 = 1, p_1 = 3; a_n an odd non-square multiple of
/// prod_{j<n} (2a_j^2+1)(2a_j^4+4a_j^2+1) and p_n = 3 mod 4 a prime with odd
/// valuation in 2a_n^2 + 1. Stops early (truncated = true) if a factorisation
/// runs out of budget.
DualSequence dual_sequence(int count, const FactorBudget& budget = {});

/// Symbol table row: (2a_j^2+1, -1)_{p_i} and (2a_j^4+4a_j^2+1, -1)_{p_i}.
struct DualSymbolEntry {
  std::size_t i = 0;  // prime index
  std::size_t j = 0;  // value index
  int symbol_r1 = 1;
  int symbol_r2 = 1;
};

std::vector<DualSymbolEntry> dual_symbol_table(const DualSequence& seq);

/// Conditions (1) and (2) of the dual-prime construction, checked by direct
/// symbol evaluation on the full table.
bool dual_conditions_hold(const DualSequence& seq);

/// Arf invariant from Delta(-1): 0 if Delta(-1) = +-1 mod 8, 1 if +-3 mod 8.
int arf_from_alexander_at_minus_one(const BigInt& delta_at_minus_one);

}  // namespace hfd

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hfd/covers.hpp"
#include "hfd/numtheory.hpp"
#include "hfd/seifert.hpp"
#include "hfd/witt.hpp"

namespace hfd {

/// Raised when a character search that should succeed finds nothing.
class SearchFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Infection of a seed manifold along alpha by a knot with Seifert matrix A.
/// The seed defect is an input together with a note on where it comes from.
struct InfectionScenario {
  std::shared_ptr<const VoltageGraph> base;
  std::vector<Character> tower_characters;  // level k lives on X_k
  Word alpha;
  SeifertMatrix seifert;
  Character top_character;  // on X_h, target Z_d
  long d = 4;
  long prime = 2;
  WittClass seed_defect = WittClass::zero(4);
  std::string seed_provenance = "assumed zero";
};

/// One loop-lift record with its character value in Z_d.
struct LiftTerm {
  long start = 0;
  long r = 1;
  long value = 0;
};

struct InfectionResult {
  WittClass defect = WittClass::zero(4);
  std::vector<LiftTerm> terms;
  long total_degree = 1;
  long height = 0;
  /// False when d or a deck order is not a power of the tower prime.
  bool invariance_claim = true;
};

InfectionResult evaluate_infection(const InfectionScenario& s);

/// seed + sum_j ([lambda_{r_j}(A, zeta_d^{v_j})] - [lambda_{r_j}(A, 1)]).
WittClass infection_defect(const InfectionScenario& s);

/// Discriminant predicted from the Alexander polynomial, compared with the
/// Witt computation modulo Q(i)-norms (d = 4 and zero seed only).
struct CrossPathCheck {
  bool applicable = false;
  bool agree = false;
  Rational witt_discriminant;
  Rational formula_discriminant;
};

CrossPathCheck cross_path_check(const SeifertMatrix& a, const std::vector<LiftTerm>& terms, long d,
                                const WittClass& defect);

struct ObstructionReport {
  enum class Verdict { obstructed, unobstructed_at_this_tower };

  WittClass witt_class = WittClass::zero(4);
  WittInvariants invariants;
  std::vector<SymbolCertificate> certificates;
  Verdict verdict = Verdict::unobstructed_at_this_tower;
  std::vector<std::string> notes;
  std::vector<LiftTerm> terms;
  std::optional<CrossPathCheck> cross_path;
};

/// Verdict is obstructed iff signature != 0, rank is odd, or a symbol
/// certificate shows the discriminant class is not a norm.
ObstructionReport obstruction_report(const WittClass& x);

// ------------------------------------------------------------ Bing doubles

struct BingDoubleTower {
  std::shared_ptr<const VoltageGraph> base;
  std::vector<Character> characters;  // Gamma_0, ..., Gamma_n
  Word alpha;
  long n = 1;
};

/// Wedge of 2^n circles, level k = (Z_2)^(2^(n-k)) on the designated edges
/// c^(k)_i (edge id 2^k (i-1)), last level Z_2 on c^(n)_1, alpha = x^(n)_1.
BingDoubleTower bing_double_tower(long n);

/// Tower built from the first `height` characters.
Tower build_tower(const BingDoubleTower& bd, long height);

struct LiftStructure {
  Character character{FiniteAbelianGroup::cyclic(1), 0};  // on X_{n+1}, target Z_d
  std::vector<LoopLiftRecord> records;
  std::vector<long> values;                 // per record, in Z_d
  std::optional<std::size_t> first, second;  // (r, value) = (2, s) and (1, -s)
  long total_degree = 1;
  long sum_r = 0;
  long candidates_tried = 0;
};

/// Searches single-edge Z_d characters on X_{n+1} (edges ascending, values
/// ascending) for exactly two nonzero lift values: s at r = 2 and -s at r = 1.
LiftStructure bd_lift_structure_check(long n, long d, long s);

/// Infection of BD_n by K_a with the character found above (d = 4, s = 1).
ObstructionReport bd_slice_obstruction(long a, long n);

struct SignatureRecovery {
  int defect_signature = 0;
  int lambda1_signature = 0;   // signature of [lambda_1(A, zeta_d^s)]
  int levine_tristram = 0;     // two-sided sigma_K(zeta_d^s)
  LiftStructure structure;
  ObstructionReport report;
};

/// Height-n tower, single-edge Z_d character with two r = 1 lifts valued s
/// and -s; checks sign(defect) = 2 sign(lambda_1(A, zeta_d^s)).
SignatureRecovery bd_signature_recovery(const SeifertMatrix& a, long n, long d, long s);

// ------------------------------------------------------------ lens seed

struct ShapeCheck {
  Rational discriminant;
  long n1 = 0, n2 = 0;
  bool passes = false;
  SymbolCertificate at_p1, at_p2;
};

struct LensScanEntry {
  Character level1;
  Character top;
  std::vector<LiftTerm> terms;
  WittClass defect = WittClass::zero(4);
  int signature = 0;
  ShapeCheck shape;
  CrossPathCheck cross_path;
};

struct LensScanReport {
  long r1 = 4, r2 = 4, a = 1, support_limit = 2;
  BigInt f1, f2;                      // 2a^2+1, 2a^4+4a^2+1
  std::optional<BigInt> p1, p2;       // dual primes used by the shape test
  long level1_characters = 0;
  long evaluations = 0;
  bool all_shapes_pass = true;
  bool all_r_in_1_2 = true;
  bool all_cross_paths_agree = true;
  bool budget_exhausted = false;
  std::map<std::string, long> class_histogram;  // class representative -> count
  std::optional<LensScanEntry> realization;     // n1 = n2 = 1
  std::vector<LensScanEntry> entries;           // kept only when requested
};

LensScanReport lens_seed_scan(long r1, long r2, long a, long support_limit, long max_evaluations = 200000,
                              bool keep_entries = false);

// ------------------------------------------------------------ distinguisher

struct DistinguisherEntry {
  std::size_t i = 0;  // class index (1-based; 0 is the trivial seed class)
  std::size_t j = 0;
  BigInt prime;        // p_i
  int class_symbol = 1;                  // (c_i, -1)_{p_i}
  std::vector<int> generator_symbols;    // symbols of the generators of Sigma_j at p_i
  bool distinguished = false;
};

struct DistinguisherReport {
  DualSequence sequence;
  std::vector<BigInt> classes;  // c_i = (2a_i^2+1)(2a_i^4+4a_i^2+1)
  std::vector<DistinguisherEntry> entries;
  bool all_distinguished = true;
};

DistinguisherReport homology_cobordism_distinguisher(int count, const FactorBudget& budget = {});

// ------------------------------------------------------------ solvability

/// Arf invariant of the knot from Delta_A(-1) mod 8.
int arf_invariant(const SeifertMatrix& a);

/// Same computation as infection_defect; an obstructed verdict is annotated
/// "not (k+1)-solvable" for tower height k, and Arf(K) is recorded.
ObstructionReport solvability_report(const InfectionScenario& s);

/// Scenario used by bd_slice_obstruction.
InfectionScenario bd_scenario(long a, long n);

/// Scenario used by bd_signature_recovery.
InfectionScenario bd_signature_scenario(const SeifertMatrix& a, long n, long d, long s);

}  // namespace hfd

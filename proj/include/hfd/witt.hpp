#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hfd/eigen_support.hpp"
#include "hfd/numtheory.hpp"

namespace hfd {

/// Raised when an operation that needs a nonsingular form receives a singular one.
class SingularForm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Square hermitian matrix over Q(zeta_d). Entries of smaller conductor
/// (rationals in particular) are lifted to d on construction.
class HermitianForm {
 public:
  HermitianForm(long d, CycMatrix gram);

  static HermitianForm empty(long d);
  static HermitianForm diagonal(long d, const std::vector<Cyclotomic>& entries);

  long conductor() const { return d_; }
  const CycMatrix& gram() const { return gram_; }
  Index dim() const { return gram_.rows(); }
  bool is_empty() const { return gram_.rows() == 0; }

  HermitianForm operator-() const;

 private:
  long d_;
  CycMatrix gram_;
};

/// Block-diagonal sum.
HermitianForm orthogonal_sum(const HermitianForm& a, const HermitianForm& b);

bool is_nonsingular(const HermitianForm& h);

/// Nonsingular form on a complement of the radical: the principal submatrix
/// on a maximal set of independent columns.
HermitianForm radical_reduce(const HermitianForm& h);

/// [[X, -Y], [Y, X]] for gram = X + iY; defined for d in {1, 2, 4}.
QMatrix realify(const HermitianForm& h);

struct CertifiedSignature {
  int value = 0;
  long precision = 0;  // bits used by the final, successful pass
};

/// Signature of the complex embedding, certified with ball arithmetic:
/// Jacobi on the midpoint of the realified matrix gives Q, then Gershgorin
/// discs of Q^T R Q (in balls) fix the inertia. Precision doubles from 64
/// bits until every disc excludes zero.
CertifiedSignature certified_signature(const HermitianForm& h, long max_precision = 1L << 16);

int signature(const HermitianForm& h);

/// Exact signature via rational inertia of the realification; d in {1, 2, 4}.
int exact_signature(const HermitianForm& h);

int rank_mod2(const HermitianForm& h);

/// (-1)^(r(r+1)/2) det(gram), r = dim.
Cyclotomic discriminant(const HermitianForm& h);

/// N_{K+/Q}(t) for t in the real subfield of Q(zeta_d).
Rational real_subfield_norm(const Cyclotomic& t);

/// Class of a rational discriminant modulo norms from Q(i).
struct DiscriminantClass {
  Rational value;
  BigInt representative;
  SymbolCertificate certificate;
};

struct WittInvariants {
  long conductor = 1;
  int signature = 0;
  int rank_mod2 = 0;
  Cyclotomic discriminant_raw;
  std::optional<DiscriminantClass> discriminant_class;  // d in {1, 2, 4}
};

/// Element of L^0(Q(zeta_d)), stored as a reduced diagonal representative.
/// Over Q(i) the representative is canonical (determined by signature and
/// discriminant class); elsewhere hyperbolic planes and pairs <x> + <-xt>
/// with t a recognised norm are cancelled.
class WittClass {
 public:
  static WittClass zero(long d);
  static WittClass of(const HermitianForm& h);

  long conductor() const { return rep_.conductor(); }
  const HermitianForm& representative() const { return rep_; }
  /// True when the reduced representative is empty (the class is certainly zero).
  bool is_structurally_zero() const { return rep_.is_empty(); }

 private:
  explicit WittClass(HermitianForm rep) : rep_(std::move(rep)) {}
  HermitianForm rep_;
};

WittClass witt_add(const WittClass& x, const WittClass& y);
WittClass witt_negate(const WittClass& x);
inline WittClass operator+(const WittClass& x, const WittClass& y) { return witt_add(x, y); }
inline WittClass operator-(const WittClass& x) { return witt_negate(x); }
inline WittClass operator-(const WittClass& x, const WittClass& y) { return witt_add(x, witt_negate(y)); }

WittInvariants witt_invariants(const WittClass& x);

enum class WittComparison { equal, distinct, undecided };

/// Equality through the invariant triple. Decided for d in {1, 2, 4}; for
/// other d the answer is "undecided" unless structure, signature, rank or a
/// norm-down certificate settles it.
WittComparison witt_compare(const WittClass& x, const WittClass& y);

/// Convenience: witt_compare(...) == equal.
bool witt_equal(const WittClass& x, const WittClass& y);

}  // namespace hfd

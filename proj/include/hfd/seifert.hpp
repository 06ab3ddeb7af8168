#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "hfd/eigen_support.hpp"
#include "hfd/witt.hpp"

namespace hfd {

class InvalidSeifertMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a formula needs Delta_A(w) != 0 and the value vanishes.
class ZeroAlexanderValue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Integer 2g x 2g matrix with det(A - A^T) = 1.
class SeifertMatrix {
 public:
  explicit SeifertMatrix(IntMatrix entries);

  const IntMatrix& entries() const { return a_; }
  Index genus() const { return a_.rows() / 2; }
  QMatrix rational() const { return to_rational(a_); }

 private:
  IntMatrix a_;
};

/// Block sum (Seifert matrix of the connected sum).
SeifertMatrix block_sum(const SeifertMatrix& a, const SeifertMatrix& b);

/// -A^T, a Seifert matrix of the concordance inverse.
SeifertMatrix concordance_inverse(const SeifertMatrix& a);

/// [[a, 1], [0, -a]].
SeifertMatrix k_a_matrix(long a);

/// Integer Laurent polynomial; zero coefficients are never stored.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(const std::map<long, BigInt>& coeffs);

  const std::map<long, BigInt>& coeffs() const { return c_; }
  BigInt coeff(long e) const;
  bool is_zero() const { return c_.empty(); }

  /// p(t^-1).
  LaurentPolynomial reflected() const;

  Rational evaluate(const Rational& t) const;
  Cyclotomic evaluate(const Cyclotomic& t) const;

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.c_ == b.c_; }

  /// e.g. "-t + 3 - t^-1".
  std::string str() const;

 private:
  std::map<long, BigInt> c_;
};

/// Delta_A(t) = t^-g det(tA - A^T), by exact evaluation at 2g + 1 integers
/// and interpolation.
LaurentPolynomial alexander(const SeifertMatrix& a);

/// lambda_r(A, omega), 2gr x 2gr over the field of omega.
HermitianForm build_lambda_r(const SeifertMatrix& a, long r, const Cyclotomic& omega);

/// [lambda_r(A, zeta_d^s)] - [lambda_r(A, 1)].
WittClass knot_cover_defect(const SeifertMatrix& a, long r, long s, long d);

/// Predicted discriminant: Delta_A(omega) for r = 1, Delta_A(sqrt w) Delta_A(-sqrt w)
/// for r = 2 with sqrt(zeta_d^s) = zeta_2d^s.
Cyclotomic dis_formula(const SeifertMatrix& a, const Cyclotomic& omega, long r);

/// Two-sided Levine-Tristram signature at zeta_d^s (0 at omega = 1).
int levine_tristram(const SeifertMatrix& a, long d, long s);

/// Exponent s with omega = zeta_d^s, d = omega.conductor(); throws if omega
/// is not a root of unity of that order.
long root_exponent(const Cyclotomic& omega);

}  // namespace hfd

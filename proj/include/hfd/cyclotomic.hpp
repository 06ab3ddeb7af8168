#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfd/ball.hpp"
#include "hfd/rational.hpp"

namespace hfd {

/// Raised when elements of different cyclotomic fields are combined.
class ConductorMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

long euler_phi(long d);

/// Integer coefficients of the d-th cyclotomic polynomial, lowest degree first.
std::vector<BigInt> cyclotomic_polynomial(long d);

namespace detail {
struct CyclotomicContext;
const CyclotomicContext& cyclotomic_context(long d);
}  // namespace detail

/// Exact element of Q(zeta_d), stored in the power basis 1, z, ..., z^(phi(d)-1)
/// reduced modulo Phi_d. Equality is coefficient equality.
///
/// A default-constructed or rational-constructed element has conductor 1 and
/// is promoted silently when combined with an element of any conductor; any
/// other conductor mismatch throws ConductorMismatch.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(int v);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& v);  // NOLINT(google-explicit-constructor)
  Cyclotomic(long d, const Rational& v);
  Cyclotomic(long d, std::vector<Rational> coeffs);

  long conductor() const { return d_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  /// True iff the element lies in Q.
  bool is_rational() const;
  std::optional<Rational> rational_value() const;
  /// Fixed by the involution zeta -> zeta^-1.
  bool is_real() const;

  Cyclotomic involution() const;
  Cyclotomic conj() const { return involution(); }
  Cyclotomic inverse() const;
  Cyclotomic pow(long e) const;
  /// Same element, rewritten with conductor d (this->conductor() must divide d).
  Cyclotomic lift_to(long d) const;
  /// Element of Q(zeta_d) equal to *this, if one exists (d divides conductor).
  std::optional<Cyclotomic> restrict_to(long d) const;

  ComplexBall embed(long precision) const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  std::string str() const;

 private:
  friend struct detail::CyclotomicContext;
  void promote_against(const Cyclotomic& o);

  long d_ = 1;
  std::vector<Rational> c_;
};

/// zeta_d^k for any integer k.
Cyclotomic zeta_power(long d, long k);

/// Image of a under the automorphism zeta_d -> zeta_d^k (gcd(k, d) = 1).
Cyclotomic galois_conjugate(const Cyclotomic& a, long k);

/// Smallest k in [0, d) with a == zeta_d^k, if a is a d-th root of unity.
std::optional<long> root_of_unity_exponent(const Cyclotomic& a, long d);

std::ostream& operator<<(std::ostream& os, const Cyclotomic& a);

}  // namespace hfd

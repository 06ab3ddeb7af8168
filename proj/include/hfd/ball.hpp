#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "hfd/rational.hpp"

namespace hfd {

/// Owning wrapper around an MPFR float. Arithmetic operators round to
/// nearest; the directed-rounding helpers below are what Ball uses for radii.
class BigFloat {
 public:
  explicit BigFloat(long precision = 64);
  BigFloat(double v, long precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_rational(const Rational& q, long precision, mpfr_rnd_t rnd = MPFR_RNDN);

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  std::string str(int digits = 20) const;

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

  BigFloat abs() const;
  BigFloat sqrt() const;

 private:
  mpfr_t v_;
};

/// Real midpoint-radius interval: the exact value lies in [mid - rad, mid + rad].
/// Radii are accumulated with upward rounding, so every operation returns a
/// ball that contains the exact result of the operation on the exact inputs.
class Ball {
 public:
  explicit Ball(long precision = 64);
  Ball(BigFloat mid, BigFloat rad);

  static Ball exact(const BigFloat& v);
  static Ball from_rational(const Rational& q, long precision);
  static Ball pi(long precision);

  const BigFloat& mid() const { return mid_; }
  const BigFloat& rad() const { return rad_; }
  long precision() const { return mid_.precision(); }

  /// Lower / upper endpoint, rounded outward.
  BigFloat lower() const;
  BigFloat upper() const;
  /// Upper bound on |x| over the ball.
  BigFloat abs_upper() const;

  bool contains_zero() const;
  /// +1 / -1 when the ball excludes zero, nullopt otherwise.
  std::optional<int> sign() const;
  bool contains(const BigFloat& x) const;
  bool overlaps(const Ball& other) const;

  Ball operator-() const;
  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);

  Ball cos() const;
  Ball sin() const;
  /// Enlarges the radius by e (rounded up).
  Ball inflate(const BigFloat& e) const;

 private:
  BigFloat mid_;
  BigFloat rad_;
};

/// Rectangular complex interval built from two real balls.
struct ComplexBall {
  Ball re;
  Ball im;

  explicit ComplexBall(long precision = 64) : re(precision), im(precision) {}
  ComplexBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}

  /// exp(2*pi*i*k/d), certified.
  static ComplexBall root_of_unity(long k, long d, long precision);

  ComplexBall operator-() const { return {-re, -im}; }
  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexBall conj() const { return {re, -im}; }

  /// Upper bound on |z| over the rectangle.
  BigFloat abs_upper() const;
  bool overlaps(const ComplexBall& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
  /// Largest of the two radii; used to check convergence as precision grows.
  BigFloat max_radius() const;
};

/// Alias used by the cyclotomic embedding API.
using ComplexInterval = ComplexBall;

}  // namespace hfd

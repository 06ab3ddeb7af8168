#include "hfd/ball.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace hfd {

BigFloat::BigFloat(long precision) {
  mpfr_init2(v_, std::max<long>(precision, MPFR_PREC_MIN));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, long precision) : BigFloat(precision) { mpfr_set_d(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(other.precision()) { mpfr_swap(v_, other.v_); }

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_rational(const Rational& q, long precision, mpfr_rnd_t rnd) {
  BigFloat r(precision);
  mpfr_set_q(r.v_, q.raw().get_mpq_t(), rnd);
  return r;
}

std::string BigFloat::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

namespace {

long joint_prec(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

template <class Op>
BigFloat binary(const BigFloat& a, const BigFloat& b, Op op, mpfr_rnd_t rnd) {
  BigFloat r(joint_prec(a, b));
  op(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat add_up(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add, MPFR_RNDU); }
BigFloat mul_up(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul, MPFR_RNDU); }

/// Bound on the error of a round-to-nearest result `mid`.
BigFloat rounding_error(const BigFloat& mid) {
  BigFloat e = mid.abs();
  mpfr_mul_2si(e.get(), e.get(), 1 - mid.precision(), MPFR_RNDU);
  return e;
}

}  // namespace

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add, MPFR_RNDN); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub, MPFR_RNDN); }
BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul, MPFR_RNDN); }
BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div, MPFR_RNDN); }

BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sqrt() const {
  BigFloat r(precision());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

Ball::Ball(long precision) : mid_(precision), rad_(precision) {}

Ball::Ball(BigFloat mid, BigFloat rad) : mid_(std::move(mid)), rad_(std::move(rad)) {}

Ball Ball::exact(const BigFloat& v) { return Ball(v, BigFloat(v.precision())); }

Ball Ball::from_rational(const Rational& q, long precision) {
  BigFloat mid = BigFloat::from_rational(q, precision);
  BigFloat rad = rounding_error(mid);
  return Ball(std::move(mid), std::move(rad));
}

Ball Ball::pi(long precision) {
  BigFloat mid(precision);
  mpfr_const_pi(mid.get(), MPFR_RNDN);
  BigFloat rad = rounding_error(mid);
  return Ball(std::move(mid), std::move(rad));
}

BigFloat Ball::lower() const {
  BigFloat r(precision());
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

BigFloat Ball::upper() const {
  BigFloat r(precision());
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

BigFloat Ball::abs_upper() const { return add_up(mid_.abs(), rad_); }

bool Ball::contains_zero() const { return mpfr_lessequal_p(mid_.abs().get(), rad_.get()) != 0; }

std::optional<int> Ball::sign() const {
  if (contains_zero()) return std::nullopt;
  return mid_.sign();
}

bool Ball::contains(const BigFloat& x) const {
  return mpfr_lessequal_p(lower().get(), x.get()) && mpfr_lessequal_p(x.get(), upper().get());
}

bool Ball::overlaps(const Ball& other) const {
  return mpfr_lessequal_p(lower().get(), other.upper().get()) &&
         mpfr_lessequal_p(other.lower().get(), upper().get());
}

Ball Ball::operator-() const { return Ball(-mid_, rad_); }

Ball operator+(const Ball& a, const Ball& b) {
  BigFloat mid = a.mid_ + b.mid_;
  BigFloat rad = add_up(add_up(a.rad_, b.rad_), rounding_error(mid));
  return Ball(std::move(mid), std::move(rad));
}

Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

Ball operator*(const Ball& a, const Ball& b) {
  BigFloat mid = a.mid_ * b.mid_;
  BigFloat rad = add_up(mul_up(a.mid_.abs(), b.rad_), mul_up(b.mid_.abs(), a.rad_));
  rad = add_up(rad, mul_up(a.rad_, b.rad_));
  rad = add_up(rad, rounding_error(mid));
  return Ball(std::move(mid), std::move(rad));
}

Ball Ball::inflate(const BigFloat& e) const { return Ball(mid_, add_up(rad_, e.abs())); }

namespace {

// |f(mid) - f(x)| <= |mid - x| for cos and sin; values are bounded by 1 so
// the rounding error is at most 2^(1-p).
Ball lipschitz_unit(const Ball& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  BigFloat mid(x.precision());
  fn(mid.get(), x.mid().get(), MPFR_RNDN);
  BigFloat err(1.0, x.precision());
  mpfr_mul_2si(err.get(), err.get(), 1 - x.precision(), MPFR_RNDU);
  return Ball(std::move(mid), add_up(x.rad(), err));
}

}  // namespace

Ball Ball::cos() const { return lipschitz_unit(*this, mpfr_cos); }
Ball Ball::sin() const { return lipschitz_unit(*this, mpfr_sin); }

ComplexBall ComplexBall::root_of_unity(long k, long d, long precision) {
  k %= d;
  if (k < 0) k += d;
  auto exact = [precision](double re, double im) {
    return ComplexBall(Ball::exact(BigFloat(re, precision)), Ball::exact(BigFloat(im, precision)));
  };
  if (k == 0) return exact(1, 0);
  if (2 * k == d) return exact(-1, 0);
  if (4 * k == d) return exact(0, 1);
  if (4 * k == 3 * d) return exact(0, -1);
  const Ball theta = Ball::pi(precision) * Ball::from_rational(Rational(BigInt(2 * k), BigInt(d)), precision);
  return {theta.cos(), theta.sin()};
}

BigFloat ComplexBall::abs_upper() const {
  const BigFloat x = re.abs_upper();
  const BigFloat y = im.abs_upper();
  BigFloat r = add_up(mul_up(x, x), mul_up(y, y));
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDU);
  return r;
}

BigFloat ComplexBall::max_radius() const { return re.rad() < im.rad() ? im.rad() : re.rad(); }

}  // namespace hfd

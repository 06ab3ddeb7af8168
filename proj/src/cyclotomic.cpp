#include "hfd/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace hfd {

long euler_phi(long d) {
  if (d < 1) throw std::invalid_argument("conductor must be positive");
  long result = d;
  long n = d;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

using IntPoly = std::vector<BigInt>;
using RatPoly = std::vector<Rational>;

IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  IntPoly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i] / den[dn];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

void trim(RatPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// (q, r) with a = q*b + r; b nonzero and trimmed.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const long nb = static_cast<long>(b.size());
  RatPoly q(a.size() - b.size() + 1);
  const Rational lead_inv = b.back().inverse();
  for (long i = static_cast<long>(a.size()) - 1; i >= nb - 1; --i) {
    const Rational c = a[i] * lead_inv;
    q[i - (nb - 1)] = c;
    if (c.is_zero()) continue;
    for (long j = 0; j < nb; ++j) a[i - (nb - 1) + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

RatPoly sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(long d) {
  if (d < 1) throw std::invalid_argument("conductor must be positive");
  IntPoly p(static_cast<std::size_t>(d) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(d)] = 1;
  for (long e = 1; e < d; ++e)
    if (d % e == 0) p = exact_divide(p, cyclotomic_polynomial(e));
  return p;
}

namespace detail {

struct CyclotomicContext {
  long d = 1;
  long phi = 1;
  IntPoly modulus;
  // reduced[k] = coefficients of zeta^k for 0 <= k < d.
  std::vector<RatPoly> reduced;

  explicit CyclotomicContext(long conductor) : d(conductor), phi(euler_phi(conductor)) {
    modulus = cyclotomic_polynomial(d);
    reduced.reserve(static_cast<std::size_t>(d));
    RatPoly cur(static_cast<std::size_t>(phi));
    cur[0] = 1;
    for (long k = 0; k < d; ++k) {
      reduced.push_back(cur);
      // multiply by x and reduce with the monic modulus
      const Rational top = cur.back();
      for (long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (!top.is_zero())
        for (long i = 0; i < phi; ++i) cur[i] -= top * Rational(modulus[i]);
    }
  }

  // Folds a coefficient array indexed by exponents mod d into the basis.
  RatPoly fold(const RatPoly& by_exponent) const {
    RatPoly out(static_cast<std::size_t>(phi));
    for (long k = 0; k < d; ++k) {
      const Rational& c = by_exponent[k];
      if (c.is_zero()) continue;
      if (k < phi) {
        out[k] += c;
      } else {
        const RatPoly& r = reduced[k];
        for (long i = 0; i < phi; ++i)
          if (!r[i].is_zero()) out[i] += c * r[i];
      }
    }
    return out;
  }
};

const CyclotomicContext& cyclotomic_context(long d) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<CyclotomicContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<CyclotomicContext>(d);
  return *slot;
}

}  // namespace detail

Cyclotomic::Cyclotomic() : d_(1), c_(1) {}

Cyclotomic::Cyclotomic(int v) : d_(1), c_{Rational(v)} {}

Cyclotomic::Cyclotomic(const Rational& v) : d_(1), c_{v} {}

Cyclotomic::Cyclotomic(long d, const Rational& v) : d_(d), c_(static_cast<std::size_t>(euler_phi(d))) {
  c_[0] = v;
}

Cyclotomic::Cyclotomic(long d, std::vector<Rational> coeffs) : d_(d), c_(std::move(coeffs)) {
  const long phi = euler_phi(d);
  if (static_cast<long>(c_.size()) > phi) {
    // Accept any polynomial in zeta and reduce it.
    const auto& ctx = detail::cyclotomic_context(d);
    RatPoly by_exp(static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < c_.size(); ++k) by_exp[k % static_cast<std::size_t>(d)] += c_[k];
    c_ = ctx.fold(by_exp);
  } else {
    c_.resize(static_cast<std::size_t>(phi));
  }
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool Cyclotomic::is_one() const { return c_[0] == Rational(1) && is_rational(); }

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

std::optional<Rational> Cyclotomic::rational_value() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

bool Cyclotomic::is_real() const { return involution() == *this; }

Cyclotomic Cyclotomic::involution() const {
  if (d_ <= 2) return *this;
  const auto& ctx = detail::cyclotomic_context(d_);
  RatPoly by_exp(static_cast<std::size_t>(d_));
  for (long k = 0; k < ctx.phi; ++k) by_exp[(d_ - k) % d_] += c_[k];
  Cyclotomic r;
  r.d_ = d_;
  r.c_ = ctx.fold(by_exp);
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(d_) + ")");
  if (is_rational()) return Cyclotomic(d_, c_[0].inverse());
  const auto& ctx = detail::cyclotomic_context(d_);
  RatPoly r0(ctx.modulus.begin(), ctx.modulus.end());
  RatPoly r1 = c_;
  trim(r1);
  RatPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    RatPoly next = sub(s0, mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  // r0 is a nonzero constant because Phi_d is irreducible.
  const Rational g = r0[0].inverse();
  for (auto& c : s0) c *= g;
  return Cyclotomic(d_, std::move(s0));
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic result(d_, Rational(1));
  Cyclotomic base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Cyclotomic Cyclotomic::lift_to(long d) const {
  if (d == d_) return *this;
  if (d % d_ != 0)
    throw ConductorMismatch("cannot lift Q(zeta_" + std::to_string(d_) + ") into Q(zeta_" + std::to_string(d) + ")");
  Cyclotomic r(d, Rational(0));
  const long step = d / d_;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) r += Cyclotomic(d, c_[k]) * zeta_power(d, static_cast<long>(k) * step);
  return r;
}

std::optional<Cyclotomic> Cyclotomic::restrict_to(long d) const {
  if (d == d_) return *this;
  if (d_ % d != 0)
    throw ConductorMismatch("Q(zeta_" + std::to_string(d) + ") is not a subfield of Q(zeta_" + std::to_string(d_) + ")");
  const long rows = static_cast<long>(c_.size());
  const long cols = euler_phi(d);
  const long step = d_ / d;
  // Augmented system: sum_k y_k zeta_D^(k*step) = *this.
  std::vector<RatPoly> m(static_cast<std::size_t>(rows), RatPoly(static_cast<std::size_t>(cols + 1)));
  for (long k = 0; k < cols; ++k) {
    const Cyclotomic z = zeta_power(d_, k * step);
    for (long i = 0; i < rows; ++i) m[i][k] = z.c_[i];
  }
  for (long i = 0; i < rows; ++i) m[i][cols] = c_[i];
  std::vector<long> pivot_col;
  long row = 0;
  for (long col = 0; col < cols && row < rows; ++col) {
    long p = row;
    while (p < rows && m[p][col].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const Rational inv = m[row][col].inverse();
    for (long j = col; j <= cols; ++j) m[row][j] *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      const Rational f = m[i][col];
      for (long j = col; j <= cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (long i = row; i < rows; ++i)
    if (!m[i][cols].is_zero()) return std::nullopt;
  RatPoly y(static_cast<std::size_t>(cols));
  for (long i = 0; i < row; ++i) y[pivot_col[i]] = m[i][cols];
  return Cyclotomic(d, std::move(y));
}

ComplexBall Cyclotomic::embed(long precision) const {
  ComplexBall acc(precision);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const Ball c = Ball::from_rational(c_[k], precision);
    const ComplexBall z = ComplexBall::root_of_unity(static_cast<long>(k), d_, precision);
    acc = acc + ComplexBall(c * z.re, c * z.im);
  }
  return acc;
}

void Cyclotomic::promote_against(const Cyclotomic& o) {
  if (d_ == o.d_ || o.d_ == 1) return;
  if (d_ == 1) {
    const Rational v = c_[0];
    *this = Cyclotomic(o.d_, v);
    return;
  }
  throw ConductorMismatch("conductor mismatch: " + std::to_string(d_) + " vs " + std::to_string(o.d_));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  promote_against(o);
  if (o.d_ == d_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    c_[0] += o.c_[0];
  }
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (b.d_ == 1 || a.d_ == 1) {
    const Cyclotomic& scalar = b.d_ == 1 ? b : a;
    Cyclotomic r = b.d_ == 1 ? a : b;
    const Rational s = scalar.c_[0];
    for (auto& c : r.c_) c *= s;
    return r;
  }
  if (a.d_ != b.d_)
    throw ConductorMismatch("conductor mismatch: " + std::to_string(a.d_) + " vs " + std::to_string(b.d_));
  const auto& ctx = detail::cyclotomic_context(a.d_);
  RatPoly by_exp(static_cast<std::size_t>(a.d_));
  for (long i = 0; i < ctx.phi; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (long j = 0; j < ctx.phi; ++j) {
      if (b.c_[j].is_zero()) continue;
      by_exp[(i + j) % a.d_] += a.c_[i] * b.c_[j];
    }
  }
  Cyclotomic r;
  r.d_ = a.d_;
  r.c_ = ctx.fold(by_exp);
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.d_ == b.d_) return a.c_ == b.c_;
  if (a.d_ == 1 || b.d_ == 1) return a.is_rational() && b.is_rational() && a.c_[0] == b.c_[0];
  return false;
}

std::string Cyclotomic::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    Rational c = c_[k];
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    if (k == 0) {
      os << c;
    } else {
      if (c != Rational(1)) os << (c == Rational(-1) ? "-" : c.str() + "*");
      os << "z" << d_;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Cyclotomic zeta_power(long d, long k) {
  if (d < 1) throw std::invalid_argument("conductor must be positive");
  const auto& ctx = detail::cyclotomic_context(d);
  k %= d;
  if (k < 0) k += d;
  return Cyclotomic(d, ctx.reduced[k]);
}

Cyclotomic galois_conjugate(const Cyclotomic& a, long k) {
  const long d = a.conductor();
  if (std::gcd(k, d) != 1)
    throw std::invalid_argument("galois_conjugate: " + std::to_string(k) + " is not a unit mod " + std::to_string(d));
  if (d <= 2) return a;
  const auto& ctx = detail::cyclotomic_context(d);
  RatPoly by_exp(static_cast<std::size_t>(d));
  long step = k % d;
  if (step < 0) step += d;
  for (long j = 0; j < ctx.phi; ++j) by_exp[(j * step) % d] += a.coeffs()[j];
  return Cyclotomic(d, ctx.fold(by_exp));
}

std::optional<long> root_of_unity_exponent(const Cyclotomic& a, long d) {
  const Cyclotomic x = a.conductor() == d ? a : a.lift_to(d);
  for (long k = 0; k < d; ++k)
    if (zeta_power(d, k) == x) return k;
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& a) { return os << a.str(); }

}  // namespace hfd

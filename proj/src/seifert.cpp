#include "hfd/seifert.hpp"

#include <sstream>
#include <vector>

#include "hfd/exact_linalg.hpp"

namespace hfd {

SeifertMatrix::SeifertMatrix(IntMatrix entries) : a_(std::move(entries)) {
  if (a_.rows() != a_.cols() || a_.rows() % 2 != 0)
    throw InvalidSeifertMatrix("Seifert matrix must be square of even dimension");
  const QMatrix q = to_rational(a_);
  if (determinant<Rational>(q - q.transpose()) != Rational(1))
    throw InvalidSeifertMatrix("Seifert matrix must satisfy det(A - A^T) = 1");
}

SeifertMatrix block_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
  const Index n = a.entries().rows(), m = b.entries().rows();
  IntMatrix s = IntMatrix::Zero(n + m, n + m);
  s.topLeftCorner(n, n) = a.entries();
  s.bottomRightCorner(m, m) = b.entries();
  return SeifertMatrix(std::move(s));
}

SeifertMatrix concordance_inverse(const SeifertMatrix& a) { return SeifertMatrix(-a.entries().transpose()); }

SeifertMatrix k_a_matrix(long a) {
  IntMatrix m(2, 2);
  m << a, 1, 0, -a;
  return SeifertMatrix(std::move(m));
}

LaurentPolynomial::LaurentPolynomial(const std::map<long, BigInt>& coeffs) {
  for (const auto& [e, c] : coeffs)
    if (c != 0) c_[e] = c;
}

BigInt LaurentPolynomial::coeff(long e) const {
  const auto it = c_.find(e);
  return it == c_.end() ? BigInt(0) : it->second;
}

LaurentPolynomial LaurentPolynomial::reflected() const {
  std::map<long, BigInt> r;
  for (const auto& [e, c] : c_) r[-e] = c;
  return LaurentPolynomial(r);
}

Rational LaurentPolynomial::evaluate(const Rational& t) const {
  Rational acc(0);
  for (const auto& [e, c] : c_) acc += Rational(c) * t.pow(e);
  return acc;
}

Cyclotomic LaurentPolynomial::evaluate(const Cyclotomic& t) const {
  Cyclotomic acc(t.conductor(), Rational(0));
  for (const auto& [e, c] : c_) acc += Cyclotomic(t.conductor(), Rational(c)) * t.pow(e);
  return acc;
}

std::string LaurentPolynomial::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const long e = it->first;
    BigInt c = it->second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    if (e == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "t";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

LaurentPolynomial alexander(const SeifertMatrix& a) {
  const QMatrix q = a.rational();
  const long g = static_cast<long>(a.genus());
  const long n = 2 * g;
  // Newton interpolation of det(kA - A^T) at k = 0..2g.
  std::vector<Rational> coef;
  for (long k = 0; k <= n; ++k) coef.push_back(determinant<Rational>(Rational(k) * q - q.transpose()));
  for (long j = 1; j <= n; ++j)
    for (long i = n; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / Rational(j);
  std::vector<Rational> poly{coef[n]};
  for (long i = n - 1; i >= 0; --i) {
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * Rational(i);
    }
    next[0] += coef[i];
    poly = std::move(next);
  }
  std::map<long, BigInt> m;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (!poly[k].is_integer()) throw std::logic_error("Alexander polynomial has a non-integer coefficient");
    m[static_cast<long>(k) - g] = poly[k].numerator();
  }
  LaurentPolynomial delta(m);
  if (delta.evaluate(Rational(1)) != Rational(1)) throw std::logic_error("Alexander polynomial has Delta(1) != 1");
  return delta;
}

long root_exponent(const Cyclotomic& omega) {
  const long d = omega.conductor();
  const auto s = root_of_unity_exponent(omega, d);
  if (!s) throw std::invalid_argument("omega = " + omega.str() + " is not a root of unity of order " + std::to_string(d));
  return *s;
}

HermitianForm build_lambda_r(const SeifertMatrix& a, long r, const Cyclotomic& omega) {
  if (r < 1) throw std::invalid_argument("build_lambda_r: r must be >= 1");
  root_exponent(omega);
  const long d = omega.conductor();
  const CycMatrix A = to_cyclotomic(a.rational(), d);
  const CycMatrix At = A.transpose();
  const Cyclotomic w = omega;
  const Cyclotomic wbar = omega.involution();
  const Cyclotomic one(d, Rational(1));
  const Index n = A.rows();
  CycMatrix m(n * r, n * r);
  m.setConstant(Cyclotomic(d, Rational(0)));
  if (r == 1) {
    m = A * (one - w) + At * (one - wbar);
  } else if (r == 2) {
    m.block(0, 0, n, n) = A + At;
    m.block(n, n, n, n) = A + At;
    m.block(0, n, n, n) = -A - At * wbar;
    m.block(n, 0, n, n) = -At - A * w;
  } else {
    for (long i = 0; i < r; ++i) {
      m.block(i * n, i * n, n, n) = A + At;
      if (i + 1 < r) {
        m.block(i * n, (i + 1) * n, n, n) = -A;
        m.block((i + 1) * n, i * n, n, n) = -At;
      }
    }
    m.block(0, (r - 1) * n, n, n) = -(At * wbar);
    m.block((r - 1) * n, 0, n, n) = -(A * w);
  }
  return HermitianForm(d, std::move(m));
}

WittClass knot_cover_defect(const SeifertMatrix& a, long r, long s, long d) {
  if (r < 1 || d < 1 || s < 0 || s >= d) throw std::invalid_argument("knot_cover_defect: need r >= 1, d >= 1, 0 <= s < d");
  return WittClass::of(build_lambda_r(a, r, zeta_power(d, s))) -
         WittClass::of(build_lambda_r(a, r, Cyclotomic(d, Rational(1))));
}

Cyclotomic dis_formula(const SeifertMatrix& a, const Cyclotomic& omega, long r) {
  const long d = omega.conductor();
  const long s = root_exponent(omega);
  const LaurentPolynomial delta = alexander(a);
  if (r == 1) {
    const Cyclotomic v = delta.evaluate(omega);
    if (v.is_zero()) throw ZeroAlexanderValue("Delta_A(omega) = 0 at omega = " + omega.str());
    return v;
  }
  if (r == 2) {
    const Cyclotomic root = zeta_power(2 * d, s);
    const Cyclotomic plus = delta.evaluate(root);
    const Cyclotomic minus = delta.evaluate(-root);
    if (plus.is_zero() || minus.is_zero())
      throw ZeroAlexanderValue("Delta_A(+-sqrt(omega)) = 0 at omega = " + omega.str());
    const auto v = (plus * minus).restrict_to(d);
    if (!v) throw std::logic_error("Delta(sqrt w) Delta(-sqrt w) does not lie in Q(zeta_d)");
    return *v;
  }
  throw std::invalid_argument("dis_formula: r must be 1 or 2");
}

namespace {

using RatPoly = std::vector<Rational>;  // lowest degree first

void trim(RatPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

RatPoly poly_rem(RatPoly a, const RatPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

RatPoly poly_quot(RatPoly a, const RatPoly& b) {
  trim(a);
  RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return q;
}

RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  return d;
}

// P with Delta(t) = P(t + 1/t).
RatPoly symmetric_reduction(const LaurentPolynomial& delta) {
  std::vector<RatPoly> dickson{{Rational(2)}, {Rational(0), Rational(1)}};
  long top = 0;
  for (const auto& [e, c] : delta.coeffs()) top = std::max(top, e < 0 ? -e : e);
  for (long k = 2; k <= top; ++k) {
    RatPoly next(static_cast<std::size_t>(k + 1));
    for (std::size_t i = 0; i < dickson[k - 1].size(); ++i) next[i + 1] += dickson[k - 1][i];
    for (std::size_t i = 0; i < dickson[k - 2].size(); ++i) next[i] -= dickson[k - 2][i];
    dickson.push_back(next);
  }
  RatPoly p(static_cast<std::size_t>(top + 1));
  p[0] = Rational(delta.coeff(0));
  for (long k = 1; k <= top; ++k)
    for (std::size_t i = 0; i < dickson[k].size(); ++i) p[i] += Rational(delta.coeff(k)) * dickson[k][i];
  trim(p);
  return p;
}

int real_sign(const Cyclotomic& x) {
  if (x.is_zero()) return 0;
  for (long prec = 64;; prec *= 2)
    if (const auto s = x.embed(prec).re.sign()) return *s;
}

Cyclotomic eval_at(const RatPoly& p, const Cyclotomic& x) {
  Cyclotomic acc(x.conductor(), Rational(0));
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Cyclotomic(x.conductor(), *it);
  return acc;
}

int sign_variations(const std::vector<RatPoly>& chain, const Cyclotomic& x) {
  int v = 0, last = 0;
  for (const auto& p : chain) {
    const int s = real_sign(eval_at(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Number of roots of the squarefree P strictly between x0 (a root) and x1 (not a root).
int roots_between(const std::vector<RatPoly>& chain, const Cyclotomic& x0, const Cyclotomic& x1) {
  const int v0 = sign_variations(chain, x0);
  const int v1 = sign_variations(chain, x1);
  // V is right-continuous at a root and drops by one across it.
  if (real_sign(x1 - x0) > 0) return v0 - v1;
  return v1 - (v0 + 1);
}

}  // namespace

int levine_tristram(const SeifertMatrix& a, long d, long s) {
  if (d < 1) throw std::invalid_argument("levine_tristram: d must be positive");
  s %= d;
  if (s < 0) s += d;
  if (s == 0) return 0;
  const LaurentPolynomial delta = alexander(a);
  const Cyclotomic omega = zeta_power(d, s);
  if (!delta.evaluate(omega).is_zero()) return signature(build_lambda_r(a, 1, omega));

  RatPoly p = symmetric_reduction(delta);
  const RatPoly g = [&] {
    RatPoly x = p, y = derivative(p);
    trim(y);
    while (!y.empty()) {
      RatPoly r = poly_rem(x, y);
      x = std::move(y);
      y = std::move(r);
    }
    return x;
  }();
  p = poly_quot(p, g);
  std::vector<RatPoly> chain{p, derivative(p)};
  while (true) {
    RatPoly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }

  for (long n = 2;; ++n) {
    const long big = n * d;
    const Cyclotomic plus = zeta_power(big, n * s + 1);
    const Cyclotomic minus = zeta_power(big, n * s - 1);
    if (delta.evaluate(plus).is_zero() || delta.evaluate(minus).is_zero()) continue;
    const Cyclotomic x0 = (omega + omega.involution()).lift_to(big);
    const Cyclotomic xp = plus + plus.involution();
    const Cyclotomic xm = minus + minus.involution();
    if (roots_between(chain, x0, xp) != 0 || roots_between(chain, x0, xm) != 0) continue;
    const int sp = signature(build_lambda_r(a, 1, plus));
    const int sm = signature(build_lambda_r(a, 1, minus));
    return (sp + sm) / 2;
  }
}

}  // namespace hfd

#include "hfd/witt.hpp"

#include <numeric>
#include <string>

#include "hfd/exact_linalg.hpp"

namespace hfd {

HermitianForm::HermitianForm(long d, CycMatrix gram) : d_(d), gram_(std::move(gram)) {
  if (d < 1) throw std::invalid_argument("conductor must be positive");
  if (gram_.rows() != gram_.cols()) throw NotHermitian("gram matrix is not square");
  for (Index i = 0; i < gram_.rows(); ++i)
    for (Index j = 0; j < gram_.cols(); ++j) {
      Cyclotomic& x = gram_(i, j);
      if (x.conductor() != d_) x = x.lift_to(d_);
    }
  if (!is_hermitian(gram_)) throw NotHermitian("gram matrix is not hermitian");
}

HermitianForm HermitianForm::empty(long d) { return HermitianForm(d, CycMatrix(0, 0)); }

HermitianForm HermitianForm::diagonal(long d, const std::vector<Cyclotomic>& entries) {
  const Index n = static_cast<Index>(entries.size());
  CycMatrix g(n, n);
  g.setConstant(Cyclotomic(d, Rational(0)));
  for (Index i = 0; i < n; ++i) g(i, i) = entries[static_cast<std::size_t>(i)];
  return HermitianForm(d, std::move(g));
}

HermitianForm HermitianForm::operator-() const { return HermitianForm(d_, -gram_); }

HermitianForm orthogonal_sum(const HermitianForm& a, const HermitianForm& b) {
  if (a.conductor() != b.conductor())
    throw ConductorMismatch("orthogonal sum of forms over Q(zeta_" + std::to_string(a.conductor()) +
                            ") and Q(zeta_" + std::to_string(b.conductor()) + ")");
  CycMatrix g(a.dim() + b.dim(), a.dim() + b.dim());
  g.setConstant(Cyclotomic(a.conductor(), Rational(0)));
  g.topLeftCorner(a.dim(), a.dim()) = a.gram();
  g.bottomRightCorner(b.dim(), b.dim()) = b.gram();
  return HermitianForm(a.conductor(), std::move(g));
}

bool is_nonsingular(const HermitianForm& h) { return h.is_empty() || !determinant(h.gram()).is_zero(); }

HermitianForm radical_reduce(const HermitianForm& h) {
  const auto pivots = pivot_columns(h.gram());
  if (static_cast<Index>(pivots.size()) == h.dim()) return h;
  const Index k = static_cast<Index>(pivots.size());
  CycMatrix g(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) g(i, j) = h.gram()(pivots[i], pivots[j]);
  return HermitianForm(h.conductor(), std::move(g));
}

QMatrix realify(const HermitianForm& h) {
  const long d = h.conductor();
  if (d != 1 && d != 2 && d != 4) throw std::invalid_argument("realify needs conductor 1, 2 or 4");
  const Index n = h.dim();
  QMatrix r = QMatrix::Zero(2 * n, 2 * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto& c = h.gram()(i, j).coeffs();
      const Rational x = c[0];
      const Rational y = d == 4 ? c[1] : Rational(0);
      r(i, j) = x;
      r(i, j + n) = -y;
      r(i + n, j) = y;
      r(i + n, j + n) = x;
    }
  return r;
}

namespace {

void require_nonsingular(const HermitianForm& h, const char* what) {
  if (!is_nonsingular(h)) throw SingularForm(std::string(what) + ": form is singular (reduce the radical first)");
}

BigFloat power_of_two(long e, long precision) {
  BigFloat x(precision);
  mpfr_set_ui_2exp(x.get(), 1, e, MPFR_RNDN);
  return x;
}

// Cyclic Jacobi on a symmetric m x m matrix a (row-major); accumulates the
// rotations into q. Only the midpoint matters, so plain rounding is fine.
void jacobi(std::vector<BigFloat>& a, std::vector<BigFloat>& q, Index m, long precision) {
  BigFloat scale(0.0, precision);
  for (const auto& x : a)
    if (x.abs() > scale) scale = x.abs();
  if (scale.is_zero()) return;
  const BigFloat tol = scale * power_of_two(-(precision - 8), precision);
  const BigFloat one(1.0, precision), two(2.0, precision);
  auto at = [m](std::vector<BigFloat>& v, Index i, Index j) -> BigFloat& { return v[i * m + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p < m; ++p)
      for (Index r = p + 1; r < m; ++r) {
        const BigFloat apr = at(a, p, r);
        if (!(apr.abs() > tol)) continue;
        rotated = true;
        const BigFloat theta = (at(a, r, r) - at(a, p, p)) / (two * apr);
        BigFloat t = one / (theta.abs() + (theta * theta + one).sqrt());
        if (theta.sign() < 0) t = -t;
        const BigFloat c = one / (t * t + one).sqrt();
        const BigFloat s = t * c;
        for (Index k = 0; k < m; ++k) {
          const BigFloat kp = at(a, k, p), kr = at(a, k, r);
          at(a, k, p) = c * kp - s * kr;
          at(a, k, r) = s * kp + c * kr;
        }
        for (Index k = 0; k < m; ++k) {
          const BigFloat pk = at(a, p, k), rk = at(a, r, k);
          at(a, p, k) = c * pk - s * rk;
          at(a, r, k) = s * pk + c * rk;
        }
        for (Index k = 0; k < m; ++k) {
          const BigFloat kp = at(q, k, p), kr = at(q, k, r);
          at(q, k, p) = c * kp - s * kr;
          at(q, k, r) = s * kp + c * kr;
        }
      }
    if (!rotated) break;
  }
}

std::optional<int> signature_at_precision(const HermitianForm& h, long prec) {
  const Index n = h.dim();
  const Index m = 2 * n;
  std::vector<Ball> R(static_cast<std::size_t>(m * m), Ball(prec));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const ComplexBall z = h.gram()(i, j).embed(prec);
      R[i * m + j] = z.re;
      R[i * m + j + n] = -z.im;
      R[(i + n) * m + j] = z.im;
      R[(i + n) * m + j + n] = z.re;
    }
  std::vector<BigFloat> S(static_cast<std::size_t>(m * m), BigFloat(prec));
  std::vector<BigFloat> Q(static_cast<std::size_t>(m * m), BigFloat(0.0, prec));
  for (Index i = 0; i < m; ++i) {
    Q[i * m + i] = BigFloat(1.0, prec);
    for (Index j = i; j < m; ++j) {
      S[i * m + j] = R[i * m + j].mid();
      S[j * m + i] = R[i * m + j].mid();
    }
  }
  jacobi(S, Q, m, prec);

  // M = Q^T R Q in ball arithmetic; Q is exact.
  std::vector<Ball> T(static_cast<std::size_t>(m * m), Ball(prec));
  for (Index i = 0; i < m; ++i)
    for (Index l = 0; l < m; ++l) {
      Ball acc(prec);
      for (Index j = 0; j < m; ++j) acc = acc + R[i * m + j] * Ball::exact(Q[j * m + l]);
      T[i * m + l] = acc;
    }
  int pos = 0, neg = 0;
  for (Index k = 0; k < m; ++k) {
    std::vector<Ball> row(static_cast<std::size_t>(m), Ball(prec));
    for (Index l = 0; l < m; ++l) {
      Ball acc(prec);
      for (Index i = 0; i < m; ++i) acc = acc + Ball::exact(Q[i * m + k]) * T[i * m + l];
      row[l] = acc;
    }
    Ball disc = row[k];
    for (Index l = 0; l < m; ++l)
      if (l != k) disc = disc.inflate(row[l].abs_upper());
    const auto s = disc.sign();
    if (!s) return std::nullopt;
    (*s > 0 ? pos : neg)++;
  }
  if ((pos - neg) % 2 != 0) throw std::logic_error("realified signature is odd");
  return (pos - neg) / 2;
}

}  // namespace

CertifiedSignature certified_signature(const HermitianForm& h, long max_precision) {
  require_nonsingular(h, "signature");
  if (h.is_empty()) return {0, 0};
  for (long prec = 64; prec <= max_precision; prec *= 2)
    if (const auto s = signature_at_precision(h, prec)) return {*s, prec};
  throw std::runtime_error("signature not certified within " + std::to_string(max_precision) + " bits");
}

int signature(const HermitianForm& h) { return certified_signature(h).value; }

int exact_signature(const HermitianForm& h) {
  require_nonsingular(h, "exact_signature");
  const auto [pos, neg] = rational_inertia(realify(h));
  return static_cast<int>(pos - neg) / 2;
}

int rank_mod2(const HermitianForm& h) {
  require_nonsingular(h, "rank_mod2");
  return static_cast<int>(h.dim() % 2);
}

Cyclotomic discriminant(const HermitianForm& h) {
  require_nonsingular(h, "discriminant");
  const Index r = h.dim();
  Cyclotomic det = h.is_empty() ? Cyclotomic(h.conductor(), Rational(1)) : determinant(h.gram());
  if (det.conductor() != h.conductor()) det = det.lift_to(h.conductor());
  if ((r * (r + 1) / 2) % 2 != 0) det = -det;
  if (!det.is_real()) throw std::logic_error("discriminant is not involution-fixed");
  return det;
}

Rational real_subfield_norm(const Cyclotomic& t) {
  if (!t.is_real()) throw std::invalid_argument("real_subfield_norm: element is not real");
  const long d = t.conductor();
  Cyclotomic prod(d, Rational(1));
  if (d <= 2) {
    prod = t;
  } else {
    for (long k = 1; 2 * k < d; ++k)
      if (std::gcd(k, d) == 1) prod *= galois_conjugate(t, k);
  }
  const auto v = prod.rational_value();
  if (!v) throw std::logic_error("real subfield norm is not rational");
  return *v;
}

namespace {

bool is_gaussian(long d) { return d == 4; }
bool is_rational_field(long d) { return d <= 2; }

// t in K+ recognised as z * conj(z) for some z in Q(zeta_d).
bool recognised_norm(const Cyclotomic& t, long d) {
  const auto v = t.rational_value();
  if (!v || v->sign() <= 0) return false;
  try {
    if (square_class_representative(*v) == 1) return true;
    return d % 4 == 0 && is_norm_from_Qi(*v);
  } catch (const BudgetExhausted&) {
    return false;
  }
}

Cyclotomic normalise_entry(const Cyclotomic& x, long d) {
  const auto v = x.rational_value();
  if (!v) return x;
  try {
    const BigInt rep = d % 4 == 0 ? norm_class_representative(*v) : square_class_representative(*v);
    return Cyclotomic(d, Rational(rep));
  } catch (const BudgetExhausted&) {
    return x;
  }
}

// Entries 1, ..., 1, -1, ..., -1 with the first scaled so the discriminant
// class is disc_rep; the smallest dimension compatible with the signature.
HermitianForm canonical_gaussian(int sig, const BigInt& disc_rep) {
  long r = sig < 0 ? -sig : sig;
  if (r == 0 && disc_rep != 1) r = 2;
  const long p = (r + sig) / 2;
  const long q = (r - sig) / 2;
  BigInt e = disc_rep;
  if ((r * (r + 1) / 2) % 2 != 0) e = -e;
  std::vector<Cyclotomic> entries;
  for (long i = 0; i < p; ++i) entries.emplace_back(4, Rational(1));
  for (long i = 0; i < q; ++i) entries.emplace_back(4, Rational(-1));
  if (!entries.empty()) entries[0] = entries[0] * Cyclotomic(4, Rational(BigInt(abs(e))));
  return HermitianForm::diagonal(4, entries);
}

HermitianForm normal_form(const HermitianForm& f) {
  const long d = f.conductor();
  if (f.is_empty()) return f;
  const auto diag = hermitian_diagonalize(f.gram(), true);
  if (diag.radical_dimension != 0) throw std::logic_error("normal_form: singular input");
  if (is_gaussian(d)) {
    try {
      int sig = 0;
      Rational prod(1);
      for (const auto& x : diag.diagonal) {
        const Rational v = *x.rational_value();
        sig += v.sign();
        prod *= v;
      }
      const long r = static_cast<long>(diag.diagonal.size());
      if ((r * (r + 1) / 2) % 2 != 0) prod = -prod;
      return canonical_gaussian(sig, norm_class_representative(prod));
    } catch (const BudgetExhausted&) {
      // fall through to generic pair cancellation
    }
  }
  std::vector<Cyclotomic> entries;
  for (const auto& x : diag.diagonal) entries.push_back(normalise_entry(x, d));
  std::vector<bool> gone(entries.size(), false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (gone[i]) continue;
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (gone[j]) continue;
      if (recognised_norm(-(entries[j] / entries[i]), d)) {
        gone[i] = gone[j] = true;
        break;
      }
    }
  }
  std::vector<Cyclotomic> kept;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!gone[i]) kept.push_back(entries[i]);
  return HermitianForm::diagonal(d, kept);
}

}  // namespace

WittClass WittClass::zero(long d) { return WittClass(HermitianForm::empty(d)); }

WittClass WittClass::of(const HermitianForm& h) { return WittClass(normal_form(radical_reduce(h))); }

WittClass witt_add(const WittClass& x, const WittClass& y) {
  return WittClass::of(orthogonal_sum(x.representative(), y.representative()));
}

WittClass witt_negate(const WittClass& x) { return WittClass::of(-x.representative()); }

WittInvariants witt_invariants(const WittClass& x) {
  const HermitianForm& h = x.representative();
  WittInvariants inv;
  inv.conductor = h.conductor();
  inv.signature = signature(h);
  inv.rank_mod2 = rank_mod2(h);
  inv.discriminant_raw = discriminant(h);
  if (is_gaussian(inv.conductor) || is_rational_field(inv.conductor)) {
    const Rational v = *inv.discriminant_raw.rational_value();
    inv.discriminant_class = DiscriminantClass{v, norm_class_representative(v), symbol_certificate(v)};
  }
  return inv;
}

WittComparison witt_compare(const WittClass& x, const WittClass& y) {
  if (x.conductor() != y.conductor())
    throw ConductorMismatch("comparing Witt classes over Q(zeta_" + std::to_string(x.conductor()) + ") and Q(zeta_" +
                            std::to_string(y.conductor()) + ")");
  const long d = x.conductor();
  const WittClass z = x - y;
  if (z.is_structurally_zero()) return WittComparison::equal;
  const HermitianForm& h = z.representative();
  if (rank_mod2(h) != 0 || signature(h) != 0) return WittComparison::distinct;
  const Cyclotomic disc = discriminant(h);
  if (is_gaussian(d)) return is_norm_from_Qi(*disc.rational_value()) ? WittComparison::equal : WittComparison::distinct;
  if (is_rational_field(d))
    return square_class_representative(*disc.rational_value()) == 1 ? WittComparison::equal : WittComparison::distinct;
  if (recognised_norm(disc, d)) return WittComparison::equal;
  if (d % 4 == 0) {
    try {
      if (!is_norm_from_Qi(real_subfield_norm(disc))) return WittComparison::distinct;
    } catch (const BudgetExhausted&) {
    }
  }
  return WittComparison::undecided;
}

bool witt_equal(const WittClass& x, const WittClass& y) { return witt_compare(x, y) == WittComparison::equal; }

}  // namespace hfd

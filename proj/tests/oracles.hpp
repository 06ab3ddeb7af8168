#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's algorithms beyond reading plain data out of its types.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "hfd/covers.hpp"
#include "hfd/cyclotomic.hpp"
#include "hfd/seifert.hpp"
#include "hfd/witt.hpp"

namespace oracle {

using hfd::Cyclotomic;
using hfd::HermitianForm;
using hfd::IntMatrix;
using hfd::SeifertMatrix;

/// Double-precision image of a under zeta_d -> exp(2 pi i / d).
inline std::complex<double> embed(const Cyclotomic& a) {
  std::complex<double> z = 0;
  const double d = static_cast<double>(a.conductor());
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    const double c = a.coeffs()[k].raw().get_d();
    z += c * std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / d);
  }
  return z;
}

/// Signature by LAPACK-style floating eigenvalues (well-conditioned inputs only).
inline int float_signature(const HermitianForm& h) {
  const auto n = h.dim();
  if (n == 0) return 0;
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = embed(h.gram()(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  int s = 0;
  for (Eigen::Index i = 0; i < n; ++i) s += es.eigenvalues()(i) > 1e-9 ? 1 : (es.eigenvalues()(i) < -1e-9 ? -1 : 0);
  return s;
}

/// Integer polynomial arithmetic for the Leibniz determinant.
using Poly = std::vector<long long>;  // lowest degree first

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// det(tA - A^T) by the Leibniz expansion over all permutations.
inline Poly leibniz_alexander(const IntMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Poly total(static_cast<std::size_t>(n) + 1, 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Poly term{inversions % 2 ? -1LL : 1LL};
    for (int i = 0; i < n; ++i) {
      const int j = perm[i];
      term = poly_mul(term, Poly{-static_cast<long long>(a(j, i)), static_cast<long long>(a(i, j))});
    }
    for (std::size_t k = 0; k < term.size(); ++k) total[k] += term[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Positive solutions of x^2 = 2y^2 + 1 with y <= ymax, by exhaustive search.
inline std::vector<std::pair<long long, long long>> pell_brute(long long ymax) {
  std::vector<std::pair<long long, long long>> out;
  for (long long y = 1; y <= ymax; ++y) {
    const long long t = 2 * y * y + 1;
    auto x = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(t))));
    while (x * x > t) --x;
    while ((x + 1) * (x + 1) <= t) ++x;
    if (x * x == t) out.push_back({x, y});
  }
  return out;
}

/// n > 0 is a sum of two integer squares.
inline bool sum_of_two_squares(long long n) {
  for (long long a = 0; 2 * a * a <= n; ++a) {
    const long long r = n - a * a;
    auto b = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(r))));
    while (b * b > r) --b;
    while ((b + 1) * (b + 1) <= r) ++b;
    if (b * b == r) return true;
  }
  return false;
}

/// Rational p/q is a norm from Q(i) iff p q > 0 is a sum of two squares.
inline bool rational_is_qi_norm(long long p, long long q) {
  const long long n = p * q;
  return n > 0 && sum_of_two_squares(n);
}

/// Number of assignments E -> Z_n killing every relator, by brute force.
inline long long count_characters_brute(const hfd::VoltageGraph& g, long n) {
  const long e = g.edge_count();
  long long total = 1;
  for (long i = 0; i < e; ++i) total *= n;
  long long count = 0;
  std::vector<long> v(static_cast<std::size_t>(e), 0);
  for (long long idx = 0; idx < total; ++idx) {
    long long t = idx;
    for (long i = 0; i < e; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<long>(t % n);
      t /= n;
    }
    bool ok = true;
    for (const auto& r : g.relators()) {
      long s = 0;
      for (const auto& l : r.letters) s += l.exp * v[static_cast<std::size_t>(l.edge)];
      if (((s % n) + n) % n != 0) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

/// Random Seifert matrix S + J, S symmetric with entries in [-1, 1] and J the
/// standard symplectic upper part, so det(A - A^T) = 1.
inline SeifertMatrix random_seifert(std::mt19937& rng, int genus) {
  std::uniform_int_distribution<int> dist(-1, 1);
  const int n = 2 * genus;
  IntMatrix a = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = dist(rng);
  for (int k = 0; k < genus; ++k) a(2 * k, 2 * k + 1) += 1;
  return SeifertMatrix(a);
}

inline SeifertMatrix trefoil() {
  IntMatrix m(2, 2);
  m << -1, 1, 0, -1;
  return SeifertMatrix(m);
}

}  // namespace oracle

#pragma once

#include <Eigen/Core>

#include <cstdint>

#include "hfd/cyclotomic.hpp"
#include "hfd/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<hfd::Rational> : GenericNumTraits<hfd::Rational> {
  using Real = hfd::Rational;
  using NonInteger = hfd::Rational;
  using Nested = hfd::Rational;
  using Literal = hfd::Rational;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<hfd::Cyclotomic> : GenericNumTraits<hfd::Cyclotomic> {
  using Real = hfd::Cyclotomic;
  using NonInteger = hfd::Cyclotomic;
  using Nested = hfd::Cyclotomic;
  using Literal = hfd::Cyclotomic;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    // The involution is handled explicitly (hfd::involution); Eigen must not
    // try to treat this type as std::complex.
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 256
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace hfd {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using CycMatrix = Matrix<Cyclotomic>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

// Scalar hooks used by the exact linear algebra templates.
inline Rational involution(const Rational& x) { return x; }
inline Cyclotomic involution(const Cyclotomic& x) { return x.involution(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }

/// A unit u with u + conj(u) != 0 fails for at most one of {1, u}; over Q
/// the value 1 always suffices, so no second candidate is needed.
inline Rational non_real_unit(const Rational&) { return Rational(1); }
inline Cyclotomic non_real_unit(const Cyclotomic& sample) {
  return sample.conductor() > 2 ? zeta_power(sample.conductor(), 1) : Cyclotomic(1);
}

inline QMatrix to_rational(const IntMatrix& m) {
  return m.unaryExpr([](std::int64_t v) { return Rational(static_cast<long>(v)); });
}

template <class Scalar>
Matrix<Scalar> conjugate_transpose(const Matrix<Scalar>& m) {
  return m.unaryExpr([](const Scalar& x) { return involution(x); }).transpose();
}

inline CycMatrix to_cyclotomic(const QMatrix& m, long conductor) {
  return m.unaryExpr([conductor](const Rational& x) { return Cyclotomic(conductor, x); });
}

}  // namespace hfd

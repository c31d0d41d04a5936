#pragma once

// Exact scalar types used by the Hodge-theoretic core.
//
// Rational is an arbitrary precision rational with expression templates
// disabled so it behaves like a plain value type inside Eigen containers.
// Gaussian is a + b*i with rational a, b.

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace wpdist {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(num) / Rational(den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact dyadic rational equal to a finite double.
Rational rational_from_double(double x);

class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Gaussian(std::int64_t re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  template <class R, std::enable_if_t<std::is_same_v<std::decay_t<R>, Rational>, int> = 0>
  Gaussian(R re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  Gaussian conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  Gaussian operator-() const { return {-re_, -im_}; }

  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Gaussian& g);

 private:
  Rational re_{0};
  Rational im_{0};
};

/// i^k for any integer k.
Gaussian i_power(int k);

inline Gaussian conj(const Gaussian& g) { return g.conj(); }

std::string to_string(const Rational& q);
std::string to_string(const Gaussian& g);

}  // namespace wpdist

namespace Eigen {

// Gaussian is registered as a non-complex field so Eigen never calls
// std::conj/std::real on it; conjugation is done explicitly.
template <>
struct NumTraits<wpdist::Gaussian> : GenericNumTraits<wpdist::Gaussian> {
  using Real = wpdist::Gaussian;
  using NonInteger = wpdist::Gaussian;
  using Nested = wpdist::Gaussian;
  using Literal = wpdist::Gaussian;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return wpdist::Gaussian(0); }
  static inline Real dummy_precision() { return wpdist::Gaussian(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace wpdist {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using GMatrix = Mat<Gaussian>;
using GVector = Vec<Gaussian>;

/// Exact-zero test; the customization point used by the templated subspace code.
inline bool is_zero(const Gaussian& g) { return g.is_zero(); }
inline bool is_zero(const Rational& q) { return q == 0; }

template <class Derived>
GMatrix conj(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const Gaussian& g) { return g.conj(); });
}

template <class Derived>
Eigen::MatrixXcd to_complex(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const Gaussian& g) { return g.to_complex(); });
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class Derived>
bool is_real_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_real()) return false;
  return true;
}

GMatrix identity(Eigen::Index n);
GMatrix zeros(Eigen::Index rows, Eigen::Index cols);

/// Standard basis vector e_k (0-based) of length n.
GVector unit(Eigen::Index n, Eigen::Index k);

/// Kronecker product of two exact matrices.
GMatrix kron(const GMatrix& a, const GMatrix& b);

/// M^k for k >= 0.
GMatrix power(const GMatrix& m, int k);

}  // namespace wpdist

#include "wpdist/scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wpdist {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite input");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m);
  if (exp > 0) {
    r *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  Rational n = o.norm();
  if (n == 0) throw std::domain_error("Gaussian division by zero");
  Gaussian num = *this * o.conj();
  re_ = num.re_ / n;
  im_ = num.im_ / n;
  return *this;
}

Gaussian i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Gaussian(1);
    case 1: return Gaussian::i();
    case 2: return Gaussian(-1);
    default: return -Gaussian::i();
  }
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string to_string(const Gaussian& g) {
  if (g.is_real()) return to_string(g.real());
  if (g.real() == 0) return to_string(g.imag()) + "i";
  std::string im = to_string(g.imag());
  if (im.front() != '-') im = "+" + im;
  return to_string(g.real()) + im + "i";
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << to_string(g); }

GMatrix identity(Eigen::Index n) {
  GMatrix m = zeros(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Gaussian(1);
  return m;
}

GMatrix zeros(Eigen::Index rows, Eigen::Index cols) {
  GMatrix m(rows, cols);
  m.fill(Gaussian(0));
  return m;
}

GVector unit(Eigen::Index n, Eigen::Index k) {
  GVector v(n);
  v.fill(Gaussian(0));
  v(k) = Gaussian(1);
  return v;
}

GMatrix kron(const GMatrix& a, const GMatrix& b) {
  GMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

GMatrix power(const GMatrix& m, int k) {
  if (k < 0) throw std::invalid_argument("power: negative exponent");
  GMatrix out = identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace wpdist

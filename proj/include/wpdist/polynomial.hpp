#pragma once

// Real polynomials in (y1, y2) with exact rational coefficients.

#include <map>
#include <string>
#include <utility>

#include "wpdist/scalar.hpp"

namespace wpdist {

class RealPolynomial2 {
 public:
  /// (power of y1, power of y2)
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, Rational>;

  RealPolynomial2() = default;
  explicit RealPolynomial2(Terms terms);

  static RealPolynomial2 constant(const Rational& c) { return monomial(0, 0, c); }
  static RealPolynomial2 monomial(int a, int b, const Rational& c);
  static RealPolynomial2 y1() { return monomial(1, 0, Rational(1)); }
  static RealPolynomial2 y2() { return monomial(0, 1, Rational(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int a, int b) const;

  /// Degree in y1 (var = 0) or y2 (var = 1); -1 for the zero polynomial.
  int degree_in(int var) const;
  int total_degree() const;
  bool is_homogeneous() const;

  RealPolynomial2 derivative(int var) const;
  RealPolynomial2 swapped() const;

  Rational evaluate(const Rational& y1, const Rational& y2) const;
  double evaluate(double y1, double y2) const;

  RealPolynomial2& operator+=(const RealPolynomial2& o);
  RealPolynomial2& operator-=(const RealPolynomial2& o);
  friend RealPolynomial2 operator+(RealPolynomial2 a, const RealPolynomial2& b) { return a += b; }
  friend RealPolynomial2 operator-(RealPolynomial2 a, const RealPolynomial2& b) { return a -= b; }
  friend RealPolynomial2 operator*(const RealPolynomial2& a, const RealPolynomial2& b);
  friend RealPolynomial2 operator*(const Rational& c, const RealPolynomial2& p);
  friend bool operator==(const RealPolynomial2& a, const RealPolynomial2& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const RealPolynomial2& a, const RealPolynomial2& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void add(const Exponent& e, const Rational& c);

  Terms terms_;
};

RealPolynomial2 pow(const RealPolynomial2& p, int k);

}  // namespace wpdist

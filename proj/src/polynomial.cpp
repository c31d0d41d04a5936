#include "wpdist/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace wpdist {

RealPolynomial2::RealPolynomial2(Terms terms) {
  for (auto& [e, c] : terms) add(e, c);
}

RealPolynomial2 RealPolynomial2::monomial(int a, int b, const Rational& c) {
  RealPolynomial2 p;
  p.add({a, b}, c);
  return p;
}

void RealPolynomial2::add(const Exponent& e, const Rational& c) {
  if (e.first < 0 || e.second < 0) throw std::invalid_argument("negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational RealPolynomial2::coefficient(int a, int b) const {
  const auto it = terms_.find({a, b});
  return it == terms_.end() ? Rational(0) : it->second;
}

int RealPolynomial2::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, var == 0 ? e.first : e.second);
  return d;
}

int RealPolynomial2::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

bool RealPolynomial2::is_homogeneous() const {
  const int d = total_degree();
  for (const auto& [e, c] : terms_)
    if (e.first + e.second != d) return false;
  return true;
}

RealPolynomial2 RealPolynomial2::derivative(int var) const {
  RealPolynomial2 out;
  for (const auto& [e, c] : terms_) {
    const int k = var == 0 ? e.first : e.second;
    if (k == 0) continue;
    out.add(var == 0 ? Exponent{k - 1, e.second} : Exponent{e.first, k - 1}, c * k);
  }
  return out;
}

RealPolynomial2 RealPolynomial2::swapped() const {
  RealPolynomial2 out;
  for (const auto& [e, c] : terms_) out.add({e.second, e.first}, c);
  return out;
}

Rational RealPolynomial2::evaluate(const Rational& y1, const Rational& y2) const {
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int i = 0; i < e.first; ++i) m *= y1;
    for (int i = 0; i < e.second; ++i) m *= y2;
    sum += m;
  }
  return sum;
}

double RealPolynomial2::evaluate(double y1, double y2) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += to_double(c) * std::pow(y1, e.first) * std::pow(y2, e.second);
  return sum;
}

RealPolynomial2& RealPolynomial2::operator+=(const RealPolynomial2& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

RealPolynomial2& RealPolynomial2::operator-=(const RealPolynomial2& o) {
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

RealPolynomial2 operator*(const RealPolynomial2& a, const RealPolynomial2& b) {
  RealPolynomial2 out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return out;
}

RealPolynomial2 operator*(const Rational& c, const RealPolynomial2& p) {
  RealPolynomial2 out;
  for (const auto& [e, v] : p.terms_) out.add(e, c * v);
  return out;
}

RealPolynomial2 pow(const RealPolynomial2& p, int k) {
  RealPolynomial2 out = RealPolynomial2::constant(1);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

std::string RealPolynomial2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << wpdist::to_string(c);
    if (e.first > 0) os << "*y1" << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.second > 0) os << "*y2" << (e.second > 1 ? "^" + std::to_string(e.second) : "");
  }
  return os.str();
}

}  // namespace wpdist

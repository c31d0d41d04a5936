#pragma once

// The potential Q~(Omega, conj Omega): its exact polynomial part and the
// numerically evaluated decaying corrections.

#include <complex>
#include <vector>

#include "wpdist/limiting_data.hpp"
#include "wpdist/polynomial.hpp"

namespace wpdist {

/// Q~(e^{2i y1 N1} a0, e^{-2i y2 N2} conj a0), exactly. With one divisor the
/// second exponential is absent.
RealPolynomial2 polynomial_part(const LimitingExpansion& exp);

/// Q~(e^{2i(y1 N1 + y2 N2)} a0, conj a0), the form with both exponentials moved
/// into the first slot.
RealPolynomial2 one_sided_polynomial_part(const LimitingExpansion& exp);

struct DegreeReport {
  int deg = 0;
  Rational leading;
  bool leading_positive = false;
};

/// Degree in y1 of the polynomial part of a one-divisor expansion.
DegreeReport one_variable_degree_check(const LimitingExpansion& exp);

/// Q~(Omega(z), conj Omega(z)); throws NonPositive when the value is <= 0.
double full_potential(const LimitingExpansion& exp, const std::vector<std::complex<double>>& z);

/// Pointwise split full = poly + p1 + p2 + remainder. p2 collects the terms
/// built from a0 and a_I with i2 = 0 (decaying in y1), p1 those with i1 = 0,
/// and the remainder everything mixing the two or involving both t1 and t2.
/// With one divisor every correction lands in p2.
struct PotentialSplit {
  double full = 0;
  double poly = 0;
  double p1 = 0;
  double p2 = 0;
  double remainder = 0;
};

PotentialSplit split_potential(const LimitingExpansion& exp, const std::vector<std::complex<double>>& z);

struct Ray {
  double x1 = 0, x2 = 0;
  double u1 = 1, u2 = 1;  ///< y = s * (u1, u2)
};

struct DecayOptions {
  double delta = 0.05;
  double m_lo = 5.0;   ///< sampled range of min(y1, y2)
  double m_hi = 12.0;
  int samples = 8;
  double fd_step = 1e-4;
};

struct RayDecay {
  Ray ray;
  bool identically_zero = false;
  double rate = 0;             ///< fitted -d log|R| / d min(y)
  double derivative_rate = 0;  ///< slowest rate among dR/dy1, dR/dy2
  double sup = 0;              ///< max |R| over the samples
  double consistency = 0;      ///< max |full - (poly + p1 + p2 + R)| / |full|
  bool decays = false;
};

struct DecayReport {
  RealPolynomial2 poly;
  std::vector<RayDecay> rays;
  double remainder_bound = 0;
  bool verified = false;
};

/// Checks along each ray that the remainder and its first derivatives decay
/// at least like exp(-2 pi (1 - delta) min(y)).
DecayReport decay_split_verify(const LimitingExpansion& exp, const std::vector<Ray>& rays,
                               const DecayOptions& options = {});

/// Least-squares slope and intercept of log|v| against x; throws FitFailure on
/// fewer than three usable points.
std::pair<double, double> log_linear_fit(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace wpdist

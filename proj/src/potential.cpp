#include "wpdist/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/QR>

namespace wpdist {

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

RealPolynomial2 to_real_polynomial(const std::map<RealPolynomial2::Exponent, Gaussian>& coeffs) {
  RealPolynomial2::Terms terms;
  for (const auto& [e, c] : coeffs) {
    if (!c.is_real())
      throw Error(ErrorCode::NonRealCoefficient, "coefficient of y1^" + std::to_string(e.first) + " y2^" +
                                                     std::to_string(e.second) + " is " + to_string(c));
    terms[e] = c.real();
  }
  return RealPolynomial2(terms);
}

std::complex<double> twisted_pair(const CMatrix& qt, const CVector& u, const CVector& v) {
  return (u.transpose() * qt * v.conjugate())(0, 0);
}

enum class Kind { Base, F1, F2, H };

Kind term_kind(const ExpansionTerm& term) {
  if (term.exponent.size() == 1) return Kind::F1;
  if (term.exponent[1] == 0) return Kind::F1;
  if (term.exponent[0] == 0) return Kind::F2;
  return Kind::H;
}

}  // namespace

RealPolynomial2 polynomial_part(const LimitingExpansion& exp) {
  const GMatrix qt = exp.space().twisted_form();
  const GVector& a0 = exp.a0();
  const GVector a0_bar = conj(a0);
  const Gaussian two_i(Rational(0), Rational(2));
  std::map<RealPolynomial2::Exponent, Gaussian> coeffs;
  const NilpotentOperator& n1 = exp.nilpotent(0);
  const int d1 = degree(n1, a0);
  const int d2 = exp.divisor_count() > 1 ? degree(exp.nilpotent(1), a0) : 0;
  for (int j = 0; j <= d1; ++j) {
    const GVector left = n1.power(j) * a0;
    Gaussian cj(Rational(1) / factorial(j));
    for (int r = 0; r < j; ++r) cj *= two_i;
    for (int k = 0; k <= d2; ++k) {
      GVector right = a0_bar;
      Gaussian ck(Rational(1) / factorial(k));
      if (k > 0) {
        right = exp.nilpotent(1).power(k) * a0_bar;
        for (int r = 0; r < k; ++r) ck *= -two_i;
      }
      const Gaussian value = (left.transpose() * qt * right)(0, 0);
      if (!value.is_zero()) coeffs[{j, k}] += cj * ck * value;
    }
  }
  return to_real_polynomial(coeffs);
}

RealPolynomial2 one_sided_polynomial_part(const LimitingExpansion& exp) {
  const GMatrix qt = exp.space().twisted_form();
  const GVector a0_bar = conj(exp.a0());
  const Gaussian two_i(Rational(0), Rational(2));
  std::map<RealPolynomial2::Exponent, Gaussian> coeffs;
  const int k1 = exp.nilpotent(0).index();
  const int k2 = exp.divisor_count() > 1 ? exp.nilpotent(1).index() : 0;
  for (int j = 0; j <= k1; ++j) {
    for (int k = 0; k <= k2; ++k) {
      GVector v = exp.nilpotent(0).power(j) * exp.a0();
      if (k > 0) v = exp.nilpotent(1).power(k) * v;
      Gaussian c(Rational(1) / (factorial(j) * factorial(k)));
      for (int r = 0; r < j + k; ++r) c *= two_i;
      const Gaussian value = (v.transpose() * qt * a0_bar)(0, 0);
      if (!value.is_zero()) coeffs[{j, k}] += c * value;
    }
  }
  return to_real_polynomial(coeffs);
}

DegreeReport one_variable_degree_check(const LimitingExpansion& exp) {
  if (exp.divisor_count() != 1) throw Error(ErrorCode::InvalidDatum, "one divisor expected");
  const RealPolynomial2 p = polynomial_part(exp);
  DegreeReport r;
  r.deg = std::max(0, p.degree_in(0));
  r.leading = p.coefficient(r.deg, 0);
  r.leading_positive = r.leading > 0;
  return r;
}

double full_potential(const LimitingExpansion& exp, const std::vector<std::complex<double>>& z) {
  const CVector omega = evaluate_omega(exp, z);
  const CMatrix qt = to_complex(exp.space().twisted_form());
  const std::complex<double> value = twisted_pair(qt, omega, omega);
  if (std::abs(value.imag()) > 1e-12 * std::abs(value.real()) + 1e-300)
    throw Error(ErrorCode::NonRealCoefficient, "potential has imaginary part " + std::to_string(value.imag()));
  if (!(value.real() > 0)) throw Error(ErrorCode::NonPositive, "potential " + std::to_string(value.real()) + " <= 0");
  return value.real();
}

PotentialSplit split_potential(const LimitingExpansion& exp, const std::vector<std::complex<double>>& z) {
  if (z.size() != exp.divisor_count()) throw Error(ErrorCode::DimensionMismatch, "wrong number of coordinates");
  const Eigen::Index dim = exp.space().dim();
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  std::vector<std::complex<double>> t;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (size_t i = 0; i < z.size(); ++i) {
    t.push_back(std::exp(two_pi_i * z[i]));
    m += std::complex<double>(0.0, 2.0 * z[i].imag()) * to_complex(exp.nilpotent(i).matrix());
  }
  const CMatrix orbit = nilpotent_exp(m);
  const CMatrix qt = to_complex(exp.space().twisted_form());

  std::vector<CVector> vecs{to_complex(exp.a0())};
  std::vector<Kind> kinds{Kind::Base};
  for (const auto& term : exp.terms()) {
    std::complex<double> mono(1.0);
    for (size_t i = 0; i < t.size(); ++i) mono *= std::pow(t[i], term.exponent[i]);
    vecs.push_back(mono * to_complex(term.vec));
    kinds.push_back(term_kind(term));
  }

  PotentialSplit s;
  std::complex<double> sums[4] = {};
  for (size_t a = 0; a < vecs.size(); ++a) {
    const CVector left = orbit * vecs[a];
    for (size_t b = 0; b < vecs.size(); ++b) {
      const std::complex<double> v = twisted_pair(qt, left, vecs[b]);
      const bool f1_only = (kinds[a] == Kind::Base || kinds[a] == Kind::F1) &&
                           (kinds[b] == Kind::Base || kinds[b] == Kind::F1);
      const bool f2_only = (kinds[a] == Kind::Base || kinds[a] == Kind::F2) &&
                           (kinds[b] == Kind::Base || kinds[b] == Kind::F2);
      if (a == 0 && b == 0)
        sums[0] += v;
      else if (f1_only)
        sums[2] += v;
      else if (f2_only)
        sums[1] += v;
      else
        sums[3] += v;
    }
  }
  s.poly = sums[0].real();
  s.p1 = sums[1].real();
  s.p2 = sums[2].real();
  s.remainder = sums[3].real();
  s.full = full_potential(exp, z);
  return s;
}

std::pair<double, double> log_linear_fit(const std::vector<double>& x, const std::vector<double>& v) {
  std::vector<double> xs, ls;
  for (size_t i = 0; i < x.size(); ++i) {
    if (v[i] != 0.0 && std::isfinite(v[i])) {
      xs.push_back(x[i]);
      ls.push_back(std::log(std::abs(v[i])));
    }
  }
  if (xs.size() < 3) throw Error(ErrorCode::FitFailure, "fewer than three nonzero samples");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(xs.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = xs[i];
    a(static_cast<Eigen::Index>(i), 1) = 1.0;
    b(static_cast<Eigen::Index>(i)) = ls[i];
  }
  const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(b);
  return {sol(0), sol(1)};
}

DecayReport decay_split_verify(const LimitingExpansion& exp, const std::vector<Ray>& rays, const DecayOptions& options) {
  if (exp.divisor_count() != 2) throw Error(ErrorCode::InvalidDatum, "two divisors expected");
  if (options.samples < 4 || !(options.m_hi - options.m_lo >= 2.0))
    throw Error(ErrorCode::FitFailure, "sampling range too short for a decay fit");
  DecayReport report;
  report.poly = polynomial_part(exp);
  report.verified = true;
  const double target = 2.0 * std::numbers::pi * (1.0 - options.delta);
  for (const auto& ray : rays) {
    RayDecay rd;
    rd.ray = ray;
    const double umin = std::min(ray.u1, ray.u2);
    if (!(umin > 0)) throw Error(ErrorCode::InvalidDatum, "ray must point into the open quadrant");
    std::vector<double> ms, rs, d1s, d2s;
    for (int k = 0; k < options.samples; ++k) {
      const double m = options.m_lo + (options.m_hi - options.m_lo) * k / (options.samples - 1);
      const double s = m / umin;
      const double y1 = s * ray.u1, y2 = s * ray.u2;
      auto at = [&](double a, double b) {
        return split_potential(exp, {{ray.x1, a}, {ray.x2, b}});
      };
      const PotentialSplit sp = at(y1, y2);
      const double h1 = options.fd_step * y1, h2 = options.fd_step * y2;
      const double d1 = (at(y1 + h1, y2).remainder - at(y1 - h1, y2).remainder) / (2 * h1);
      const double d2 = (at(y1, y2 + h2).remainder - at(y1, y2 - h2).remainder) / (2 * h2);
      ms.push_back(m);
      rs.push_back(sp.remainder);
      d1s.push_back(d1);
      d2s.push_back(d2);
      rd.sup = std::max(rd.sup, std::abs(sp.remainder));
      const double sum = sp.poly + sp.p1 + sp.p2 + sp.remainder;
      rd.consistency = std::max(rd.consistency, std::abs(sp.full - sum) / std::abs(sp.full));
      const double poly_exact = report.poly.evaluate(y1, y2);
      rd.consistency = std::max(rd.consistency, std::abs(sp.poly - poly_exact) / std::abs(sp.full));
    }
    rd.identically_zero = std::all_of(rs.begin(), rs.end(), [](double r) { return r == 0.0; });
    if (rd.identically_zero) {
      rd.rate = rd.derivative_rate = std::numeric_limits<double>::infinity();
    } else {
      rd.rate = -log_linear_fit(ms, rs).first;
      rd.derivative_rate = std::numeric_limits<double>::infinity();
      for (const auto* ds : {&d1s, &d2s}) {
        if (std::all_of(ds->begin(), ds->end(), [](double d) { return d == 0.0; })) continue;
        rd.derivative_rate = std::min(rd.derivative_rate, -log_linear_fit(ms, *ds).first);
      }
    }
    rd.decays = rd.consistency < 1e-12 && rd.rate >= target && rd.derivative_rate >= target;
    report.remainder_bound = std::max(report.remainder_bound, rd.sup);
    report.verified = report.verified && rd.decays;
    report.rays.push_back(rd);
  }
  return report;
}

}  // namespace wpdist

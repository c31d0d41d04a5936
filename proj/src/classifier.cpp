#include "wpdist/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

#include "wpdist/errors.hpp"

namespace wpdist {

namespace {

using Exponent = RealPolynomial2::Exponent;

struct Row {
  Case label;
  std::vector<Exponent> support;  // in the order A, B, C, D
};

// (power of y1, power of y2), coefficients named in the table's order.
const std::vector<Row>& rows() {
  static const std::vector<Row> r{
      {Case::I, {{0, 1}, {1, 0}}},
      {Case::II, {{0, 1}, {1, 1}, {1, 0}}},
      {Case::III, {{0, 2}, {1, 1}, {1, 0}}},
      {Case::IV, {{0, 2}, {1, 2}, {1, 0}}},
      {Case::V, {{0, 3}, {1, 2}, {1, 0}}},
      {Case::VI, {{0, 2}, {1, 1}, {2, 0}}},
      {Case::VII, {{0, 2}, {1, 2}, {2, 1}, {2, 0}}},
      {Case::VIII, {{0, 3}, {1, 2}, {2, 1}, {2, 0}}},
      {Case::IX, {{0, 3}, {1, 2}, {2, 1}, {3, 0}}},
  };
  return r;
}

struct Rejected {
  std::string name;
  std::vector<Exponent> support;
};

const std::vector<Rejected>& rejected_shapes() {
  static const std::vector<Rejected> r{
      {"A*y2^2 + B*y1", {{0, 2}, {1, 0}}},
      {"A*y2^3 + B*y2*y1 + C*y1", {{0, 3}, {1, 1}, {1, 0}}},
      {"A*y2^3 + B*y1", {{0, 3}, {1, 0}}},
      {"A*y2^2 + B*y2^2*y1 + C*y1^2", {{0, 2}, {1, 2}, {2, 0}}},
      {"A*y2^2 + B*y2*y1^2 + C*y1^2", {{0, 2}, {2, 1}, {2, 0}}},
      {"A*y2^3 + B*y2*y1^2 + C*y1^2", {{0, 3}, {2, 1}, {2, 0}}},
      {"A*y2^3 + B*y1^2", {{0, 3}, {2, 0}}},
      {"A*y2^3 + B*y2^2*y1 + C*y1^2", {{0, 3}, {1, 2}, {2, 0}}},
      {"A*y2^3 + C*y2*y1^2 + D*y1^3", {{0, 3}, {2, 1}, {3, 0}}},
      {"A*y2^3 + B*y2^2*y1 + D*y1^3", {{0, 3}, {1, 2}, {3, 0}}},
      {"A*y2^3 + D*y1^3", {{0, 3}, {3, 0}}},
  };
  return r;
}

std::set<Exponent> support_of(const RealPolynomial2& p) {
  std::set<Exponent> s;
  for (const auto& [e, c] : p.terms()) s.insert(e);
  return s;
}

bool same_support(const std::set<Exponent>& s, const std::vector<Exponent>& row) {
  return s == std::set<Exponent>(row.begin(), row.end());
}

bool positive_on_grid(const RealPolynomial2& p, const GridOptions& grid) {
  const auto g = log_grid(grid.lo, grid.hi);
  for (double a : g)
    for (double b : g)
      if (!(p.evaluate(rational_from_double(a), rational_from_double(b)) > 0)) return false;
  return true;
}

void fill_row(ClassificationReport& r, const Row& row, const RealPolynomial2& q) {
  static const char* names[] = {"A", "B", "C", "D"};
  std::vector<Rational> v;
  for (size_t i = 0; i < row.support.size(); ++i) {
    v.push_back(q.coefficient(row.support[i].first, row.support[i].second));
    r.coefficients.emplace_back(names[i], v.back());
  }
  auto pos = [&](size_t i) { r.conditions.emplace_back(std::string(names[i]) + "_pos", v[i] > 0); };
  r.strict = true;
  switch (row.label) {
    case Case::I:
      pos(0), pos(1);
      break;
    case Case::II:
    case Case::III:
    case Case::IV:
    case Case::V:
      pos(0), pos(1), pos(2);
      break;
    case Case::VI: {
      pos(0), pos(2);
      const Rational disc = v[1] * v[1] - 4 * v[0] * v[2];
      r.conditions.emplace_back("B2_minus_4AC_nonneg", disc >= 0);
      r.strict = disc > 0;
      r.complete_square = disc == 0;
      break;
    }
    case Case::VII:
      pos(0), pos(1), pos(2), pos(3);
      break;
    case Case::VIII: {
      pos(0), pos(2), pos(3);
      const Rational disc = v[1] * v[1] - 3 * v[0] * v[2];
      r.conditions.emplace_back("B2_minus_3AC_nonneg", disc >= 0);
      r.strict = disc > 0;
      r.flags.emplace_back("B_nonzero", v[1] != 0);
      r.flags.emplace_back("B_positive", v[1] > 0);
      break;
    }
    case Case::IX: {
      pos(0), pos(3);
      const Rational d1 = v[1] * v[1] - 3 * v[0] * v[2];
      const Rational d2 = v[2] * v[2] - 3 * v[1] * v[3];
      r.conditions.emplace_back("B2_minus_3AC_nonneg", d1 >= 0);
      r.conditions.emplace_back("C2_minus_3BD_nonneg", d2 >= 0);
      r.conditions.emplace_back("BC_nonzero", v[1] * v[2] != 0);
      r.strict = d1 > 0 && d2 > 0;
      r.perfect_cube = d1 == 0 && d2 == 0;
      const Rational bc = v[1] * v[2];
      r.flags.emplace_back("BC_positive", bc > 0);
      if (d1 > 0 && d2 > 0)
        r.subcase = bc > 0 ? "a" : "b";
      else if (d1 == 0 && d2 == 0)
        r.subcase = "d";
      else if ((d1 == 0 && d2 > 0) || (d2 == 0 && d1 > 0))
        r.subcase = "c";
      break;
    }
    case Case::Invalid:
      break;
  }
}

}  // namespace

std::string case_label(Case c) {
  switch (c) {
    case Case::I: return "i";
    case Case::II: return "ii";
    case Case::III: return "iii";
    case Case::IV: return "iv";
    case Case::V: return "v";
    case Case::VI: return "vi";
    case Case::VII: return "vii";
    case Case::VIII: return "viii";
    case Case::IX: return "ix";
    case Case::Invalid: return "Invalid";
  }
  return "Invalid";
}

bool ClassificationReport::condition(const std::string& name) const {
  for (const auto& [n, v] : conditions)
    if (n == name) return v;
  throw std::out_of_range("no condition " + name);
}

bool ClassificationReport::flag(const std::string& name) const {
  for (const auto& [n, v] : flags)
    if (n == name) return v;
  throw std::out_of_range("no flag " + name);
}

DominantPolynomial dominant(const RealPolynomial2& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "dominant part of 0");
  std::vector<Exponent> dots;
  for (const auto& [e, c] : p.terms()) dots.push_back(e);
  std::set<Exponent> keep;

  auto support_value = [&](long w1, long w2) {
    long h = 0;
    for (const auto& e : dots) h = std::max(h, w1 * e.first + w2 * e.second);
    return h;
  };
  // axis-parallel faces: endpoints only
  for (int axis = 0; axis < 2; ++axis) {
    const long h = axis == 0 ? support_value(1, 0) : support_value(0, 1);
    if (h == 0) continue;
    std::vector<Exponent> face;
    for (const auto& e : dots)
      if ((axis == 0 ? e.first : e.second) == h) face.push_back(e);
    auto other = [&](const Exponent& e) { return axis == 0 ? e.second : e.first; };
    keep.insert(*std::min_element(face.begin(), face.end(), [&](auto& a, auto& b) { return other(a) < other(b); }));
    keep.insert(*std::max_element(face.begin(), face.end(), [&](auto& a, auto& b) { return other(a) < other(b); }));
  }
  // faces with strictly positive normal: every dot on them
  for (size_t i = 0; i < dots.size(); ++i) {
    for (size_t j = i + 1; j < dots.size(); ++j) {
      long w1 = dots[j].second - dots[i].second;
      long w2 = dots[i].first - dots[j].first;
      if (w1 < 0 || (w1 == 0 && w2 < 0)) w1 = -w1, w2 = -w2;
      if (w1 <= 0 || w2 <= 0) continue;
      const long h = w1 * dots[i].first + w2 * dots[i].second;
      if (h == 0 || support_value(w1, w2) != h) continue;
      for (const auto& e : dots)
        if (w1 * e.first + w2 * e.second == h) keep.insert(e);
    }
  }
  if (keep.empty()) keep.insert({0, 0});

  RealPolynomial2::Terms terms;
  for (const auto& e : keep) terms[e] = p.coefficient(e.first, e.second);
  DominantPolynomial out;
  out.poly = RealPolynomial2(terms);
  out.d1 = std::max(0, out.poly.degree_in(0));
  out.d2 = std::max(0, out.poly.degree_in(1));
  out.d = std::max(0, out.poly.total_degree());
  return out;
}

RealPolynomial2 HessianLog::det_numerator() const { return n11 * n22 - n12 * n12; }

Eigen::Matrix2d HessianLog::evaluate(double y1, double y2) const {
  const double p2 = std::pow(p.evaluate(y1, y2), 2);
  Eigen::Matrix2d m;
  m(0, 0) = n11.evaluate(y1, y2) / p2;
  m(0, 1) = m(1, 0) = n12.evaluate(y1, y2) / p2;
  m(1, 1) = n22.evaluate(y1, y2) / p2;
  return m;
}

HessianLog hessian_log(const RealPolynomial2& p) {
  const RealPolynomial2 p1 = p.derivative(0), p2 = p.derivative(1);
  HessianLog h;
  h.p = p;
  h.n11 = p1 * p1 - p * p1.derivative(0);
  h.n12 = p1 * p2 - p * p1.derivative(1);
  h.n22 = p2 * p2 - p * p2.derivative(1);
  return h;
}

ClassificationReport classify(const DominantPolynomial& dp) {
  if (dp.poly.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot classify 0");
  std::vector<bool> orientations;
  if (dp.d1 > dp.d2)
    orientations = {true};
  else if (dp.d1 == dp.d2)
    orientations = {false, true};
  else
    orientations = {false};

  auto base = [&](bool swapped) {
    ClassificationReport r;
    r.swapped = swapped;
    r.d1 = swapped ? dp.d2 : dp.d1;
    r.d2 = swapped ? dp.d1 : dp.d2;
    r.d = dp.d;
    return r;
  };

  for (bool swapped : orientations) {
    const RealPolynomial2 q = swapped ? dp.poly.swapped() : dp.poly;
    const auto s = support_of(q);
    for (const auto& row : rows()) {
      if (!same_support(s, row.support)) continue;
      ClassificationReport r = base(swapped);
      r.row = row.label;
      fill_row(r, row, q);
      r.conditions.emplace_back("p_positive_far", positive_on_grid(q, {}));
      const bool ok = std::all_of(r.conditions.begin(), r.conditions.end(), [](auto& c) { return c.second; });
      r.label = ok ? row.label : Case::Invalid;
      return r;
    }
  }
  for (bool swapped : orientations) {
    const RealPolynomial2 q = swapped ? dp.poly.swapped() : dp.poly;
    const auto s = support_of(q);
    for (const auto& shape : rejected_shapes()) {
      if (!same_support(s, shape.support)) continue;
      ClassificationReport r = base(swapped);
      r.rejected_shape = shape.name;
      static const char* names[] = {"A", "B", "C", "D"};
      for (size_t i = 0; i < shape.support.size(); ++i)
        r.coefficients.emplace_back(names[i], q.coefficient(shape.support[i].first, shape.support[i].second));
      return r;
    }
  }
  throw Error(ErrorCode::UnrecognizedSupport, "no table row or known shape for " + dp.poly.to_string());
}

std::vector<double> log_grid(double lo, double hi) {
  std::vector<double> out;
  for (int e = static_cast<int>(std::floor(std::log10(lo))) - 1; e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
    for (double m : {1.0, 2.0, 5.0}) {
      const double v = m * std::pow(10.0, e);
      if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) out.push_back(v);
    }
  }
  return out;
}

bool psd_large_y(const RealPolynomial2& p, const GridOptions& grid) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "psd check of 0");
  const HessianLog h = hessian_log(p);
  const RealPolynomial2 det = h.det_numerator();
  const auto g = log_grid(grid.lo, grid.hi);
  bool psd = true;
  for (double a : g) {
    for (double b : g) {
      const Rational y1 = rational_from_double(a), y2 = rational_from_double(b);
      if (!(p.evaluate(y1, y2) > 0))
        throw Error(ErrorCode::NotPositive, "p <= 0 at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
      if (h.n11.evaluate(y1, y2) < 0 || h.n22.evaluate(y1, y2) < 0 || det.evaluate(y1, y2) < 0) psd = false;
    }
  }
  return psd;
}

CubicFactorization factor_cubic(const RealPolynomial2& p) {
  if (!p.is_homogeneous() || p.total_degree() != 3)
    throw Error(ErrorCode::InvalidDatum, "factor_cubic needs a homogeneous cubic");
  const Rational A = p.coefficient(3, 0), B = p.coefficient(2, 1), C = p.coefficient(1, 2), D = p.coefficient(0, 3);
  if (!(A > 0) || !(D > 0))
    throw Error(ErrorCode::NoRealPositiveFactor, "cubic is not positive on both axes");
  // q(x) = p(x, 1) = A x^3 + B x^2 + C x + D, a root x = -s/t < 0
  using ld = long double;
  const ld a = A.convert_to<ld>(), b = B.convert_to<ld>(), c = C.convert_to<ld>(), d = D.convert_to<ld>();
  auto q = [&](ld x) { return ((a * x + b) * x + c) * x + d; };
  auto dq = [&](ld x) { return (3 * a * x + 2 * b) * x + c; };

  std::vector<ld> candidates;
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(0, 0) = -static_cast<double>(b / a);
  companion(0, 1) = -static_cast<double>(c / a);
  companion(0, 2) = -static_cast<double>(d / a);
  companion(1, 0) = companion(2, 1) = 1.0;
  const Eigen::EigenSolver<Eigen::Matrix3d> es(companion);
  for (int i = 0; i < 3; ++i) candidates.push_back(es.eigenvalues()(i).real());
  candidates.push_back(-b / (3 * a));  // triple root
  const ld disc = 4 * b * b - 12 * a * c;  // roots of q' (double roots)
  if (disc >= 0) {
    candidates.push_back((-2 * b + std::sqrt(disc)) / (6 * a));
    candidates.push_back((-2 * b - std::sqrt(disc)) / (6 * a));
  }

  const ld scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)});
  struct Found {
    Rational root;
    double residual;
    bool simple;
  };
  std::vector<Found> found;
  for (ld x : candidates) {
    for (int it = 0; it < 200; ++it) {
      const ld g = dq(x);
      if (g == 0) break;
      const ld step = q(x) / g;
      x -= step;
      if (std::fabs(step) <= 1e-19L * (1 + std::fabs(x))) break;
    }
    if (!(x < 0) || !std::isfinite(static_cast<double>(x))) continue;
    const Rational r = rational_from_double(static_cast<double>(std::ldexp(std::round(std::ldexp(x, 60)), -60))) +
                       Rational(0);
    // exact synthetic division by (x - r)
    const Rational qa = A, qb = B + r * qa, qc = C + r * qb, rem = D + r * qc;
    const double residual = std::fabs(rem.convert_to<double>()) / static_cast<double>(scale);
    if (residual >= 1e-10) continue;
    found.push_back({r, residual, std::fabs(dq(x)) > 1e-8L * scale});
  }
  if (found.empty()) throw Error(ErrorCode::NoRealPositiveFactor, "no negative real root of p(x, 1)");
  std::sort(found.begin(), found.end(), [](const Found& u, const Found& v) {
    if (u.simple != v.simple) return u.simple;
    return u.root > v.root;
  });
  const Found& best = found.front();
  CubicFactorization f;
  f.t = A;
  f.s = -best.root * A;
  f.a = 1;
  f.b = (B + best.root * A) / A;
  f.c = (C + best.root * (B + best.root * A)) / A;
  f.residual = best.residual;
  const bool quad_positive = f.c > 0 && (f.b >= 0 || f.b * f.b < 4 * f.a * f.c);
  if (!(f.s > 0) || !quad_positive)
    throw Error(ErrorCode::NoRealPositiveFactor, "factor is not positive on the first quadrant");
  return f;
}

KSweep min_eigenvalue_on_K(const RealPolynomial2& p, int points) {
  if (!p.is_homogeneous()) throw Error(ErrorCode::InvalidDatum, "sweep over K needs a homogeneous polynomial");
  if (points < 2) throw Error(ErrorCode::InvalidDatum, "need at least two sweep points");
  const HessianLog h = hessian_log(p);
  KSweep out;
  out.points = points;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double theta = 0.5 * std::numbers::pi * k / (points - 1);
    const double y1 = std::cos(theta), y2 = std::sin(theta);
    if (!(p.evaluate(y1, y2) > 0))
      throw Error(ErrorCode::NotPositiveOnK, "p <= 0 at theta = " + std::to_string(theta));
    const Eigen::Matrix2d m = h.evaluate(y1, y2);
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (lmin < out.min_eigenvalue) {
      out.min_eigenvalue = lmin;
      out.argmin_theta = theta;
    }
  }
  return out;
}

}  // namespace wpdist

#pragma once

// Dominant polynomials and their classification into the nine candidate shapes.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "wpdist/polynomial.hpp"

namespace wpdist {

struct DominantPolynomial {
  RealPolynomial2 poly;
  int d1 = 0;
  int d2 = 0;
  int d = 0;
};

/// Keeps the monomials on the upper-right faces of the Newton polygon: every
/// dot on a face with a strictly positive normal, and the two endpoints of
/// each axis-parallel face. Faces through the origin only are ignored, so a
/// constant polynomial is its own dominant part.
DominantPolynomial dominant(const RealPolynomial2& p);

/// M(p)_ij = -d_i d_j log p = (p_i p_j - p p_ij) / p^2, kept as numerators over p^2.
struct HessianLog {
  RealPolynomial2 n11, n12, n22;
  RealPolynomial2 p;

  /// n11 n22 - n12^2, so that det M(p) = det_numerator / p^4.
  RealPolynomial2 det_numerator() const;
  Eigen::Matrix2d evaluate(double y1, double y2) const;
};

HessianLog hessian_log(const RealPolynomial2& p);

enum class Case { I, II, III, IV, V, VI, VII, VIII, IX, Invalid };

std::string case_label(Case c);

struct ClassificationReport {
  Case label = Case::Invalid;
  /// Table row matched by the support, even when its conditions fail.
  std::optional<Case> row;
  /// Name of a known non-candidate shape, e.g. "A*y2^2 + B*y1".
  std::string rejected_shape;
  bool swapped = false;  ///< y1 and y2 exchanged to reach the table's orientation
  int d1 = 0, d2 = 0, d = 0;
  std::vector<std::pair<std::string, Rational>> coefficients;
  /// Required conditions of the row, in table order, plus far-field positivity.
  std::vector<std::pair<std::string, bool>> conditions;
  /// Extra facts that the table leaves open.
  std::vector<std::pair<std::string, bool>> flags;
  bool strict = false;
  bool complete_square = false;
  bool perfect_cube = false;
  std::string subcase;  ///< "a".."d" for the homogeneous cubic row

  bool valid() const { return label != Case::Invalid; }
  bool condition(const std::string& name) const;
  bool flag(const std::string& name) const;
};

/// Throws ZeroPolynomial for p = 0 and UnrecognizedSupport for supports that
/// match neither a row nor a known rejected shape.
ClassificationReport classify(const DominantPolynomial& p);

struct GridOptions {
  double lo = 1e2;
  double hi = 1e6;
};

/// 1-2-5 sequence covering [lo, hi].
std::vector<double> log_grid(double lo, double hi);

/// M(p) ⪰ 0 at every point of the far grid, by exact minors. Throws NotPositive
/// if p <= 0 at a grid point.
bool psd_large_y(const RealPolynomial2& p, const GridOptions& grid = {});

struct CubicFactorization {
  Rational t, s;     ///< linear factor t y1 + s y2
  Rational a, b, c;  ///< quadratic factor a y1^2 + b y1 y2 + c y2^2, a = 1
  double residual = 0;
};

/// p = (t y1 + s y2)(a y1^2 + b y1 y2 + c y2^2) with t, s > 0.
CubicFactorization factor_cubic(const RealPolynomial2& p);

struct KSweep {
  double min_eigenvalue = 0;
  double argmin_theta = 0;
  int points = 0;
};

/// Smallest eigenvalue of R^2 M(p) over y = (cos θ, sin θ), θ ∈ [0, π/2].
KSweep min_eigenvalue_on_K(const RealPolynomial2& p, int points = 10001);

}  // namespace wpdist

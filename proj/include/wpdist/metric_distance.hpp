#pragma once

// Weil-Petersson metric samples, curve lengths and divergence verdicts.
//
// Convention: on the chart z_j = x_j + i y_j the metric is the Hermitian
// matrix h_ij = -4 d_i dbar_j log Q, so that a potential depending on y only
// gives h = M(p), and a tangent vector v = x' + i y' has squared length
// sum_ij h_ij v_i conj(v_j).

#include <complex>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wpdist/limiting_data.hpp"
#include "wpdist/polynomial.hpp"

namespace wpdist {

using Point = std::vector<std::complex<double>>;

enum class MetricSource { SymbolicPoly, NumericFull, ExplicitMatrix };

std::string to_string(MetricSource s);

struct MetricSample {
  Point point;
  Eigen::MatrixXcd tensor;
  MetricSource source = MetricSource::NumericFull;
};

using PotentialFn = std::function<double(const Point&)>;
using MetricField = std::function<MetricSample(const Point&)>;

/// Central differences of -log Q in the real coordinates with one Richardson
/// step; the step for x_j and y_j is rel_step * max(1, |y_j|).
MetricSample metric_from_potential(const PotentialFn& potential, const Point& z, double rel_step = 2e-3);

/// Exact evaluation of hessian_log at the rationalized y; x is ignored.
/// For a single coordinate p must not involve y2.
MetricSample metric_from_polynomial(const RealPolynomial2& p, const Point& z);

/// -4 d_i dbar_j log H(Omega, Omega) from the holomorphic derivatives of the
/// period map, no differencing.
MetricSample metric_from_expansion(const LimitingExpansion& exp, const Point& z);

MetricField potential_metric(PotentialFn potential, double rel_step = 2e-3);
MetricField polynomial_metric(RealPolynomial2 p, std::size_t coordinates = 2);
MetricField expansion_metric(LimitingExpansion exp);

/// (1/y1^2) [[1, -i e^{-y2}], [i e^{-y2}, e^{-2 y2}]], or only the first
/// diagonal entry when with_perturbation is false.
MetricField perturbation_metric(bool with_perturbation = true);

enum class CurveKind { AngularSlice, DiagonalRay, Custom };

struct CurveSpec {
  std::string id;
  CurveKind kind = CurveKind::Custom;
  double t0 = 10.0;
  double T = 1e4;
  std::function<Point(double)> position;
  std::function<Point(double)> velocity;
};

/// y_j = t for all j, x_j = x[j] (default 0).
CurveSpec diagonal_ray(std::size_t coordinates, double t0, double T, std::vector<double> x = {});
/// x_j = c_j, y_j = slope_j * t.
CurveSpec angular_slice(std::vector<double> c, std::vector<double> slope, double t0, double T);
/// y = (t, t^alpha), x = 0.
CurveSpec power_ray(double alpha, double t0, double T);
/// y = (t, slope t), x = radius (cos(w log t), sin(w log t)).
CurveSpec spiral(double slope, double radius, double w, double t0, double T);
/// t -> (C, t, -e^t, t) read as (x1, y1, x2, y2).
CurveSpec perturbation_curve(double C, double t0, double T);

/// Diagonal, y2 = y1^(1/2), y2 = y1^2, slices (t, 3t) and (2t, t), two spirals.
std::vector<CurveSpec> probe_family(double t0 = 10.0, double T = 1e4);

struct QuadratureOptions {
  int per_decade = 4;
  double rel_tol = 1e-8;
  int max_panels = 4096;
};

struct Checkpoint {
  double T = 0;
  double L = 0;
  double integrand = 0;  ///< |gamma'(T)| in the metric
};

struct LengthSeries {
  std::string curve_id;
  double t0 = 0;
  std::vector<Checkpoint> checkpoints;
};

/// Gauss-Legendre panels in log t between geometric checkpoints, halving until
/// two refinements agree to rel_tol. Throws QuadratureBlowup on a non-finite
/// or clearly negative squared speed.
LengthSeries curve_length(const MetricField& metric, const CurveSpec& curve, const QuadratureOptions& q = {});

double speed(const MetricSample& g, const Point& velocity);

enum class Verdict { DivergesLog, Bounded, Inconclusive };

std::string to_string(Verdict v);

struct FitVerdict {
  Verdict verdict = Verdict::Inconclusive;
  bool diverges_log = false;
  double c = 0;
  double b = 0;
  double residual = 0;  ///< rms residual of the log fit over the growth of L
  double sup = 0;       ///< last partial length
};

/// Needs at least 6 checkpoints spanning at least 3 decades of T
/// (InsufficientSpan otherwise).
FitVerdict divergence_fit(const LengthSeries& series);

struct AngularSliceReport {
  LengthSeries series;
  /// log|y1 - e^{-r y2} g / r| at each checkpoint, with r = 2 pi and g = 1.
  std::vector<double> comparison;
};

/// The first divisor must be infinite and the second finite.
AngularSliceReport angular_slice_length(const LimitingExpansion& exp, const CurveSpec& curve,
                                        const QuadratureOptions& q = {});

/// Length series along the perturbation curve from t0 to T.
LengthSeries perturbation_example(bool with_perturbation = true, double C = 0.0, double t0 = 1.0, double T = 600.0,
                                  const QuadratureOptions& q = {});

enum class MetricChoice { Full, Dominant };

struct CorollaryOptions {
  MetricChoice metric = MetricChoice::Full;
  double t0 = 10.0;
  double T = 1e4;
  QuadratureOptions quadrature;
};

struct ProbeResult {
  LengthSeries series;
  FitVerdict fit;
};

struct CorollaryReport {
  int D1 = 0;
  int D2 = 0;
  bool applies = false;  ///< {D1, D2} is {1, 2} or {1, 3}
  std::vector<ProbeResult> probes;
  bool all_diverge = false;
  bool all_bounded = false;
};

CorollaryReport corollary_strict_cases(const LimitingExpansion& exp, const CorollaryOptions& options = {});

/// Columns curve_id, T, L, integrand_at_T with 17 significant digits.
void write_csv(std::ostream& os, const std::vector<LengthSeries>& series);

}  // namespace wpdist

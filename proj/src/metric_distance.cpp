#include "wpdist/metric_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <boost/math/quadrature/gauss.hpp>

#include "wpdist/classifier.hpp"
#include "wpdist/errors.hpp"
#include "wpdist/potential.hpp"

namespace wpdist {

namespace {

using cd = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> y_of(const Point& z) {
  std::vector<double> y;
  for (const auto& c : z) y.push_back(c.imag());
  return y;
}

}  // namespace

std::string to_string(MetricSource s) {
  switch (s) {
    case MetricSource::SymbolicPoly: return "symbolic_poly";
    case MetricSource::NumericFull: return "numeric_full";
    case MetricSource::ExplicitMatrix: return "explicit_matrix";
  }
  return "numeric_full";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::DivergesLog: return "diverges_log";
    case Verdict::Bounded: return "bounded";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

MetricSample metric_from_potential(const PotentialFn& potential, const Point& z, double rel_step) {
  const auto r = static_cast<Eigen::Index>(z.size());
  const Eigen::Index n = 2 * r;
  Eigen::VectorXd u(n), step(n);
  for (Eigen::Index j = 0; j < r; ++j) {
    u(2 * j) = z[j].real();
    u(2 * j + 1) = z[j].imag();
    step(2 * j) = step(2 * j + 1) = rel_step * std::max(1.0, std::abs(z[j].imag()));
  }
  auto f = [&](const Eigen::VectorXd& w) {
    Point p(r);
    for (Eigen::Index j = 0; j < r; ++j) p[j] = cd(w(2 * j), w(2 * j + 1));
    const double q = potential(p);
    if (!(q > 0)) throw Error(ErrorCode::NonPositivePotential, "potential " + std::to_string(q) + " <= 0");
    return std::log(q);
  };
  const double f0 = f(u);
  auto hessian = [&](double scale) {
    Eigen::MatrixXd h(n, n);
    const Eigen::VectorXd s = scale * step;
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::VectorXd up = u, dn = u;
      up(k) += s(k);
      dn(k) -= s(k);
      h(k, k) = (f(up) - 2 * f0 + f(dn)) / (s(k) * s(k));
      for (Eigen::Index l = k + 1; l < n; ++l) {
        Eigen::VectorXd pp = u, pm = u, mp = u, mm = u;
        pp(k) += s(k), pp(l) += s(l);
        pm(k) += s(k), pm(l) -= s(l);
        mp(k) -= s(k), mp(l) += s(l);
        mm(k) -= s(k), mm(l) -= s(l);
        h(k, l) = h(l, k) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * s(k) * s(l));
      }
    }
    return h;
  };
  const Eigen::MatrixXd d2 = (4 * hessian(0.5) - hessian(1.0)) / 3;
  MetricSample out;
  out.point = z;
  out.source = MetricSource::NumericFull;
  out.tensor.resize(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      out.tensor(i, j) = -cd(d2(2 * i, 2 * j) + d2(2 * i + 1, 2 * j + 1), d2(2 * i, 2 * j + 1) - d2(2 * i + 1, 2 * j));
  return out;
}

MetricSample metric_from_polynomial(const RealPolynomial2& p, const Point& z) {
  if (z.empty() || z.size() > 2) throw Error(ErrorCode::DimensionMismatch, "one or two coordinates expected");
  if (z.size() == 1 && p.degree_in(1) > 0)
    throw Error(ErrorCode::DimensionMismatch, "polynomial involves y2 but only one coordinate is given");
  const Rational y1 = rational_from_double(z[0].imag());
  const Rational y2 = z.size() == 2 ? rational_from_double(z[1].imag()) : Rational(1);
  const Rational pv = p.evaluate(y1, y2);
  if (!(pv > 0)) throw Error(ErrorCode::NonPositivePotential, "polynomial potential <= 0");
  const HessianLog h = hessian_log(p);
  const Rational den = pv * pv;
  MetricSample out;
  out.point = z;
  out.source = MetricSource::SymbolicPoly;
  const auto r = static_cast<Eigen::Index>(z.size());
  out.tensor.resize(r, r);
  out.tensor(0, 0) = to_double(h.n11.evaluate(y1, y2) / den);
  if (r == 2) {
    out.tensor(0, 1) = out.tensor(1, 0) = to_double(h.n12.evaluate(y1, y2) / den);
    out.tensor(1, 1) = to_double(h.n22.evaluate(y1, y2) / den);
  }
  return out;
}

MetricSample metric_from_expansion(const LimitingExpansion& exp, const Point& z) {
  const std::size_t r = exp.divisor_count();
  if (z.size() != r) throw Error(ErrorCode::DimensionMismatch, "wrong number of coordinates");
  const Eigen::Index dim = exp.space().dim();
  std::vector<cd> t;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < r; ++i) {
    t.push_back(std::exp(cd(0.0, kTwoPi) * z[i]));
    m += z[i] * to_complex(exp.nilpotent(i).matrix());
  }
  const CMatrix orbit = nilpotent_exp(m);
  const CVector omega = orbit * evaluate_a(exp, t);

  std::vector<CVector> w{omega};
  for (std::size_t i = 0; i < r; ++i) {
    CVector da = CVector::Zero(dim);
    for (const auto& term : exp.terms()) {
      if (term.exponent[i] == 0) continue;
      cd mono(1.0);
      for (std::size_t k = 0; k < r; ++k) mono *= std::pow(t[k], term.exponent[k]);
      da += cd(0.0, kTwoPi * term.exponent[i]) * mono * to_complex(term.vec);
    }
    w.push_back(to_complex(exp.nilpotent(i).matrix()) * omega + orbit * da);
  }
  const CMatrix qt = to_complex(exp.space().twisted_form());
  auto pair = [&](const CVector& a, const CVector& b) { return (a.transpose() * qt * b.conjugate())(0, 0); };
  const double h0 = pair(omega, omega).real();
  if (!(h0 > 0)) throw Error(ErrorCode::NonPositivePotential, "potential " + std::to_string(h0) + " <= 0");

  MetricSample out;
  out.point = z;
  out.source = MetricSource::NumericFull;
  const auto rr = static_cast<Eigen::Index>(r);
  out.tensor.resize(rr, rr);
  for (Eigen::Index i = 0; i < rr; ++i)
    for (Eigen::Index j = 0; j < rr; ++j)
      out.tensor(i, j) = -4.0 * (pair(w[i + 1], w[j + 1]) / h0 - pair(w[i + 1], omega) * pair(omega, w[j + 1]) / (h0 * h0));
  return out;
}

MetricField potential_metric(PotentialFn potential, double rel_step) {
  return [potential = std::move(potential), rel_step](const Point& z) {
    return metric_from_potential(potential, z, rel_step);
  };
}

MetricField polynomial_metric(RealPolynomial2 p, std::size_t coordinates) {
  return [p = std::move(p), coordinates](const Point& z) {
    if (z.size() != coordinates) throw Error(ErrorCode::DimensionMismatch, "wrong number of coordinates");
    return metric_from_polynomial(p, z);
  };
}

MetricField expansion_metric(LimitingExpansion exp) {
  return [exp = std::move(exp)](const Point& z) { return metric_from_expansion(exp, z); };
}

MetricField perturbation_metric(bool with_perturbation) {
  return [with_perturbation](const Point& z) {
    if (z.size() != 2) throw Error(ErrorCode::DimensionMismatch, "two coordinates expected");
    const double y1 = z[0].imag(), y2 = z[1].imag();
    const double s = 1.0 / (y1 * y1);
    MetricSample out;
    out.point = z;
    out.source = MetricSource::ExplicitMatrix;
    out.tensor = Eigen::MatrixXcd::Zero(2, 2);
    out.tensor(0, 0) = s;
    if (with_perturbation) {
      const double e = std::exp(-y2);
      out.tensor(0, 1) = cd(0.0, -e * s);
      out.tensor(1, 0) = cd(0.0, e * s);
      out.tensor(1, 1) = e * e * s;
    }
    return out;
  };
}

CurveSpec diagonal_ray(std::size_t coordinates, double t0, double T, std::vector<double> x) {
  x.resize(coordinates, 0.0);
  CurveSpec c;
  c.id = "diagonal";
  c.kind = CurveKind::DiagonalRay;
  c.t0 = t0;
  c.T = T;
  c.position = [x](double t) {
    Point p;
    for (double xi : x) p.emplace_back(xi, t);
    return p;
  };
  c.velocity = [coordinates](double) { return Point(coordinates, cd(0.0, 1.0)); };
  return c;
}

CurveSpec angular_slice(std::vector<double> cs, std::vector<double> slope, double t0, double T) {
  if (cs.size() != slope.size()) throw Error(ErrorCode::DimensionMismatch, "slice constants and slopes differ in length");
  CurveSpec c;
  c.id = "slice";
  for (double s : slope) {
    std::ostringstream os;
    os << s;
    c.id += "-" + os.str();
  }
  c.kind = CurveKind::AngularSlice;
  c.t0 = t0;
  c.T = T;
  c.position = [cs, slope](double t) {
    Point p;
    for (std::size_t j = 0; j < cs.size(); ++j) p.emplace_back(cs[j], slope[j] * t);
    return p;
  };
  c.velocity = [slope](double) {
    Point p;
    for (double s : slope) p.emplace_back(0.0, s);
    return p;
  };
  return c;
}

CurveSpec power_ray(double alpha, double t0, double T) {
  CurveSpec c;
  std::ostringstream os;
  os << "power-" << alpha;
  c.id = os.str();
  c.t0 = t0;
  c.T = T;
  c.position = [alpha](double t) { return Point{cd(0.0, t), cd(0.0, std::pow(t, alpha))}; };
  c.velocity = [alpha](double t) { return Point{cd(0.0, 1.0), cd(0.0, alpha * std::pow(t, alpha - 1))}; };
  return c;
}

CurveSpec spiral(double slope, double radius, double w, double t0, double T) {
  CurveSpec c;
  std::ostringstream os;
  os << "spiral-" << slope << "-" << radius << "-" << w;
  c.id = os.str();
  c.t0 = t0;
  c.T = T;
  c.position = [=](double t) {
    const double phi = w * std::log(t);
    return Point{cd(radius * std::cos(phi), t), cd(radius * std::sin(phi), slope * t)};
  };
  c.velocity = [=](double t) {
    const double phi = w * std::log(t);
    const double k = radius * w / t;
    return Point{cd(-k * std::sin(phi), 1.0), cd(k * std::cos(phi), slope)};
  };
  return c;
}

CurveSpec perturbation_curve(double C, double t0, double T) {
  CurveSpec c;
  c.id = "perturbation";
  c.t0 = t0;
  c.T = T;
  c.position = [C](double t) { return Point{cd(C, t), cd(-std::exp(t), t)}; };
  c.velocity = [](double t) { return Point{cd(0.0, 1.0), cd(-std::exp(t), 1.0)}; };
  return c;
}

std::vector<CurveSpec> probe_family(double t0, double T) {
  return {diagonal_ray(2, t0, T),
          power_ray(0.5, t0, T),
          power_ray(2.0, t0, T),
          angular_slice({0.3, -0.2}, {1.0, 3.0}, t0, T),
          angular_slice({-0.4, 0.1}, {2.0, 1.0}, t0, T),
          spiral(1.0, 1.0, 1.0, t0, T),
          spiral(2.0, 3.0, 2.0, t0, T)};
}

double speed(const MetricSample& g, const Point& velocity) {
  const Eigen::Index n = g.tensor.rows();
  if (static_cast<Eigen::Index>(velocity.size()) != n) throw Error(ErrorCode::DimensionMismatch, "velocity size");
  if (!g.tensor.allFinite()) throw Error(ErrorCode::QuadratureBlowup, "non-finite metric");
  const double scale = g.tensor.diagonal().cwiseAbs().maxCoeff();
  if (scale < std::numeric_limits<double>::min()) return 0.0;
  // q = v^T h conj(v) through h = P^T L D L^* P, so that directions the metric
  // annihilates contribute exactly nothing even for huge velocities
  const Eigen::LDLT<Eigen::MatrixXcd> ldlt(g.tensor / scale);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = velocity[i];
  const Eigen::VectorXcd pv = ldlt.transpositionsP() * v;
  const Eigen::MatrixXcd lower = ldlt.matrixL();
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = k; j < n; ++j)
      if (lower(j, k) != 0.0) w(k) += lower(j, k) * pv(j);
  const Eigen::VectorXd d = ldlt.vectorD().real();
  double q = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(d(k)) <= 1e-13) continue;
    if (d(k) < 0) throw Error(ErrorCode::QuadratureBlowup, "metric is not positive semidefinite along the curve");
    if (std::norm(w(k)) == 0) continue;
    q += d(k) * std::norm(w(k));
  }
  if (!std::isfinite(q)) throw Error(ErrorCode::QuadratureBlowup, "non-finite speed");
  return std::sqrt(scale) * std::sqrt(q);
}

LengthSeries curve_length(const MetricField& metric, const CurveSpec& curve, const QuadratureOptions& q) {
  if (!(curve.t0 > 0) || !(curve.T > curve.t0)) throw Error(ErrorCode::InvalidDatum, "need 0 < t0 < T");
  if (q.per_decade < 1 || !(q.rel_tol > 0)) throw Error(ErrorCode::InvalidDatum, "bad quadrature options");
  LengthSeries out;
  out.curve_id = curve.id;
  out.t0 = curve.t0;

  auto integrand_t = [&](double t) { return speed(metric(curve.position(t)), curve.velocity(t)); };
  auto integrand_s = [&](double s) {
    const double t = std::exp(s);
    const double v = t * integrand_t(t);
    if (!std::isfinite(v)) throw Error(ErrorCode::QuadratureBlowup, "non-finite integrand at t = " + std::to_string(t));
    return v;
  };
  auto composite = [&](double a, double b, int panels) {
    double sum = 0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k)
      sum += boost::math::quadrature::gauss<double, 15>::integrate(integrand_s, a + k * h, a + (k + 1) * h);
    return sum;
  };

  const double decades = std::log10(curve.T / curve.t0);
  const int count = std::max(1, static_cast<int>(std::ceil(decades * q.per_decade - 1e-9)));
  const double s0 = std::log(curve.t0), s1 = std::log(curve.T);
  double total = 0;
  for (int k = 1; k <= count; ++k) {
    const double a = s0 + (s1 - s0) * (k - 1) / count;
    const double b = k == count ? s1 : s0 + (s1 - s0) * k / count;
    int panels = 1;
    double coarse = composite(a, b, panels);
    while (panels < q.max_panels) {
      panels *= 2;
      const double fine = composite(a, b, panels);
      const bool done = std::abs(fine - coarse) <= q.rel_tol * std::abs(fine) + 1e-14 * total + 1e-300;
      coarse = fine;
      if (done) break;
    }
    total += coarse;
    const double tk = std::exp(b);
    out.checkpoints.push_back({k == count ? curve.T : tk, total, integrand_t(k == count ? curve.T : tk)});
  }
  return out;
}

FitVerdict divergence_fit(const LengthSeries& series) {
  const auto& cp = series.checkpoints;
  if (cp.size() < 6) throw Error(ErrorCode::InsufficientSpan, "fewer than 6 checkpoints");
  if (!(series.t0 > 0) || std::log10(cp.back().T / series.t0) < 3 - 1e-9)
    throw Error(ErrorCode::InsufficientSpan, "checkpoints span less than 3 decades");

  const auto m = static_cast<Eigen::Index>(cp.size() + 1);
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd l(m);
  a(0, 0) = std::log(series.t0);
  a(0, 1) = 1;
  l(0) = 0;
  for (std::size_t k = 0; k < cp.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k + 1);
    a(i, 0) = std::log(cp[k].T);
    a(i, 1) = 1;
    l(i) = cp[k].L;
  }
  const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(l);
  FitVerdict v;
  v.c = sol(0);
  v.b = sol(1);
  v.sup = cp.back().L;
  const double rms = std::sqrt((a * sol - l).squaredNorm() / static_cast<double>(m));
  v.residual = v.sup > 0 ? rms / v.sup : std::numeric_limits<double>::infinity();

  std::vector<double> inc;
  double prev = 0;
  for (const auto& c : cp) {
    inc.push_back(c.L - prev);
    prev = c.L;
  }
  const double floor = 1e-12 * std::max(v.sup, 0.0) + 1e-300;
  bool bounded = true;
  for (std::size_t k = std::max<std::size_t>(1, inc.size() / 2); k < inc.size(); ++k)
    if (inc[k] > 0.9 * inc[k - 1] + floor) bounded = false;

  if (bounded)
    v.verdict = Verdict::Bounded;
  else if (v.c > 0 && v.residual < 0.05)
    v.verdict = Verdict::DivergesLog;
  v.diverges_log = v.verdict == Verdict::DivergesLog;
  return v;
}

AngularSliceReport angular_slice_length(const LimitingExpansion& exp, const CurveSpec& curve,
                                        const QuadratureOptions& q) {
  if (curve.kind != CurveKind::AngularSlice) throw Error(ErrorCode::InvalidDatum, "curve is not an angular slice");
  if (exp.divisor_count() != 2) throw Error(ErrorCode::InvalidDatum, "two divisors expected");
  if (classify_divisor(exp.nilpotent(0), exp.a0()).tag != DivisorTag::Infinite ||
      classify_divisor(exp.nilpotent(1), exp.a0()).tag != DivisorTag::Finite)
    throw Error(ErrorCode::InvalidDatum, "angular slices need an infinite first and a finite second divisor");
  AngularSliceReport out;
  out.series = curve_length(expansion_metric(exp), curve, q);
  for (const auto& c : out.series.checkpoints) {
    const auto y = y_of(curve.position(c.T));
    out.comparison.push_back(std::log(std::abs(y[0] - std::exp(-kTwoPi * y[1]) / kTwoPi)));
  }
  return out;
}

LengthSeries perturbation_example(bool with_perturbation, double C, double t0, double T, const QuadratureOptions& q) {
  if (!(t0 >= 1)) throw Error(ErrorCode::InvalidDatum, "t0 must be at least 1");
  auto series = curve_length(perturbation_metric(with_perturbation), perturbation_curve(C, t0, T), q);
  if (!with_perturbation) series.curve_id = "perturbation-unperturbed";
  return series;
}

CorollaryReport corollary_strict_cases(const LimitingExpansion& exp, const CorollaryOptions& options) {
  if (exp.divisor_count() != 2) throw Error(ErrorCode::InvalidDatum, "two divisors expected");
  CorollaryReport out;
  out.D1 = degree(exp.nilpotent(0), exp.a0());
  out.D2 = degree(exp.nilpotent(1), exp.a0());
  const int lo = std::min(out.D1, out.D2), hi = std::max(out.D1, out.D2);
  out.applies = lo == 1 && (hi == 2 || hi == 3);
  const MetricField metric = options.metric == MetricChoice::Full
                                 ? expansion_metric(exp)
                                 : polynomial_metric(dominant(polynomial_part(exp)).poly, 2);
  out.all_diverge = out.all_bounded = true;
  for (const auto& curve : probe_family(options.t0, options.T)) {
    ProbeResult r;
    r.series = curve_length(metric, curve, options.quadrature);
    r.fit = divergence_fit(r.series);
    out.all_diverge = out.all_diverge && r.fit.diverges_log;
    out.all_bounded = out.all_bounded && r.fit.verdict == Verdict::Bounded;
    out.probes.push_back(std::move(r));
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<LengthSeries>& series) {
  const auto old = os.precision(17);
  os << "curve_id,T,L,integrand_at_T\n";
  for (const auto& s : series)
    for (const auto& c : s.checkpoints) os << s.curve_id << ',' << c.T << ',' << c.L << ',' << c.integrand << '\n';
  os.precision(old);
}

}  // namespace wpdist

#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "wpdist/classifier.hpp"
#include "wpdist/errors.hpp"
#include "wpdist/fixtures.hpp"
#include "wpdist/metric_distance.hpp"
#include "wpdist/potential.hpp"

using namespace wpdist;
using cd = std::complex<double>;
using P = RealPolynomial2;

namespace {

double rel_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / b.norm(); }

LengthSeries synthetic(double t0, const std::vector<double>& ts, double (*f)(double)) {
  LengthSeries s;
  s.curve_id = "synthetic";
  s.t0 = t0;
  for (double t : ts) s.checkpoints.push_back({t, f(t) - f(t0), 0.0});
  return s;
}

}  // namespace

TEST_CASE("metric samples") {
  SUBCASE("constant potential") {
    const auto g = metric_from_potential([](const Point&) { return 3.0; }, {cd(0.1, 2.0), cd(0.0, 5.0)});
    CHECK(g.tensor.isZero(0.0));
  }
  SUBCASE("single variable, symbolic and differenced") {
    for (double y : {0.7, 10.0, 400.0}) {
      const Point z{cd(0.3, y)};
      const auto exact = metric_from_polynomial(P::y1(), z);
      CHECK(exact.source == MetricSource::SymbolicPoly);
      CHECK(exact.tensor(0, 0).real() * y * y == doctest::Approx(1.0).epsilon(1e-15));
      const auto fd = metric_from_potential([](const Point& p) { return p[0].imag(); }, z);
      CHECK(rel_error(fd.tensor, exact.tensor) < 1e-8);
    }
  }
  SUBCASE("two variables, symbolic and differenced") {
    const P p = P::y1() * P::y2() + P::y1() + P::y2();
    for (double y1 : {3.0, 50.0})
      for (double y2 : {7.0, 900.0}) {
        const Point z{cd(0.2, y1), cd(-0.5, y2)};
        const auto exact = metric_from_polynomial(p, z);
        const auto fd = metric_from_potential([&](const Point& q) { return p.evaluate(q[0].imag(), q[1].imag()); }, z);
        CHECK(rel_error(fd.tensor, exact.tensor) < 1e-8);
      }
    CHECK_THROWS_AS(metric_from_polynomial(p, {cd(0, 1)}), Error);
    CHECK_THROWS_AS(metric_from_polynomial(P::y1() - P::y2(), {cd(0, 1), cd(0, 2)}), Error);
  }
  SUBCASE("non-positive potential") {
    CHECK_THROWS_AS(metric_from_potential([](const Point& p) { return p[0].imag() - 5.0; }, {cd(0, 5.0)}), Error);
  }
  SUBCASE("weight one") {
    for (double y : {2.0, 30.0}) {
      const auto g = metric_from_expansion(fixture("weight1"), {cd(0.4, y)});
      CHECK(g.tensor(0, 0).real() * y * y == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("expansion metric against differences of the full potential") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> logy(1.0, 3.0), x(-0.5, 0.5);
  for (const auto& name : fixture_names()) {
    const auto exp = fixture(name);
    if (classify_divisor(exp.nilpotent(0), exp.a0()).tag == DivisorTag::Finite) continue;
    for (int k = 0; k < 5; ++k) {
      Point z;
      for (std::size_t i = 0; i < exp.divisor_count(); ++i) z.emplace_back(x(rng), std::pow(10.0, logy(rng)));
      const auto exact = metric_from_expansion(exp, z);
      const auto fd = metric_from_potential([&](const Point& p) { return full_potential(exp, p); }, z);
      CHECK_MESSAGE(rel_error(fd.tensor, exact.tensor) < 1e-6, name);
      CHECK_MESSAGE((exact.tensor - exact.tensor.adjoint()).norm() <= 1e-12 * exact.tensor.norm(), name);
      const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(exact.tensor).eigenvalues()(0);
      CHECK_MESSAGE(lmin >= -1e-9 * exact.tensor.norm(), name);
    }
  }
}

TEST_CASE("one-variable asymptotics") {
  for (const auto& name : {"weight1-decay", "sym3-decay", "sym3-maximal"}) {
    const auto exp = fixture(name);
    const int d = degree(exp.nilpotent(0), exp.a0());
    const double y = 1e3;
    const auto g = metric_from_expansion(exp, {cd(0.1, y)});
    CHECK_MESSAGE(std::abs(g.tensor(0, 0).real() * y * y - d) <= 0.05 * d, name);
  }
  for (const auto& name : {"decay-two", "type-31", "mixed"}) {
    const auto exp = fixture(name);
    double worst = 0;
    for (double y1 : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
      const auto g = metric_from_expansion(exp, {cd(0.2, y1), cd(-0.1, 5.0)});
      worst = std::max(worst, std::abs(g.tensor(0, 1)) * y1 * y1);
    }
    CHECK_MESSAGE(worst < 10.0, name);
  }
}

TEST_CASE("curve lengths") {
  SUBCASE("case (i) diagonal is exactly logarithmic") {
    const auto s = curve_length(polynomial_metric(P::y1() + P::y2()), diagonal_ray(2, 10, 1e4));
    for (const auto& c : s.checkpoints) CHECK(c.L == doctest::Approx(std::log(c.T / 10)).epsilon(1e-9));
    CHECK(std::abs(s.checkpoints.back().L - std::log(1e3)) < 1e-6);
    CHECK(s.checkpoints.size() == 12);
  }
  SUBCASE("zero metric") {
    const auto s = curve_length(potential_metric([](const Point&) { return 2.0; }), diagonal_ray(2, 1, 1e3));
    for (const auto& c : s.checkpoints) CHECK(c.L == 0.0);
    CHECK(divergence_fit(s).verdict == Verdict::Bounded);
  }
  SUBCASE("homogeneous dominant polynomials grow like sqrt(d) log T on every ray") {
    const std::vector<std::pair<P, double>> cases{
        {P::y1() + P::y2(), 1.0},
        {P::monomial(0, 2, 1) + P::monomial(1, 1, 3) + P::monomial(2, 0, 1), 2.0},
        {pow(P::y1() + P::y2(), 3), 3.0}};
    for (const auto& [p, d] : cases)
      for (const auto& curve : {diagonal_ray(2, 10, 1e4), angular_slice({0, 0}, {1, 3}, 10, 1e4)}) {
        const auto fit = divergence_fit(curve_length(polynomial_metric(p), curve));
        CHECK(fit.diverges_log);
        CHECK(fit.c == doctest::Approx(std::sqrt(d)).epsilon(1e-9));
      }
  }
  SUBCASE("case (ii) diagonal") {
    const auto p = dominant(polynomial_part(fixture("case-ii"))).poly;
    const auto fit = divergence_fit(curve_length(polynomial_metric(p), diagonal_ray(2, 10, 1e4)));
    CHECK(fit.diverges_log);
    CHECK(std::abs(fit.c - std::sqrt(2.0)) < 0.1 * std::sqrt(2.0));
    const auto ray = divergence_fit(curve_length(polynomial_metric(p), power_ray(2.0, 10, 1e4)));
    CHECK(std::abs(ray.c - std::sqrt(5.0)) < 0.1 * std::sqrt(5.0));
  }
  SUBCASE("monotone and stable under refinement") {
    const auto metric = expansion_metric(fixture("decay-two"));
    const auto coarse = curve_length(metric, spiral(2.0, 3.0, 2.0, 10, 1e3), {4, 1e-6, 4096});
    const auto fine = curve_length(metric, spiral(2.0, 3.0, 2.0, 10, 1e3), {4, 1e-11, 4096});
    double prev = 0;
    for (std::size_t k = 0; k < fine.checkpoints.size(); ++k) {
      CHECK(fine.checkpoints[k].L >= prev);
      prev = fine.checkpoints[k].L;
      CHECK(std::abs(fine.checkpoints[k].L - coarse.checkpoints[k].L) <= 1e-5 * fine.checkpoints[k].L);
    }
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(curve_length(polynomial_metric(P::y1()), diagonal_ray(2, 10, 5)), Error);
    CHECK_THROWS_AS(curve_length(polynomial_metric(P::y1() - P::y2() * P::y2()), diagonal_ray(2, 10, 1e4)), Error);
  }
}

TEST_CASE("divergence fit") {
  const std::vector<double> ts{10, 100, 1e3, 1e4, 1e5, 1e6};
  const auto log_fit = divergence_fit(synthetic(1, ts, [](double t) { return std::log(t); }));
  CHECK(log_fit.diverges_log);
  CHECK(log_fit.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_fit.residual < 1e-12);

  const auto bounded = divergence_fit(synthetic(1, ts, [](double t) { return 2 - std::exp(-t); }));
  CHECK(bounded.verdict == Verdict::Bounded);
  CHECK_FALSE(bounded.diverges_log);

  const auto sqrt_fit = divergence_fit(synthetic(1, ts, [](double t) { return std::sqrt(t); }));
  CHECK(sqrt_fit.verdict == Verdict::Inconclusive);

  CHECK_THROWS_AS(divergence_fit(synthetic(1, {10, 100, 1e3, 1e4, 1e5}, [](double t) { return std::log(t); })),
                  Error);
  CHECK_THROWS_AS(divergence_fit(synthetic(1, {2, 4, 8, 16, 32, 64, 128}, [](double t) { return std::log(t); })),
                  Error);
}

TEST_CASE("angular slices") {
  const auto mixed = fixture("mixed");
  for (const auto& curve : {angular_slice({0, 0}, {1, 1}, 10, 1e4), angular_slice({0.3, -0.2}, {1, 3}, 10, 1e4),
                            angular_slice({-0.4, 0.1}, {2, 1}, 10, 1e4)}) {
    const auto r = angular_slice_length(mixed, curve);
    CHECK(divergence_fit(r.series).diverges_log);
    CHECK(r.comparison.size() == r.series.checkpoints.size());
    CHECK(r.comparison.back() == doctest::Approx(std::log(curve.position(1e4)[0].imag())));
  }
  SUBCASE("only the finite divisor degenerates") {
    CurveSpec c = angular_slice({0, 0}, {0, 1}, 10, 1e4);
    c.position = [](double t) { return Point{cd(0, 10), cd(0, t)}; };
    CHECK(divergence_fit(angular_slice_length(mixed, c).series).verdict == Verdict::Bounded);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(angular_slice_length(mixed, diagonal_ray(2, 10, 1e4)), Error);
    CHECK_THROWS_AS(angular_slice_length(fixture("case-ii"), angular_slice({0, 0}, {1, 1}, 10, 1e4)), Error);
  }
}

TEST_CASE("perturbation example") {
  const double e1 = boost::math::expint(1, 1.0);
  boost::math::quadrature::exp_sinh<double> integrator;
  const double reference = integrator.integrate([](double u) { return std::exp(-(u + 1)) / (u + 1); });
  CHECK(reference == doctest::Approx(e1).epsilon(1e-12));

  const auto s = perturbation_example();
  CHECK(std::abs(s.checkpoints.back().L - reference) < 1e-6);
  for (std::size_t k = 1; k < s.checkpoints.size(); ++k) CHECK(s.checkpoints[k].L >= s.checkpoints[k - 1].L);
  CHECK(std::abs(perturbation_example(true, 7.5).checkpoints.back().L - reference) < 1e-6);

  const auto unperturbed = divergence_fit(perturbation_example(false, 0.0, 1.0, 1e4));
  CHECK(unperturbed.diverges_log);
  CHECK(unperturbed.c == doctest::Approx(1.0).epsilon(1e-6));

  CurveSpec frozen = perturbation_curve(0.0, 1.0, 1e4);
  frozen.position = [](double t) { return Point{cd(0, t), cd(0, 2.0)}; };
  frozen.velocity = [](double) { return Point{cd(0, 1), cd(0, 0)}; };
  CHECK(divergence_fit(curve_length(perturbation_metric(), frozen)).diverges_log);
}

TEST_CASE("corollary probes") {
  const auto t31 = corollary_strict_cases(fixture("type-31"));
  CHECK(t31.applies);
  CHECK(std::min(t31.D1, t31.D2) == 1);
  CHECK(std::max(t31.D1, t31.D2) == 3);
  CHECK(t31.probes.size() == 7);
  CHECK(t31.all_diverge);

  const auto c12 = corollary_strict_cases(fixture("case-iii"));
  CHECK(c12.applies);
  CHECK(c12.all_diverge);

  const auto ff = corollary_strict_cases(fixture("finite-finite"));
  CHECK_FALSE(ff.applies);
  CHECK(ff.all_bounded);

  CorollaryOptions dom;
  dom.metric = MetricChoice::Dominant;
  CHECK(corollary_strict_cases(fixture("type-31"), dom).all_diverge);
  CHECK_THROWS_AS(corollary_strict_cases(fixture("weight1")), Error);
}

TEST_CASE("csv") {
  LengthSeries s;
  s.curve_id = "c";
  s.t0 = 1;
  s.checkpoints.push_back({10, 1.0 / 3.0, 0.1});
  std::ostringstream os;
  write_csv(os, {s});
  CHECK(os.str() == "curve_id,T,L,integrand_at_T\nc,10,0.33333333333333331,0.10000000000000001\n");
}

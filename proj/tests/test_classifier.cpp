#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wpdist/classifier.hpp"
#include "wpdist/errors.hpp"
#include "wpdist/fixtures.hpp"
#include "wpdist/potential.hpp"

using namespace wpdist;

namespace {

using P = RealPolynomial2;

P mono(int a, int b, long c = 1) { return P::monomial(a, b, Rational(c)); }

// Table order: coefficients attach to the listed (y1 power, y2 power) dots.
P build(const std::vector<std::pair<int, int>>& dots, const std::vector<long>& coeffs) {
  P p;
  for (size_t i = 0; i < dots.size(); ++i) p += mono(dots[i].first, dots[i].second, coeffs[i]);
  return p;
}

ClassificationReport classify_poly(const P& p) { return classify(dominant(p)); }

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return make_rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("dominant dots") {
  const auto a = dominant(mono(0, 2) + mono(1, 1) + mono(1, 0));
  CHECK(a.poly == mono(0, 2) + mono(1, 1) + mono(1, 0));
  CHECK(a.d1 == 1);
  CHECK(a.d2 == 2);
  CHECK(a.d == 2);

  CHECK(dominant(mono(0, 2) + mono(0, 1) + mono(0, 0)).poly == mono(0, 2));

  const P cubic = mono(3, 0) + mono(2, 1) + mono(1, 2) + mono(0, 3);
  CHECK(dominant(cubic + mono(1, 1)).poly == cubic);

  CHECK(dominant(P::constant(5)).poly == P::constant(5));
  CHECK_THROWS_AS(dominant(P()), Error);

  SUBCASE("idempotent") {
    for (const P& p : {mono(0, 2) + mono(1, 1) + mono(1, 0) + mono(0, 0), cubic + mono(1, 1) + mono(2, 0),
                       mono(1, 1) + mono(1, 0) + mono(0, 1) + mono(0, 0)}) {
      const auto once = dominant(p);
      CHECK(dominant(once.poly).poly == once.poly);
    }
  }
  SUBCASE("dropped monomials stay bounded against the kept part") {
    const P p = mono(1, 1, 4) + mono(1, 0, 4) + mono(0, 1, 4) + mono(0, 0, 4);
    const P kept = dominant(p).poly;
    for (double u : {0.3, 1.0, 2.7}) {
      double prev = 0;
      for (double s : {1e2, 1e3, 1e4, 1e5}) {
        const double y1 = s, y2 = std::pow(s, u);
        const double ratio = 4.0 / kept.evaluate(y1, y2);
        CHECK(ratio <= 1.0);
        if (prev > 0) CHECK(ratio <= prev);
        prev = ratio;
      }
    }
  }
}

TEST_CASE("hessian of log") {
  SUBCASE("single variable") {
    const auto h = hessian_log(P::y1());
    CHECK(h.n11 == P::constant(1));
    CHECK(h.n12.is_zero());
    CHECK(h.n22.is_zero());
    CHECK(h.p * h.p == mono(2, 0));
  }

  std::mt19937 rng(7);
  SUBCASE("quadratic determinant identity") {
    for (int k = 0; k < 20; ++k) {
      const Rational A = random_rational(rng), B = random_rational(rng), C = random_rational(rng);
      const P p = A * mono(0, 2) + B * mono(1, 1) + C * mono(2, 0);
      CHECK(hessian_log(p).det_numerator() == (B * B - 4 * A * C) * (p * p));
    }
  }
  SUBCASE("cubic determinant identity, y1^3 leading") {
    for (int k = 0; k < 20; ++k) {
      const Rational A = random_rational(rng), B = random_rational(rng), C = random_rational(rng),
                     D = random_rational(rng);
      const P p = A * mono(3, 0) + B * mono(2, 1) + C * mono(1, 2) + D * mono(0, 3);
      const P q = (B * B - 3 * A * C) * mono(2, 0) + (B * C - 9 * A * D) * mono(1, 1) + (C * C - 3 * B * D) * mono(0, 2);
      CHECK(hessian_log(p).det_numerator() == Rational(2) * (p * p) * q);
    }
  }
  SUBCASE("cubic determinant identity, no y1^3 term") {
    for (int k = 0; k < 20; ++k) {
      const Rational A = random_rational(rng), B = random_rational(rng), C = random_rational(rng);
      const P p = A * mono(0, 3) + B * mono(1, 2) + C * mono(2, 1);
      const P q = (B * B - 3 * A * C) * mono(0, 2) + B * C * mono(1, 1) + C * C * mono(2, 0);
      CHECK(hessian_log(p).det_numerator() == Rational(2) * (p * p) * q);
    }
  }
  SUBCASE("finite differences") {
    std::uniform_real_distribution<double> pos(0.5, 20.0);
    const std::vector<P> polys{mono(0, 1) + mono(1, 0), mono(0, 1) + mono(1, 1) + mono(1, 0),
                               mono(0, 2) + mono(1, 1, 3) + mono(2, 0),
                               build({{0, 3}, {1, 2}, {2, 1}, {3, 0}}, {1, 4, 5, 2}),
                               build({{0, 3}, {1, 2}, {2, 1}, {2, 0}}, {2, 1, 3, 1})};
    for (const P& p : polys) {
      const auto h = hessian_log(p);
      for (int k = 0; k < 20; ++k) {
        const double y1 = pos(rng), y2 = pos(rng);
        const auto fd = oracle::fd_hessian([&](double a, double b) { return -std::log(p.evaluate(a, b)); }, y1, y2);
        const Eigen::Matrix2d exact = h.evaluate(y1, y2);
        CHECK((fd - exact).norm() <= 1e-6 * exact.norm());
      }
    }
  }
}

TEST_CASE("table rows") {
  struct Case_ {
    Case row;
    std::vector<std::pair<int, int>> dots;
    std::vector<long> good, bad;
  };
  const std::vector<Case_> table{
      {Case::I, {{0, 1}, {1, 0}}, {1, 1}, {1, -1}},
      {Case::II, {{0, 1}, {1, 1}, {1, 0}}, {1, 1, 1}, {1, -1, 1}},
      {Case::III, {{0, 2}, {1, 1}, {1, 0}}, {1, 2, 1}, {1, -2, 1}},
      {Case::IV, {{0, 2}, {1, 2}, {1, 0}}, {1, 1, 3}, {1, 1, -3}},
      {Case::V, {{0, 3}, {1, 2}, {1, 0}}, {2, 1, 1}, {2, -1, 1}},
      {Case::VI, {{0, 2}, {1, 1}, {2, 0}}, {1, 3, 1}, {1, 1, 1}},
      {Case::VII, {{0, 2}, {1, 2}, {2, 1}, {2, 0}}, {1, 1, 1, 1}, {1, 1, -1, 1}},
      {Case::VIII, {{0, 3}, {1, 2}, {2, 1}, {2, 0}}, {1, 3, 1, 1}, {1, 1, 1, 1}},
      {Case::IX, {{0, 3}, {1, 2}, {2, 1}, {3, 0}}, {1, 4, 5, 2}, {1, 1, 1, 1}},
  };
  for (const auto& c : table) {
    const auto good = classify_poly(build(c.dots, c.good));
    CHECK_MESSAGE(good.label == c.row, case_label(c.row));
    CHECK(good.valid());
    CHECK(good.row == c.row);
    const auto bad = classify_poly(build(c.dots, c.bad));
    CHECK_MESSAGE(bad.label == Case::Invalid, case_label(c.row));
    CHECK(bad.row == c.row);
  }
}

TEST_CASE("classification examples") {
  const auto i = classify_poly(mono(0, 1) + mono(1, 0));
  CHECK(i.label == Case::I);
  CHECK(i.coefficients.size() == 2);

  const auto vi = classify_poly(mono(0, 2) + mono(1, 1, 3) + mono(2, 0));
  CHECK(vi.label == Case::VI);
  CHECK(vi.strict);
  CHECK(vi.condition("B2_minus_4AC_nonneg"));

  const auto bad = classify_poly(mono(0, 2) + mono(1, 1) + mono(2, 0));
  CHECK(bad.label == Case::Invalid);
  CHECK_FALSE(bad.condition("B2_minus_4AC_nonneg"));

  const auto square = classify_poly(mono(0, 2) + mono(1, 1, 2) + mono(2, 0));
  CHECK(square.valid());
  CHECK(square.complete_square);
  CHECK_FALSE(square.strict);

  SUBCASE("orientation") {
    const auto swapped = classify_poly(mono(1, 0) + mono(1, 1) + mono(0, 1));
    CHECK(swapped.label == Case::II);
    const auto iii = classify_poly(mono(2, 0) + mono(1, 1) + mono(0, 1));
    CHECK(iii.label == Case::III);
    CHECK(iii.swapped);
    CHECK(iii.d1 == 1);
    CHECK(iii.d2 == 2);
  }
  SUBCASE("homogeneous cubic subcases") {
    CHECK(classify_poly(build({{0, 3}, {1, 2}, {2, 1}, {3, 0}}, {1, 4, 5, 2})).subcase == "a");
    const auto cube = classify_poly(build({{0, 3}, {1, 2}, {2, 1}, {3, 0}}, {1, 3, 3, 1}));
    CHECK(cube.valid());
    CHECK(cube.perfect_cube);
    CHECK(cube.subcase == "d");
    const auto c = classify_poly(build({{0, 3}, {1, 2}, {2, 1}, {3, 0}}, {2, 6, 6, 1}));
    CHECK(c.valid());
    CHECK(c.subcase == "c");
  }
  SUBCASE("sign flags of the y1^2 y2 coefficient") {
    const auto r = classify_poly(build({{0, 3}, {1, 2}, {2, 1}, {2, 0}}, {1, 3, 1, 1}));
    CHECK(r.flag("B_nonzero"));
    CHECK(r.flag("B_positive"));
    const auto n = classify_poly(build({{0, 3}, {1, 2}, {2, 1}, {2, 0}}, {1, -3, 1, 1}));
    CHECK(n.flag("B_nonzero"));
    CHECK_FALSE(n.flag("B_positive"));
  }
  SUBCASE("rejected shapes and novel supports") {
    const auto r = classify_poly(mono(0, 2) + mono(1, 0));
    CHECK(r.label == Case::Invalid);
    CHECK_FALSE(r.rejected_shape.empty());
    CHECK_FALSE(r.row.has_value());
    CHECK(classify_poly(mono(0, 3) + mono(3, 0)).label == Case::Invalid);
    CHECK_THROWS_AS(classify_poly(mono(4, 0) + mono(0, 1)), Error);
    CHECK_THROWS_AS(classify(DominantPolynomial{}), Error);
  }
}

TEST_CASE("semi-definiteness far out") {
  CHECK(psd_large_y(mono(0, 1) + mono(1, 1) + mono(1, 0)));
  CHECK(psd_large_y(pow(P::y1() + P::y2(), 3)));
  CHECK_FALSE(psd_large_y(mono(0, 2) + mono(1, 0)));
  CHECK_FALSE(psd_large_y(mono(0, 3) + mono(1, 1) + mono(1, 0)));
  CHECK_FALSE(psd_large_y(mono(0, 3) + mono(1, 0)));
  CHECK_THROWS_AS(psd_large_y(mono(0, 1) - mono(1, 0)), Error);
  const auto g = log_grid(1e2, 1e6);
  CHECK(g.front() == 100.0);
  CHECK(g.back() == 1e6);
  CHECK(g.size() == 13);
}

TEST_CASE("cubic factorization") {
  const auto check_expansion = [](const P& p, const CubicFactorization& f) {
    const P lin = f.t * P::y1() + f.s * P::y2();
    const P quad = f.a * mono(2, 0) + f.b * mono(1, 1) + f.c * mono(0, 2);
    const P diff = lin * quad - p;
    for (const auto& [e, c] : diff.terms()) CHECK(std::abs(to_double(c)) < 1e-10);
  };
  const P a = (P::y1() + P::y2()) * (mono(2, 0) + mono(0, 2));
  const auto fa = factor_cubic(a);
  CHECK(fa.t == 1);
  CHECK(fa.s == 1);
  CHECK(fa.a == 1);
  CHECK(fa.b == 0);
  CHECK(fa.c == 1);
  check_expansion(a, fa);

  const P b = mono(3, 0) + mono(0, 3);
  const auto fb = factor_cubic(b);
  CHECK(fb.b == -1);
  CHECK(fb.c == 1);
  check_expansion(b, fb);

  const P c = build({{3, 0}, {2, 1}, {1, 2}, {0, 3}}, {2, 5, 4, 1});
  const auto fc = factor_cubic(c);
  CHECK(to_double(fc.s / fc.t) == doctest::Approx(0.5).epsilon(1e-12));
  check_expansion(c, fc);

  const auto fd = factor_cubic(pow(P::y1() + P::y2(), 3));
  check_expansion(pow(P::y1() + P::y2(), 3), fd);

  CHECK_THROWS_AS(factor_cubic(mono(3, 0) - mono(0, 3)), Error);
  CHECK_THROWS_AS(factor_cubic(mono(2, 0) + mono(0, 2)), Error);
}

TEST_CASE("eigenvalues on the quarter circle") {
  const auto round = min_eigenvalue_on_K(mono(2, 0) + mono(0, 2));
  CHECK(round.points == 10001);
  CHECK(round.min_eigenvalue == doctest::Approx(-2.0).epsilon(1e-9));

  const auto strict = min_eigenvalue_on_K(mono(2, 0) + mono(1, 1, 3) + mono(0, 2));
  CHECK(strict.min_eigenvalue > 0.1);

  const auto square = min_eigenvalue_on_K(mono(2, 0) + mono(1, 1, 2) + mono(0, 2));
  CHECK(std::abs(square.min_eigenvalue) < 1e-12);

  CHECK_THROWS_AS(min_eigenvalue_on_K(mono(2, 0) - mono(0, 2)), Error);
}

TEST_CASE("classification of fixtures") {
  for (const auto& name : fixture_names()) {
    const auto exp = fixture(name);
    if (exp.divisor_count() != 2) continue;
    const auto p = polynomial_part(exp);
    if (p.degree_in(0) < 1 || p.degree_in(1) < 1) continue;
    const auto r = classify(dominant(p));
    CHECK_MESSAGE(r.valid(), name);
    if (r.subcase == "b") CHECK_MESSAGE(r.strict, name);
  }
  CHECK(classify(dominant(polynomial_part(fixture("case-vi")))).label == Case::VI);
  CHECK(classify(dominant(polynomial_part(fixture("case-ix")))).label == Case::IX);
  CHECK(classify(dominant(polynomial_part(fixture("case-ix-cube")))).perfect_cube);
}

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "wpdist/fixtures.hpp"
#include "wpdist/potential.hpp"

using namespace wpdist;
using cd = std::complex<double>;

TEST_CASE("polynomial part examples") {
  const auto w1 = fixture("weight1");
  CHECK(polynomial_part(w1) == RealPolynomial2::monomial(1, 0, 2));

  const auto finite = fixture("rank-one-finite");
  const auto p = polynomial_part(finite);
  CHECK(p.total_degree() == 0);
  CHECK(p.coefficient(0, 0) > 0);

  const auto t11 = product_fixture({{1, 0, 0}, {0, 1, 0}});
  const auto q = polynomial_part(t11);
  CHECK(q.coefficient(1, 1) != 0);
  CHECK(q.coefficient(2, 0) == 0);
  CHECK(q.coefficient(0, 2) == 0);
  CHECK(q == RealPolynomial2::monomial(1, 1, 4));

  // product fixtures realise the product of their linear forms
  const auto ii = polynomial_part(fixture("case-ii"));
  const auto expected = Rational(4) * ((RealPolynomial2::y1() + RealPolynomial2::constant(1)) *
                                       (RealPolynomial2::y2() + RealPolynomial2::constant(2)));
  CHECK(ii == expected);
}

TEST_CASE("non-real coefficients are rejected") {
  // An imaginary multiple of the weight-one nilpotent breaks the reality of the expansion.
  const auto w1 = weight1_string();
  const NilpotentOperator n(GMatrix(Gaussian::i() * w1.nilpotents[0].matrix()));
  LimitingExpansion exp(w1.space, {n}, unit(2, 0));
  CHECK_THROWS_AS(polynomial_part(exp), Error);
}

TEST_CASE("one-variable observation") {
  const auto finite = one_variable_degree_check(fixture("rank-one-finite"));
  CHECK(finite.deg == 0);
  const auto sym3 = one_variable_degree_check(fixture("sym3-maximal"));
  CHECK(sym3.deg == 3);
  CHECK(sym3.leading_positive);
  const auto w1 = one_variable_degree_check(fixture("weight1"));
  CHECK(w1.deg == 1);
  CHECK(w1.leading_positive);
}

TEST_CASE("degrees, isometry identity and leading signs on every fixture") {
  for (const auto& name : fixture_names()) {
    const auto exp = fixture(name);
    const auto p = polynomial_part(exp);
    CHECK_MESSAGE(p.degree_in(0) == degree(exp.nilpotent(0), exp.a0()), name);
    if (exp.divisor_count() == 2) {
      CHECK_MESSAGE(p.degree_in(1) == degree(exp.nilpotent(1), exp.a0()), name);
      const int d1 = p.degree_in(0);
      bool any_positive = false;
      bool any_negative = false;
      for (const auto& [e, c] : p.terms()) {
        if (e.first != d1) continue;
        any_positive = any_positive || c > 0;
        any_negative = any_negative || c < 0;
      }
      CHECK_MESSAGE(any_positive, name);
      CHECK_FALSE_MESSAGE(any_negative, name);
    } else {
      CHECK_MESSAGE(p.degree_in(1) <= 0, name);
    }
    CHECK_MESSAGE(p == one_sided_polynomial_part(exp), name);
  }
}

TEST_CASE("full potential") {
  const auto w1 = fixture("weight1");
  for (double y : {0.5, 3.0, 40.0}) {
    const double v = full_potential(w1, {cd(0.25, y)});
    CHECK(v == doctest::Approx(2 * y).epsilon(1e-14));
  }
  CHECK_THROWS_AS(full_potential(w1, {cd(0.0, -1.0)}), Error);

  SUBCASE("polynomial part ignores the real parts") {
    const auto exp = fixture("decay-two");
    const auto a = split_potential(exp, {cd(0.1, 2.0), cd(0.4, 3.0)});
    const auto b = split_potential(exp, {cd(1.1, 2.0), cd(0.4, 3.0)});
    CHECK(a.poly == doctest::Approx(b.poly).epsilon(1e-13));
    CHECK(a.full == doctest::Approx(b.full).epsilon(1e-12));
  }

  SUBCASE("one-variable tail decays like exp(-2 pi y)") {
    const auto exp = fixture("weight1-decay");
    std::vector<double> ys{5, 10, 15, 20}, tails;
    for (double y : ys) {
      const auto s = split_potential(exp, {cd(0.0, y)});
      CHECK(std::abs(s.full - (s.poly + s.p2)) <= 1e-12 * s.full);
      CHECK(s.p1 == 0.0);
      CHECK(s.remainder == 0.0);
      tails.push_back(s.p2);
    }
    const double slope = log_linear_fit(ys, tails).first;
    CHECK(slope <= -2 * std::numbers::pi * 0.95);
    CHECK(slope == doctest::Approx(-2 * std::numbers::pi).epsilon(0.05));
  }
}

TEST_CASE("decay split") {
  const std::vector<Ray> rays{{0, 0, 1, 1}, {0.3, -0.2, 1, 2}, {0.1, 0.7, 3, 1}};

  SUBCASE("no terms") {
    const auto r = decay_split_verify(fixture("case-ii"), rays);
    CHECK(r.verified);
    for (const auto& ray : r.rays) CHECK(ray.identically_zero);
  }
  SUBCASE("single t1 term feeds p2 only") {
    const auto base = fixture("case-ii");
    const GVector v = Gaussian(Rational(0), make_rational(1, 10)) * GVector(base.nilpotent(1).matrix() * base.a0());
    LimitingExpansion exp(base.space(), base.nilpotents(), base.a0(), {{{1, 0}, v}});
    const auto r = decay_split_verify(exp, rays);
    CHECK(r.verified);
    for (const auto& ray : r.rays) CHECK(ray.identically_zero);
    const auto s = split_potential(exp, {cd(0.0, 1.0), cd(0.0, 1.0)});
    CHECK(s.p2 != 0.0);
    CHECK(s.p1 == 0.0);
  }
  SUBCASE("generic terms") {
    const auto r = decay_split_verify(fixture("decay-two"), rays);
    CHECK(r.verified);
    for (const auto& ray : r.rays) {
      CHECK_FALSE(ray.identically_zero);
      CHECK(ray.rate >= 2 * std::numbers::pi * 0.95);
      CHECK(ray.derivative_rate >= 2 * std::numbers::pi * 0.95);
      CHECK(ray.consistency < 1e-12);
    }
  }
  SUBCASE("span too short") {
    DecayOptions o;
    o.m_hi = 5.5;
    CHECK_THROWS_AS(decay_split_verify(fixture("decay-two"), rays, o), Error);
  }
}

#include "doctest.h"

#include <limits>

#include "wpdist/classifier.hpp"
#include "wpdist/errors.hpp"
#include "wpdist/fixtures.hpp"
#include "wpdist/metric_distance.hpp"
#include "wpdist/potential.hpp"
#include "wpdist/serialize.hpp"

using namespace wpdist;

namespace {

template <class T, class Load>
void check_round_trip(const T& value, Load load) {
  const std::string once = dump(to_json(value));
  const std::string twice = dump(to_json(load(parse_json(once))));
  CHECK(once == twice);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidDatum;
}

}  // namespace

TEST_CASE("scalars") {
  CHECK(rational_from_json(parse_json(R"({"num": -3, "den": 6})")) == make_rational(-1, 2));
  CHECK(rational_from_json(parse_json("7")) == Rational(7));
  const Rational big = Rational("123456789012345678901234567890") / Rational(7);
  CHECK(rational_to_json(big)["num"].is_string());
  CHECK(rational_from_json(rational_to_json(big)) == big);
  check_round_trip(Gaussian(make_rational(2, 3), make_rational(-5, 7)), gaussian_from_json);
  CHECK(code_of([] { rational_from_json(parse_json(R"({"num": 1, "den": 0})")); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { rational_from_json(parse_json(R"({"num": 1})")); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { gaussian_from_json(parse_json(R"("x")")); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { parse_json("{"); }) == ErrorCode::ParseError);
}

TEST_CASE("linear algebra") {
  const auto exp = fixture("sym3-maximal");
  check_round_trip(exp.a0(), vector_from_json);
  check_round_trip(exp.nilpotent(0).matrix(), matrix_from_json);
  const auto w = weight_filtration(exp.nilpotent(0), 3);
  check_round_trip(w, increasing_filtration_from_json);
  CHECK(increasing_filtration_from_json(to_json(w)) == w);
  check_round_trip(*exp.hodge(), decreasing_filtration_from_json);
  CHECK(code_of([] { const Json g = to_json(Gaussian(1));
                  matrix_from_json(Json{{g, g}, {g}}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("every fixture round-trips") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto exp = fixture(name);
    check_round_trip(exp, expansion_from_json);
    const auto back = expansion_from_json(to_json(exp));
    CHECK(polynomial_part(back) == polynomial_part(exp));
    for (std::size_t i = 0; i < exp.divisor_count(); ++i)
      check_round_trip(classify_divisor(exp.nilpotent(i), exp.a0()), divisor_class_from_json);
  }
}

TEST_CASE("datum schema errors") {
  Json j = to_json(fixture("case-i"));
  Json missing = j;
  missing.erase("a0");
  CHECK(code_of([&] { expansion_from_json(missing); }) == ErrorCode::SchemaError);
  Json short_a0 = j;
  short_a0["a0"].erase(0);
  CHECK(code_of([&] { expansion_from_json(short_a0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("classifier results") {
  for (const auto& name : {"case-i", "case-viii", "case-ix", "type-31"}) {
    CAPTURE(name);
    const auto p = polynomial_part(fixture(name));
    check_round_trip(p, polynomial_from_json);
    check_round_trip(classify(dominant(p)), classification_from_json);
  }
  const auto bad = RealPolynomial2::y1() - RealPolynomial2::y2();
  check_round_trip(classify(dominant(bad)), classification_from_json);

  const RealPolynomial2 cubic({{{3, 0}, 1}, {{2, 1}, 4}, {{1, 2}, 5}, {{0, 3}, 2}});
  check_round_trip(factor_cubic(cubic), cubic_factorization_from_json);
  check_round_trip(min_eigenvalue_on_K(cubic, 101), ksweep_from_json);
}

TEST_CASE("numeric results") {
  const auto exp = fixture("case-iii");
  const auto field = expansion_metric(exp);
  check_round_trip(field({{0.1, 20.0}, {0.3, 40.0}}), metric_sample_from_json);

  const auto series = curve_length(field, diagonal_ray(2, 10, 1e4));
  check_round_trip(series, length_series_from_json);
  check_round_trip(divergence_fit(series), fit_from_json);

  FitVerdict v;
  v.verdict = Verdict::Bounded;
  v.sup = std::numeric_limits<double>::infinity();
  const Json jv = to_json(v);
  CHECK(jv["sup"].is_null());
  CHECK(std::isinf(fit_from_json(jv).sup));

  CorollaryOptions o;
  o.T = 1e3;
  o.t0 = 1;
  check_round_trip(corollary_strict_cases(fixture("case-i"), o), corollary_from_json);
}

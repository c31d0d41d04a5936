#pragma once

// JSON schema shared by the library and the command line. Rationals are
// {num, den} integer pairs (decimal strings once they leave the int64 range),
// Gaussian entries are {re_num, re_den, im_num, im_den}, matrices are
// row-major arrays of rows.

#include <string>
#include <type_traits>

#include <json.hpp>

#include "wpdist/classifier.hpp"
#include "wpdist/hodge_core.hpp"
#include "wpdist/limiting_data.hpp"
#include "wpdist/metric_distance.hpp"
#include "wpdist/polynomial.hpp"

namespace wpdist {

using Json = nlohmann::ordered_json;

/// Throws ParseError on malformed text.
Json parse_json(const std::string& text);
std::string dump(const Json& j);

Json rational_to_json(const Rational& q);
/// Exact-type match only, so other overloads never probe conversions to Rational.
template <class R, std::enable_if_t<std::is_same_v<R, Rational>, int> = 0>
Json to_json(const R& q) {
  return rational_to_json(q);
}
Rational rational_from_json(const Json& j);

Json to_json(const Gaussian& g);
Gaussian gaussian_from_json(const Json& j);

Json to_json(const GVector& v);
GVector vector_from_json(const Json& j);

Json to_json(const GMatrix& m);
GMatrix matrix_from_json(const Json& j);

Json to_json(const GSubspace& s);
GSubspace subspace_from_json(const Json& j);

Json to_json(const IncreasingFiltration& w);
IncreasingFiltration increasing_filtration_from_json(const Json& j);

Json to_json(const DecreasingFiltration& f);
DecreasingFiltration decreasing_filtration_from_json(const Json& j);

Json to_json(const LimitingExpansion& exp);
LimitingExpansion expansion_from_json(const Json& j);

Json to_json(const DivisorClass& c);
DivisorClass divisor_class_from_json(const Json& j);

Json to_json(const RealPolynomial2& p);
RealPolynomial2 polynomial_from_json(const Json& j);

Json to_json(const ClassificationReport& r);
ClassificationReport classification_from_json(const Json& j);

Json to_json(const CubicFactorization& f);
CubicFactorization cubic_factorization_from_json(const Json& j);

Json to_json(const KSweep& k);
KSweep ksweep_from_json(const Json& j);

Json to_json(const MetricSample& g);
MetricSample metric_sample_from_json(const Json& j);

Json to_json(const LengthSeries& s);
LengthSeries length_series_from_json(const Json& j);

Json to_json(const FitVerdict& v);
FitVerdict fit_from_json(const Json& j);

Json to_json(const CorollaryReport& r);
CorollaryReport corollary_from_json(const Json& j);

}  // namespace wpdist

#include "wpdist/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "wpdist/errors.hpp"

namespace wpdist {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  return j;
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<int>();
}

bool as_bool(const Json& j, const char* what) {
  if (!j.is_boolean()) schema(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double as_real(const Json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  return j.get<double>();
}

Json integer(const BigInt& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return Json(n.convert_to<std::int64_t>());
  return Json(n.str());
}

BigInt integer_from(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      schema(std::string(what) + " is not an integer string");
    return BigInt(s);
  }
  schema(std::string(what) + " must be an integer");
}

Rational ratio(const Json& num, const Json& den, const char* what) {
  const BigInt d = integer_from(den, what);
  if (d == 0) schema(std::string(what) + " has a zero denominator");
  return Rational(integer_from(num, what)) / Rational(d);
}

Case case_from_label(const std::string& s) {
  for (Case c : {Case::I, Case::II, Case::III, Case::IV, Case::V, Case::VI, Case::VII, Case::VIII, Case::IX,
                 Case::Invalid})
    if (case_label(c) == s) return c;
  schema("unknown case label '" + s + "'");
}

Json named_flags(const std::vector<std::pair<std::string, bool>>& v) {
  Json j = Json::object();
  for (const auto& [k, b] : v) j[k] = b;
  return j;
}

std::vector<std::pair<std::string, bool>> flags_from(const Json& j, const char* what) {
  if (!j.is_object()) schema(std::string(what) + " must be an object");
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& [k, v] : j.items()) out.emplace_back(k, as_bool(v, what));
  return out;
}

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::DivergesLog, Verdict::Bounded, Verdict::Inconclusive})
    if (to_string(v) == s) return v;
  schema("unknown verdict '" + s + "'");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json rational_to_json(const Rational& q) {
  return Json{{"num", integer(boost::multiprecision::numerator(q))},
              {"den", integer(boost::multiprecision::denominator(q))}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return ratio(j, Json(1), "rational");
  return ratio(field(j, "num"), field(j, "den"), "rational");
}

Json to_json(const Gaussian& g) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  return Json{{"re_num", integer(numerator(g.real()))},
              {"re_den", integer(denominator(g.real()))},
              {"im_num", integer(numerator(g.imag()))},
              {"im_den", integer(denominator(g.imag()))}};
}

Gaussian gaussian_from_json(const Json& j) {
  return {ratio(field(j, "re_num"), field(j, "re_den"), "real part"),
          ratio(field(j, "im_num"), field(j, "im_den"), "imaginary part")};
}

Json to_json(const GVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(to_json(v(i)));
  return j;
}

GVector vector_from_json(const Json& j) {
  array(j, "vector");
  GVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = gaussian_from_json(j[i]);
  return v;
}

Json to_json(const GMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) j.push_back(to_json(GVector(m.row(r).transpose())));
  return j;
}

GMatrix matrix_from_json(const Json& j) {
  array(j, "matrix");
  if (j.empty()) schema("matrix has no rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(array(j[0], "matrix row").size());
  GMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const GVector row = vector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
    m.row(r) = row.transpose();
  }
  return m;
}

Json to_json(const GSubspace& s) {
  Json basis = Json::array();
  for (Eigen::Index c = 0; c < s.dim(); ++c) basis.push_back(to_json(GVector(s.basis().col(c))));
  return Json{{"ambient", s.ambient_dim()}, {"dim", s.dim()}, {"basis", basis}};
}

GSubspace subspace_from_json(const Json& j) {
  const int ambient = as_int(field(j, "ambient"), "ambient");
  const int dim = as_int(field(j, "dim"), "dim");
  const Json& basis = array(field(j, "basis"), "basis");
  if (ambient < 0 || dim < 0 || static_cast<int>(basis.size()) != dim) schema("subspace dim does not match its basis");
  if (dim == 0) return GSubspace::zero(ambient);
  GMatrix m(ambient, dim);
  for (int c = 0; c < dim; ++c) {
    const GVector v = vector_from_json(basis[static_cast<std::size_t>(c)]);
    if (v.size() != ambient) throw Error(ErrorCode::DimensionMismatch, "basis vector of wrong length");
    m.col(c) = v;
  }
  GSubspace s(m);
  if (s.dim() != dim) schema("subspace basis is linearly dependent");
  return s;
}

Json to_json(const IncreasingFiltration& w) {
  Json levels = Json::array();
  for (int l = w.lowest(); l <= w.highest(); ++l) {
    Json level = to_json(w[l]);
    level["index"] = l;
    level["graded_dim"] = w.graded_dim(l);
    levels.push_back(level);
  }
  return Json{{"lowest", w.lowest()}, {"highest", w.highest()}, {"levels", levels}};
}

IncreasingFiltration increasing_filtration_from_json(const Json& j) {
  const int lowest = as_int(field(j, "lowest"), "lowest");
  const Json& levels = array(field(j, "levels"), "levels");
  std::vector<GSubspace> subspaces;
  for (const auto& l : levels) subspaces.push_back(subspace_from_json(l));
  return IncreasingFiltration(lowest, subspaces);
}

Json to_json(const DecreasingFiltration& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back(to_json(p));
  return pieces;
}

DecreasingFiltration decreasing_filtration_from_json(const Json& j) {
  array(j, "hodge filtration");
  std::vector<GSubspace> pieces;
  for (const auto& p : j) pieces.push_back(subspace_from_json(p));
  return DecreasingFiltration(pieces);
}

Json to_json(const LimitingExpansion& exp) {
  Json nilpotents = Json::array();
  for (const auto& n : exp.nilpotents()) nilpotents.push_back(to_json(n.matrix()));
  Json terms = Json::array();
  for (const auto& t : exp.terms()) terms.push_back(Json{{"I", t.exponent}, {"vec", to_json(t.vec)}});
  Json j{{"weight", exp.space().weight()},
         {"space", Json{{"dim", exp.space().dim()}, {"Q", to_json(exp.space().form())}}},
         {"nilpotents", nilpotents},
         {"a0", to_json(exp.a0())},
         {"terms", terms},
         {"truncation_order", exp.truncation_order()}};
  if (exp.hodge()) j["hodge"] = to_json(*exp.hodge());
  return j;
}

LimitingExpansion expansion_from_json(const Json& j) {
  const int weight = as_int(field(j, "weight"), "weight");
  const Json& space = field(j, "space");
  const int dim = as_int(field(space, "dim"), "space.dim");
  const GMatrix q = matrix_from_json(field(space, "Q"));
  if (q.rows() != dim || q.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "Q is not dim x dim");
  std::vector<NilpotentOperator> nilpotents;
  for (const auto& n : array(field(j, "nilpotents"), "nilpotents")) {
    const GMatrix m = matrix_from_json(n);
    if (m.rows() != dim || m.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "nilpotent is not dim x dim");
    nilpotents.emplace_back(m);
  }
  const GVector a0 = vector_from_json(field(j, "a0"));
  if (a0.size() != dim) throw Error(ErrorCode::DimensionMismatch, "a0 has the wrong length");
  std::vector<ExpansionTerm> terms;
  if (j.contains("terms")) {
    for (const auto& t : array(j["terms"], "terms")) {
      ExpansionTerm term;
      for (const auto& e : array(field(t, "I"), "I")) term.exponent.push_back(as_int(e, "I entry"));
      term.vec = vector_from_json(field(t, "vec"));
      if (term.vec.size() != dim) throw Error(ErrorCode::DimensionMismatch, "term vector has the wrong length");
      terms.push_back(std::move(term));
    }
  }
  const int truncation = j.contains("truncation_order") ? as_int(j["truncation_order"], "truncation_order") : -1;
  std::optional<DecreasingFiltration> hodge;
  if (j.contains("hodge")) hodge = decreasing_filtration_from_json(j["hodge"]);
  return LimitingExpansion(PolarizedSpace(weight, q), std::move(nilpotents), a0, std::move(terms), truncation,
                           std::move(hodge));
}

Json to_json(const DivisorClass& c) {
  return Json{{"tag", c.tag == DivisorTag::Finite ? "Finite" : "Infinite"}, {"degree", c.degree}};
}

DivisorClass divisor_class_from_json(const Json& j) {
  const std::string tag = as_string(field(j, "tag"), "tag");
  if (tag != "Finite" && tag != "Infinite") schema("tag must be Finite or Infinite");
  return {tag == "Finite" ? DivisorTag::Finite : DivisorTag::Infinite, as_int(field(j, "degree"), "degree")};
}

Json to_json(const RealPolynomial2& p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Json monomials = Json::array();
  for (const auto& [e, c] : p.terms())
    monomials.push_back(Json{{"exp", {e.first, e.second}}, {"num", integer(numerator(c))}, {"den", integer(denominator(c))}});
  return Json{{"monomials", monomials}};
}

RealPolynomial2 polynomial_from_json(const Json& j) {
  RealPolynomial2 p;
  for (const auto& m : array(field(j, "monomials"), "monomials")) {
    const Json& e = array(field(m, "exp"), "exp");
    if (e.size() != 2) schema("exp must have two entries");
    const int a = as_int(e[0], "exponent"), b = as_int(e[1], "exponent");
    if (a < 0 || b < 0) schema("negative exponent");
    p += RealPolynomial2::monomial(a, b, ratio(field(m, "num"), field(m, "den"), "coefficient"));
  }
  return p;
}

Json to_json(const ClassificationReport& r) {
  Json coefficients = Json::object();
  for (const auto& [k, v] : r.coefficients) coefficients[k] = to_json(v);
  return Json{{"case", case_label(r.label)},
              {"valid", r.valid()},
              {"row", r.row ? Json(case_label(*r.row)) : Json(nullptr)},
              {"rejected_shape", r.rejected_shape},
              {"swapped", r.swapped},
              {"d1", r.d1},
              {"d2", r.d2},
              {"d", r.d},
              {"coefficients", coefficients},
              {"conditions", named_flags(r.conditions)},
              {"flags", named_flags(r.flags)},
              {"strict", r.strict},
              {"complete_square", r.complete_square},
              {"perfect_cube", r.perfect_cube},
              {"subcase", r.subcase}};
}

ClassificationReport classification_from_json(const Json& j) {
  ClassificationReport r;
  r.label = case_from_label(as_string(field(j, "case"), "case"));
  const Json& row = field(j, "row");
  if (!row.is_null()) r.row = case_from_label(as_string(row, "row"));
  r.rejected_shape = as_string(field(j, "rejected_shape"), "rejected_shape");
  r.swapped = as_bool(field(j, "swapped"), "swapped");
  r.d1 = as_int(field(j, "d1"), "d1");
  r.d2 = as_int(field(j, "d2"), "d2");
  r.d = as_int(field(j, "d"), "d");
  const Json& coefficients = field(j, "coefficients");
  if (!coefficients.is_object()) schema("coefficients must be an object");
  for (const auto& [k, v] : coefficients.items()) r.coefficients.emplace_back(k, rational_from_json(v));
  r.conditions = flags_from(field(j, "conditions"), "conditions");
  r.flags = flags_from(field(j, "flags"), "flags");
  r.strict = as_bool(field(j, "strict"), "strict");
  r.complete_square = as_bool(field(j, "complete_square"), "complete_square");
  r.perfect_cube = as_bool(field(j, "perfect_cube"), "perfect_cube");
  r.subcase = as_string(field(j, "subcase"), "subcase");
  if (as_bool(field(j, "valid"), "valid") != r.valid()) schema("valid disagrees with case");
  return r;
}

Json to_json(const CubicFactorization& f) {
  return Json{{"t", to_json(f.t)}, {"s", to_json(f.s)}, {"a", to_json(f.a)},
              {"b", to_json(f.b)}, {"c", to_json(f.c)}, {"residual", real(f.residual)}};
}

CubicFactorization cubic_factorization_from_json(const Json& j) {
  CubicFactorization f;
  f.t = rational_from_json(field(j, "t"));
  f.s = rational_from_json(field(j, "s"));
  f.a = rational_from_json(field(j, "a"));
  f.b = rational_from_json(field(j, "b"));
  f.c = rational_from_json(field(j, "c"));
  f.residual = as_real(field(j, "residual"), "residual");
  return f;
}

Json to_json(const KSweep& k) {
  return Json{{"min_eigenvalue", real(k.min_eigenvalue)}, {"argmin_theta", real(k.argmin_theta)}, {"points", k.points}};
}

KSweep ksweep_from_json(const Json& j) {
  KSweep k;
  k.min_eigenvalue = as_real(field(j, "min_eigenvalue"), "min_eigenvalue");
  k.argmin_theta = as_real(field(j, "argmin_theta"), "argmin_theta");
  k.points = as_int(field(j, "points"), "points");
  return k;
}

Json to_json(const MetricSample& g) {
  Json point = Json::array();
  for (const auto& z : g.point) point.push_back({real(z.real()), real(z.imag())});
  Json tensor = Json::array();
  for (Eigen::Index r = 0; r < g.tensor.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < g.tensor.cols(); ++c) row.push_back({real(g.tensor(r, c).real()), real(g.tensor(r, c).imag())});
    tensor.push_back(row);
  }
  return Json{{"point", point}, {"tensor", tensor}, {"source", to_string(g.source)}};
}

MetricSample metric_sample_from_json(const Json& j) {
  MetricSample g;
  for (const auto& z : array(field(j, "point"), "point")) {
    if (!z.is_array() || z.size() != 2) schema("point entries are [x, y] pairs");
    g.point.emplace_back(as_real(z[0], "x"), as_real(z[1], "y"));
  }
  const Json& tensor = array(field(j, "tensor"), "tensor");
  const auto n = static_cast<Eigen::Index>(tensor.size());
  g.tensor.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = array(tensor[static_cast<std::size_t>(r)], "tensor row");
    if (static_cast<Eigen::Index>(row.size()) != n) throw Error(ErrorCode::DimensionMismatch, "tensor is not square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) schema("tensor entries are [re, im] pairs");
      g.tensor(r, c) = {as_real(e[0], "re"), as_real(e[1], "im")};
    }
  }
  const std::string source = as_string(field(j, "source"), "source");
  bool known = false;
  for (MetricSource s : {MetricSource::SymbolicPoly, MetricSource::NumericFull, MetricSource::ExplicitMatrix})
    if (to_string(s) == source) g.source = s, known = true;
  if (!known) schema("unknown metric source '" + source + "'");
  return g;
}

Json to_json(const LengthSeries& s) {
  Json cps = Json::array();
  for (const auto& c : s.checkpoints) cps.push_back(Json{{"T", real(c.T)}, {"L", real(c.L)}, {"integrand", real(c.integrand)}});
  return Json{{"curve_id", s.curve_id}, {"t0", real(s.t0)}, {"checkpoints", cps}};
}

LengthSeries length_series_from_json(const Json& j) {
  LengthSeries s;
  s.curve_id = as_string(field(j, "curve_id"), "curve_id");
  s.t0 = as_real(field(j, "t0"), "t0");
  for (const auto& c : array(field(j, "checkpoints"), "checkpoints"))
    s.checkpoints.push_back({as_real(field(c, "T"), "T"), as_real(field(c, "L"), "L"),
                             as_real(field(c, "integrand"), "integrand")});
  return s;
}

Json to_json(const FitVerdict& v) {
  return Json{{"verdict", to_string(v.verdict)}, {"diverges_log", v.diverges_log}, {"c", real(v.c)},
              {"b", real(v.b)},                   {"residual", real(v.residual)},    {"sup", real(v.sup)}};
}

FitVerdict fit_from_json(const Json& j) {
  FitVerdict v;
  v.verdict = verdict_from(as_string(field(j, "verdict"), "verdict"));
  v.diverges_log = as_bool(field(j, "diverges_log"), "diverges_log");
  v.c = as_real(field(j, "c"), "c");
  v.b = as_real(field(j, "b"), "b");
  v.residual = as_real(field(j, "residual"), "residual");
  v.sup = as_real(field(j, "sup"), "sup");
  return v;
}

Json to_json(const CorollaryReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back(Json{{"series", to_json(p.series)}, {"fit", to_json(p.fit)}});
  return Json{{"D1", r.D1},
              {"D2", r.D2},
              {"applies", r.applies},
              {"all_diverge", r.all_diverge},
              {"all_bounded", r.all_bounded},
              {"probes", probes}};
}

CorollaryReport corollary_from_json(const Json& j) {
  CorollaryReport r;
  r.D1 = as_int(field(j, "D1"), "D1");
  r.D2 = as_int(field(j, "D2"), "D2");
  r.applies = as_bool(field(j, "applies"), "applies");
  r.all_diverge = as_bool(field(j, "all_diverge"), "all_diverge");
  r.all_bounded = as_bool(field(j, "all_bounded"), "all_bounded");
  for (const auto& p : array(field(j, "probes"), "probes"))
    r.probes.push_back({length_series_from_json(field(p, "series")), fit_from_json(field(p, "fit"))});
  return r;
}

}  // namespace wpdist

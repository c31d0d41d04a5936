#include "wpdist/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "wpdist/classifier.hpp"
#include "wpdist/errors.hpp"
#include "wpdist/fixtures.hpp"
#include "wpdist/metric_distance.hpp"
#include "wpdist/potential.hpp"
#include "wpdist/serialize.hpp"

namespace wpdist {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw Error(ErrorCode::SchemaError, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(const std::string& path, const Json& j) {
  Output out(path);
  out.stream() << dump(j);
}

Json load_input(const JobConfig& c) {
  if (c.input_path.empty()) throw Error(ErrorCode::SchemaError, "need --fixture or --input");
  return parse_json(read_file(c.input_path));
}

LimitingExpansion load_datum(const JobConfig& c) {
  if (!c.fixture_name.empty()) return fixture(c.fixture_name);
  return expansion_from_json(load_input(c));
}

MetricChoice metric_choice(const JobConfig& c) {
  if (c.metric == "full") return MetricChoice::Full;
  if (c.metric == "dominant") return MetricChoice::Dominant;
  throw Error(ErrorCode::SchemaError, "--metric must be full or dominant");
}

QuadratureOptions quadrature(const JobConfig& c) {
  QuadratureOptions q;
  q.per_decade = c.checkpoints;
  q.rel_tol = c.tolerance;
  return q;
}

MetricField metric_field(const LimitingExpansion& exp, MetricChoice choice) {
  if (choice == MetricChoice::Full) return expansion_metric(exp);
  return polynomial_metric(dominant(polynomial_part(exp)).poly, exp.divisor_count());
}

std::vector<CurveSpec> curves_for(const JobConfig& c, std::size_t coordinates) {
  if (coordinates == 1) {
    if (c.curve != "diagonal" && c.curve != "all")
      throw Error(ErrorCode::SchemaError, "only the diagonal curve exists for one coordinate");
    return {diagonal_ray(1, c.t0, c.T)};
  }
  const auto family = probe_family(c.t0, c.T);
  if (c.curve == "all") return family;
  for (const auto& curve : family)
    if (curve.id == c.curve) return {curve};
  std::string known;
  for (const auto& curve : family) known += " " + curve.id;
  throw Error(ErrorCode::SchemaError, "unknown curve '" + c.curve + "'; known:" + known + " all perturbation");
}

Json fit_or_null(const LengthSeries& s, bool& diverges) {
  try {
    const FitVerdict v = divergence_fit(s);
    diverges = diverges && v.diverges_log;
    return to_json(v);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientSpan) throw;
    diverges = false;
    return nullptr;
  }
}

int cmd_filtration(const JobConfig& c) {
  const auto exp = load_datum(c);
  const int n = exp.space().weight();
  Json filtrations = Json::array();
  for (std::size_t i = 0; i < exp.divisor_count(); ++i) {
    filtrations.push_back(Json{{"divisor", i + 1},
                               {"index", exp.nilpotent(i).index()},
                               {"filtration", to_json(weight_filtration(exp.nilpotent(i), n))}});
  }
  Json j{{"weight", n}, {"filtrations", filtrations}};
  if (exp.divisor_count() == 2) {
    const auto cone = exp.nilpotent(0) + exp.nilpotent(1);
    j["cone"] = to_json(weight_filtration(cone, n));
    j["cone_invariance"] = cone_invariance(exp.nilpotent(0), exp.nilpotent(1), n,
                                           {{1, 1}, {1, 2}, {3, 1}, {make_rational(1, 2), 5}});
  }
  write_json(c.output_path, j);
  return exit_code::ok;
}

int cmd_classify_divisor(const JobConfig& c) {
  const auto exp = load_datum(c);
  Json divisors = Json::array();
  for (std::size_t i = 0; i < exp.divisor_count(); ++i) {
    Json d = to_json(classify_divisor(exp.nilpotent(i), exp.a0()));
    d["divisor"] = i + 1;
    divisors.push_back(d);
  }
  Json j{{"divisors", divisors}};
  j["threefold_constraint"] = exp.space().weight() == 3 ? Json(threefold_constraint(exp)) : Json(nullptr);
  write_json(c.output_path, j);
  return exit_code::ok;
}

int cmd_expand(const JobConfig& c) {
  const auto exp = load_datum(c);
  const auto p = polynomial_part(exp);
  Json degrees = Json::array();
  for (std::size_t i = 0; i < exp.divisor_count(); ++i) degrees.push_back(degree(exp.nilpotent(i), exp.a0()));
  Json j{{"polynomial", to_json(p)}, {"text", p.to_string()}, {"degrees", degrees}};
  j["dominant"] = to_json(dominant(p).poly);
  if (exp.divisor_count() == 1) {
    const auto r = one_variable_degree_check(exp);
    j["one_variable"] = Json{{"deg", r.deg}, {"leading", to_json(r.leading)}, {"leading_positive", r.leading_positive}};
  }
  write_json(c.output_path, j);
  return exit_code::ok;
}

int cmd_classify_potential(const JobConfig& c) {
  RealPolynomial2 p;
  if (c.fixture_name.empty()) {
    const Json in = load_input(c);
    p = in.is_object() && in.contains("monomials") ? polynomial_from_json(in) : polynomial_part(expansion_from_json(in));
  } else {
    p = polynomial_part(fixture(c.fixture_name));
  }
  const auto dp = dominant(p);
  const auto report = classify(dp);
  Json j{{"polynomial", to_json(p)}, {"dominant", to_json(dp.poly)}, {"report", to_json(report)}};
  try {
    j["psd_large_y"] = psd_large_y(dp.poly, {c.grid_lo, c.grid_hi});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositive) throw;
    j["psd_large_y"] = nullptr;
    j["psd_error"] = e.what();
  }
  if (dp.poly.is_homogeneous() && dp.poly.total_degree() == 3) {
    try {
      j["factorization"] = to_json(factor_cubic(dp.poly));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoRealPositiveFactor) throw;
      j["factorization"] = nullptr;
    }
  }
  if (dp.poly.is_homogeneous() && dp.poly.total_degree() >= 1) {
    try {
      j["k_sweep"] = to_json(min_eigenvalue_on_K(dp.poly));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPositiveOnK) throw;
      j["k_sweep"] = nullptr;
    }
  }
  write_json(c.output_path, j);
  return report.valid() ? exit_code::ok : exit_code::negative;
}

int cmd_metric(const JobConfig& c) {
  const auto exp = load_datum(c);
  const auto field = metric_field(exp, metric_choice(c));
  Json samples = Json::array();
  for (const auto& curve : curves_for(c, exp.divisor_count())) {
    const auto series = curve_length(field, curve, quadrature(c));
    for (const auto& cp : series.checkpoints) {
      Json s = to_json(field(curve.position(cp.T)));
      s["curve_id"] = curve.id;
      s["t"] = cp.T;
      samples.push_back(s);
    }
  }
  write_json(c.output_path, Json{{"metric", c.metric}, {"samples", samples}});
  return exit_code::ok;
}

int cmd_distance(const JobConfig& c) {
  std::vector<LengthSeries> series;
  if (c.curve == "perturbation" || c.curve == "perturbation-unperturbed") {
    series.push_back(perturbation_example(c.curve == "perturbation", 0.0, c.t0, c.T, quadrature(c)));
  } else {
    const auto exp = load_datum(c);
    const auto field = metric_field(exp, metric_choice(c));
    for (const auto& curve : curves_for(c, exp.divisor_count())) series.push_back(curve_length(field, curve, quadrature(c)));
  }
  {
    Output out(c.output_path);
    write_csv(out.stream(), series);
  }
  bool diverges = true;
  Json fits = Json::array();
  for (const auto& s : series) fits.push_back(Json{{"curve_id", s.curve_id}, {"fit", fit_or_null(s, diverges)}});
  if (!c.report_path.empty()) write_json(c.report_path, Json{{"metric", c.metric}, {"fits", fits}});
  return diverges ? exit_code::ok : exit_code::negative;
}

int cmd_corollary(const JobConfig& c) {
  const auto exp = load_datum(c);
  CorollaryOptions o;
  o.metric = metric_choice(c);
  o.t0 = c.t0;
  o.T = c.T;
  o.quadrature = quadrature(c);
  const auto r = corollary_strict_cases(exp, o);
  write_json(c.output_path, to_json(r));
  return r.all_diverge ? exit_code::ok : exit_code::negative;
}

std::string distance_verdict(const LimitingExpansion& exp, const JobConfig& c) {
  if (exp.divisor_count() == 1) {
    const auto s = curve_length(metric_field(exp, metric_choice(c)), diagonal_ray(1, c.t0, c.T), quadrature(c));
    return to_string(divergence_fit(s).verdict);
  }
  CorollaryOptions o;
  o.metric = metric_choice(c);
  o.t0 = c.t0;
  o.T = c.T;
  o.quadrature = quadrature(c);
  const auto r = corollary_strict_cases(exp, o);
  return r.all_diverge ? "diverges_log" : r.all_bounded ? "bounded" : "mixed";
}

int cmd_demo(const JobConfig& c) {
  Json rows = Json::array();
  for (const auto& name : fixture_names()) {
    const auto exp = fixture(name);
    Json divisors = Json::array();
    for (std::size_t i = 0; i < exp.divisor_count(); ++i)
      divisors.push_back(to_json(classify_divisor(exp.nilpotent(i), exp.a0())));
    const auto p = polynomial_part(exp);
    Json row{{"fixture", name}, {"divisors", divisors}, {"polynomial", p.to_string()}};
    try {
      row["case"] = case_label(classify(dominant(p)).label);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnrecognizedSupport) throw;
      row["case"] = "n/a";
    }
    row["distance"] = distance_verdict(exp, c);
    rows.push_back(row);
  }

  const auto c1_ccon = fixture("p11222-c1-ccon");
  const bool both_finite = classify_divisor(c1_ccon.nilpotent(0), c1_ccon.a0()).tag == DivisorTag::Finite &&
                           classify_divisor(c1_ccon.nilpotent(1), c1_ccon.a0()).tag == DivisorTag::Finite;
  CorollaryOptions o;
  o.metric = metric_choice(c);
  o.t0 = c.t0;
  o.T = c.T;
  o.quadrature = quadrature(c);
  const auto d_cinf = corollary_strict_cases(fixture("p11222-d-cinf"), o);
  const auto mixed = fixture("p11222-qualitative");
  bool slices_diverge = true;
  for (const auto& curve : probe_family(c.t0, c.T)) {
    if (curve.kind != CurveKind::AngularSlice) continue;
    slices_diverge = slices_diverge && divergence_fit(angular_slice_length(mixed, curve, o.quadrature).series).diverges_log;
  }
  Json conclusions{{"c1_ccon_both_finite", both_finite},
                   {"d_cinf_type", {d_cinf.D1, d_cinf.D2}},
                   {"d_cinf_corollary_applies", d_cinf.applies},
                   {"d_cinf_diverges", d_cinf.all_diverge},
                   {"mixed_angular_slices_diverge", slices_diverge}};
  write_json(c.output_path, Json{{"fixtures", rows}, {"p11222", conclusions}});
  const bool ok = both_finite && d_cinf.applies && d_cinf.all_diverge && slices_diverge;
  return ok ? exit_code::ok : exit_code::negative;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"filtration", "classify-divisor", "expand", "classify-potential",
                                              "metric",     "distance",         "corollary", "demo"};
  return names;
}

int run(const JobConfig& config, std::ostream& log) {
  try {
    if (config.command == "filtration") return cmd_filtration(config);
    if (config.command == "classify-divisor") return cmd_classify_divisor(config);
    if (config.command == "expand") return cmd_expand(config);
    if (config.command == "classify-potential") return cmd_classify_potential(config);
    if (config.command == "metric") return cmd_metric(config);
    if (config.command == "distance") return cmd_distance(config);
    if (config.command == "corollary") return cmd_corollary(config);
    if (config.command == "demo") return cmd_demo(config);
    log << "error: unknown command '" << config.command << "'\n";
    return exit_code::schema;
  } catch (const Error& e) {
    log << "error: " << config.command << ": " << e.what() << "\n";
    return is_schema_error(e.code()) ? exit_code::schema : exit_code::domain;
  } catch (const nlohmann::json::exception& e) {
    log << "error: " << config.command << ": " << e.what() << "\n";
    return exit_code::schema;
  }
}

}  // namespace wpdist

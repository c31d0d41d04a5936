#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "wpdist/cli.hpp"
#include "wpdist/fixtures.hpp"
#include "wpdist/serialize.hpp"

using namespace wpdist;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() : dir(fs::temp_directory_path() / ("wpdist_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

JobConfig job(const std::string& command, const Sandbox& box) {
  JobConfig c;
  c.command = command;
  c.output_path = box.path("out");
  return c;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("classify-potential on y1 + y2") {
  Sandbox box;
  box.write("p.json", R"({"monomials": [{"exp": [1, 0], "num": 1, "den": 1}, {"exp": [0, 1], "num": 1, "den": 1}]})");
  auto c = job("classify-potential", box);
  c.input_path = box.path("p.json");
  std::ostringstream log;
  CHECK(run(c, log) == exit_code::ok);
  const Json out = parse_json(box.read("out"));
  CHECK(out["report"]["case"] == "i");
  CHECK(out["report"]["valid"] == true);
  CHECK(out["psd_large_y"] == true);
}

TEST_CASE("classify-potential verdicts") {
  Sandbox box;
  std::ostringstream log;
  SUBCASE("failed condition exits negative") {
    box.write("p.json", R"({"monomials": [{"exp": [1, 0], "num": 1, "den": 1}, {"exp": [0, 1], "num": -1, "den": 1}]})");
    auto c = job("classify-potential", box);
    c.input_path = box.path("p.json");
    CHECK(run(c, log) == exit_code::negative);
    CHECK(parse_json(box.read("out"))["report"]["valid"] == false);
  }
  SUBCASE("zero polynomial is a domain error") {
    box.write("p.json", R"({"monomials": []})");
    auto c = job("classify-potential", box);
    c.input_path = box.path("p.json");
    CHECK(run(c, log) == exit_code::domain);
    CHECK(log.str().find("error:") != std::string::npos);
  }
  SUBCASE("datum input goes through the polynomial part") {
    box.write("d.json", dump(to_json(fixture("case-viii"))));
    auto c = job("classify-potential", box);
    c.input_path = box.path("d.json");
    CHECK(run(c, log) == exit_code::ok);
    CHECK(parse_json(box.read("out"))["report"]["case"] == "viii");
  }
}

TEST_CASE("filtration of the symmetric cube") {
  Sandbox box;
  auto c = job("filtration", box);
  c.fixture_name = "sym3-maximal";
  std::ostringstream log;
  REQUIRE(run(c, log) == exit_code::ok);
  const Json out = parse_json(box.read("out"));
  const auto filt = increasing_filtration_from_json(out["filtrations"][0]["filtration"]);
  CHECK(filt.ambient_dim() == 4);
  for (int l = 0; l <= 6; ++l) CHECK(filt.graded_dim(l) == (l % 2 == 0 ? 1 : 0));
}

TEST_CASE("cone invariance reported for two divisors") {
  Sandbox box;
  auto c = job("filtration", box);
  c.fixture_name = "case-iii";
  std::ostringstream log;
  REQUIRE(run(c, log) == exit_code::ok);
  CHECK(parse_json(box.read("out"))["cone_invariance"] == true);
}

TEST_CASE("classify-divisor and expand") {
  Sandbox box;
  std::ostringstream log;
  auto c = job("classify-divisor", box);
  c.fixture_name = "type-31";
  REQUIRE(run(c, log) == exit_code::ok);
  Json out = parse_json(box.read("out"));
  CHECK(out["divisors"][0]["degree"] == 3);
  CHECK(out["divisors"][1]["degree"] == 1);
  CHECK(out["threefold_constraint"] == true);

  c.command = "expand";
  c.fixture_name = "case-i";
  REQUIRE(run(c, log) == exit_code::ok);
  out = parse_json(box.read("out"));
  CHECK(out["text"] == "2*y1 + 2*y2");
  CHECK(out["degrees"] == Json::array({1, 1}));
}

TEST_CASE("distance along the diagonal of case (i)") {
  Sandbox box;
  auto c = job("distance", box);
  c.fixture_name = "case-i";
  c.report_path = box.path("report.json");
  std::ostringstream log;
  REQUIRE(run(c, log) == exit_code::ok);
  const auto rows = csv_rows(box.read("out"));
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == std::vector<std::string>{"curve_id", "T", "L", "integrand_at_T"});
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double T = std::stod(rows[k][1]);
    CHECK(std::stod(rows[k][2]) == doctest::Approx(std::log(T / c.t0)).epsilon(1e-8));
  }
  const Json report = parse_json(box.read("report.json"));
  CHECK(report["fits"][0]["fit"]["verdict"] == "diverges_log");
}

TEST_CASE("distance verdict exit codes") {
  Sandbox box;
  std::ostringstream log;
  auto c = job("distance", box);
  c.curve = "perturbation";
  c.t0 = 1;
  c.T = 600;
  CHECK(run(c, log) == exit_code::negative);

  c = job("distance", box);
  c.fixture_name = "finite-finite";
  c.curve = "slice-1-3";
  CHECK(run(c, log) == exit_code::negative);

  c.curve = "no-such-curve";
  CHECK(run(c, log) == exit_code::schema);
}

TEST_CASE("metric samples follow the checkpoints") {
  Sandbox box;
  auto c = job("metric", box);
  c.fixture_name = "case-ii";
  c.metric = "dominant";
  c.T = 1e3;
  c.checkpoints = 2;
  std::ostringstream log;
  REQUIRE(run(c, log) == exit_code::ok);
  const Json out = parse_json(box.read("out"));
  CHECK(out["samples"].size() == 4);
  for (const auto& s : out["samples"]) CHECK(s["source"] == "symbolic_poly");
}

TEST_CASE("corollary") {
  Sandbox box;
  std::ostringstream log;
  auto c = job("corollary", box);
  c.fixture_name = "case-iii";
  c.T = 1e3;
  c.t0 = 1;
  REQUIRE(run(c, log) == exit_code::ok);
  CHECK(parse_json(box.read("out"))["all_diverge"] == true);
}

TEST_CASE("schema failures") {
  Sandbox box;
  std::ostringstream log;
  auto c = job("expand", box);
  CHECK(run(c, log) == exit_code::schema);
  c.fixture_name = "no-such-fixture";
  CHECK(run(c, log) == exit_code::schema);
  c.fixture_name.clear();
  box.write("bad.json", "{ not json");
  c.input_path = box.path("bad.json");
  CHECK(run(c, log) == exit_code::schema);
  box.write("bad.json", R"({"weight": 3})");
  CHECK(run(c, log) == exit_code::schema);
  c.command = "nonsense";
  CHECK(run(c, log) == exit_code::schema);
  c = job("metric", box);
  c.fixture_name = "case-i";
  c.metric = "sideways";
  CHECK(run(c, log) == exit_code::schema);
}

TEST_CASE("command list") {
  CHECK(commands().size() == 8);
  CHECK(commands().front() == "filtration");
}

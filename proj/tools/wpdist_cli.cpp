#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "wpdist/cli.hpp"

int main(int argc, char** argv) {
  wpdist::JobConfig job;
  CLI::App app{"Weil-Petersson distance toolkit for degenerating Calabi-Yau families"};
  app.require_subcommand(1);

  const std::map<std::string, std::string> help{
      {"filtration", "weight filtrations and cone invariance"},
      {"classify-divisor", "finite/infinite divisors and degrees"},
      {"expand", "polynomial part of the potential and its dominant part"},
      {"classify-potential", "match the dominant polynomial against the case table"},
      {"metric", "metric tensors along a curve"},
      {"distance", "curve lengths as CSV with divergence verdicts"},
      {"corollary", "probe curves at a strict (D1, D2) point"},
      {"demo", "summary of every built-in fixture"},
  };
  for (const auto& name : wpdist::commands()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--input", job.input_path, "JSON datum or polynomial");
    sub->add_option("--fixture", job.fixture_name, "built-in datum name");
    sub->add_option("--output", job.output_path, "output file (default: stdout)");
    sub->add_option("--curve", job.curve, "curve id, 'all' or 'perturbation'");
    sub->add_option("--metric", job.metric, "full or dominant")->check(CLI::IsMember({"full", "dominant"}));
    sub->add_option("--report", job.report_path, "JSON fit report for distance");
    sub->add_option("--t0", job.t0, "curve start parameter")->check(CLI::PositiveNumber);
    sub->add_option("--T", job.T, "curve end parameter")->check(CLI::PositiveNumber);
    sub->add_option("--checkpoints", job.checkpoints, "checkpoints per decade")->check(CLI::PositiveNumber);
    sub->add_option("--grid-lo", job.grid_lo, "smallest y on the positivity grid")->check(CLI::PositiveNumber);
    sub->add_option("--grid-hi", job.grid_hi, "largest y on the positivity grid")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", job.tolerance, "relative quadrature tolerance")->check(CLI::PositiveNumber);
    sub->callback([&job, name] { job.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wpdist::exit_code::schema;
  }
  return wpdist::run(job, std::cerr);
}

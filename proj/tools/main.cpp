#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Concentration-based confidence intervals for U-statistics and means"};
  app.require_subcommand(1);

  uci::cli::CiArgs ci;
  auto* ci_cmd = app.add_subcommand("ci", "Compute a confidence interval from a data file");
  ci_cmd->add_option("input", ci.input, "CSV file, one value in [0, 1] per line")->required();
  ci_cmd->add_option("--kernel", ci.kernel, "mean or variance")
      ->check(CLI::IsMember({"mean", "variance"}));
  ci_cmd->add_option("--method", ci.method, "CI method tag");
  ci_cmd->add_option("--delta", ci.delta, "1 - confidence level");
  ci_cmd->add_option("--side", ci.side, "upper, lower or two")
      ->check(CLI::IsMember({"upper", "lower", "two"}));
  ci_cmd->add_flag("--floor-free", ci.floor_free, "replace floor(n/k) by (n-k+1)/k");
  ci_cmd->add_flag("--as-printed", ci.as_printed,
                   "use the printed two-sided mean display (log(4/delta) leading term)");
  ci_cmd->add_flag("!--asymmetric", ci.symmetrized, "use W_n instead of the symmetrized W~_n");
  ci_cmd->add_option("--format", ci.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  uci::cli::CurvesArgs curves;
  auto* curves_cmd = app.add_subcommand("curves", "Half-width comparison curves (CSV and SVG)");
  curves_cmd->add_option("--out,--csv", curves.csv_out, "CSV output path");
  curves_cmd->add_option("--svg", curves.svg_out, "SVG output path");
  curves_cmd->add_option("--method", curves.methods, "method tags (default: the four mean CIs)");
  curves_cmd->add_option("--s2", curves.s2_values, "plug-in sample variances");
  curves_cmd->add_option("--delta", curves.deltas, "delta values");
  curves_cmd->add_option("--n-min", curves.n_min);
  curves_cmd->add_option("--n-max", curves.n_max);
  curves_cmd->add_option("--n-step", curves.n_step);
  curves_cmd->add_option("--scale", curves.scale, "log or linear")
      ->check(CLI::IsMember({"log", "linear"}));

  uci::cli::CoverageArgs coverage;
  auto* cov_cmd = app.add_subcommand("coverage", "Monte Carlo coverage of every CI");
  cov_cmd->add_option("--out", coverage.out, "CSV output path (default: stdout)");
  cov_cmd->add_option("--seed", coverage.seed);
  cov_cmd->add_option("--replicates", coverage.replicates);
  cov_cmd->add_option("--n", coverage.ns, "sample sizes");
  cov_cmd->add_option("--delta", coverage.deltas, "delta values");
  cov_cmd->add_option("--method", coverage.methods,
                      "coverage methods, e.g. var_hoeffding:upper or "
                      "ustat_empirical_bernstein:two:m2");
  cov_cmd->add_option("--dgp", coverage.dgps,
                      "bernoulli(p), uniform01, beta(a,b), point(x), discrete(x:p|...)");
  cov_cmd->add_option("--threads", coverage.threads);
  cov_cmd->add_flag("--floor-free", coverage.floor_free);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return uci::cli::kParseError;
  }

  if (*ci_cmd) return uci::cli::cmd_ci(ci, std::cout, std::cerr);
  if (*curves_cmd) return uci::cli::cmd_curves(curves, std::cout, std::cerr);
  return uci::cli::cmd_coverage(coverage, std::cout, std::cerr);
}

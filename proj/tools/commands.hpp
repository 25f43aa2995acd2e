#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace uci::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kPreconditionError = 3,
  kIoError = 4,
};

struct CiArgs {
  std::string input;
  std::string kernel = "mean";
  std::string method = "ustat_empirical_bernstein";
  double delta = 0.05;
  std::string side = "upper";
  bool floor_free = false;
  bool as_printed = false;
  bool symmetrized = true;
  std::string format = "text";
};

struct CurvesArgs {
  std::string csv_out;
  std::string svg_out;
  std::vector<std::string> methods;
  std::vector<double> s2_values = {0.05, 0.25};
  std::vector<double> deltas = {0.01, 0.1};
  std::size_t n_min = 4;
  std::size_t n_max = 1000;
  std::size_t n_step = 2;
  std::string scale = "log";
};

struct CoverageArgs {
  std::string out;
  std::uint64_t seed = 20190210;
  std::size_t replicates = 2000;
  std::vector<std::size_t> ns = {10, 20, 50, 100, 200};
  std::vector<double> deltas = {0.01, 0.05, 0.1};
  std::vector<std::string> methods;
  std::vector<std::string> dgps = {"bernoulli(0.5)", "bernoulli(0.1)", "uniform01", "beta(2,5)"};
  std::size_t threads = 1;
  bool floor_free = false;
};

int cmd_ci(const CiArgs& args, std::ostream& out, std::ostream& err);
int cmd_curves(const CurvesArgs& args, std::ostream& out, std::ostream& err);
int cmd_coverage(const CoverageArgs& args, std::ostream& out, std::ostream& err);

}  // namespace uci::cli

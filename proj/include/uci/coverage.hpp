#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "uci/ci.hpp"
#include "uci/dgp.hpp"

namespace uci {

inline constexpr std::size_t kMinReplicates = 100;

// A CI method as exercised by the harness: tag, guarded side, and for the
// U-statistic methods the kernel order (1 = mean, 2 = variance kernel).
struct CoverageMethod {
  Method method = Method::var_hoeffding;
  Side side = Side::upper;
  std::size_t m = 1;

  // e.g. "var_hoeffding:upper" or "ustat_empirical_bernstein:two:m2".
  [[nodiscard]] std::string label() const;
};

std::optional<CoverageMethod> parse_coverage_method(std::string_view label);

// Every (tag, side, order) combination the harness knows how to score.
std::vector<CoverageMethod> default_coverage_methods();

struct CoverageReport {
  std::string method;
  std::string dgp;
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t replicates = 0;
  std::size_t covered = 0;
  double empirical_coverage = 0.0;
  double mean_half_width = 0.0;
  std::uint64_t seed = 0;
  double mc_stderr = 0.0;
};

struct CoverageRequest {
  DgpSpec dgp = DgpSpec::uniform01();
  std::vector<CoverageMethod> methods;
  std::vector<std::size_t> ns;
  std::vector<double> deltas;
  std::size_t replicates = 2000;
  std::uint64_t seed = 0;
  // Replicates [first_replicate, first_replicate + replicates) are run; the
  // substream of replicate r depends only on (seed, r).
  std::uint64_t first_replicate = 0;
  std::size_t threads = 1;
  CiOptions options;
};

// The quantity a method's CI is about, under `dgp`.
double coverage_target(const CoverageMethod& method, const DgpSpec& dgp);

// Runs every (method, n, delta) cell of the request against one DGP. Each
// replicate draws one sample that all cells at that n share. Reports come
// back in method-major, then n, then delta order.
std::vector<CoverageReport> run_coverage(const CoverageRequest& request);

// Single-cell convenience wrapper.
CoverageReport run_coverage(const DgpSpec& dgp, const CoverageMethod& method, std::size_t n,
                            double delta, std::size_t replicates, std::uint64_t seed,
                            const CiOptions& options = {});

void write_coverage_csv_header(std::ostream& os);
void write_coverage_csv_row(std::ostream& os, const CoverageReport& r);

}  // namespace uci

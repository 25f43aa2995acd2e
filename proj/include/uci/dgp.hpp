#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "uci/kernel.hpp"
#include "uci/philox.hpp"

namespace uci {

enum class DgpFamily { bernoulli, uniform01, beta, discrete };

/// A data-generating distribution on [0, 1] with known moments.
class DgpSpec {
 public:
  static DgpSpec bernoulli(double p);
  static DgpSpec uniform01();
  static DgpSpec beta(double alpha, double beta);
  static DgpSpec discrete(std::vector<double> support, std::vector<double> probs);
  static DgpSpec point_mass(double value);

  [[nodiscard]] DgpFamily family() const { return family_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] double true_mean() const { return mean_; }
  [[nodiscard]] double true_variance() const { return variance_; }
  [[nodiscard]] const std::vector<double>& support() const { return support_; }
  [[nodiscard]] const std::vector<double>& probs() const { return probs_; }

  // Draws n IID points from the stream.
  [[nodiscard]] std::vector<double> draw(PhiloxStream& rng, std::size_t n) const;

 private:
  DgpSpec(DgpFamily family, std::string name);

  DgpFamily family_;
  std::string name_;
  double p1_ = 0.0;  // p, or alpha
  double p2_ = 0.0;  // beta
  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

// Parses "bernoulli(0.5)", "uniform01", "beta(2,5)", "point(0.3)" and
// "discrete(0:0.3|1:0.7)".
DgpSpec parse_dgp(std::string_view text);

// theta = E h(X_1..X_m). Closed form for the identity and variance kernels;
// exact enumeration over support^m for discrete distributions and any
// kernel. Throws PreconditionError when neither applies.
double true_theta(const DgpSpec& dgp, const KernelSpec& k);

// Standard normal and gamma variates built only on the stream's uniforms,
// so draws are reproducible across standard libraries.
double draw_normal(PhiloxStream& rng);
double draw_gamma(PhiloxStream& rng, double shape);

}  // namespace uci

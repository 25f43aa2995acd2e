#include "uci/dgp.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uci/errors.hpp"
#include "uci/summation.hpp"

namespace uci {
namespace {

std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

DgpSpec::DgpSpec(DgpFamily family, std::string name) : family_(family), name_(std::move(name)) {}

DgpSpec DgpSpec::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("bernoulli p must lie in [0, 1]");
  DgpSpec d(DgpFamily::bernoulli, "bernoulli(" + format_param(p) + ")");
  d.p1_ = p;
  d.mean_ = p;
  d.variance_ = p * (1.0 - p);
  return d;
}

DgpSpec DgpSpec::uniform01() {
  DgpSpec d(DgpFamily::uniform01, "uniform01");
  d.mean_ = 0.5;
  d.variance_ = 1.0 / 12.0;
  return d;
}

DgpSpec DgpSpec::beta(double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0)) throw PreconditionError("beta parameters must be positive");
  DgpSpec d(DgpFamily::beta, "beta(" + format_param(alpha) + "," + format_param(beta) + ")");
  d.p1_ = alpha;
  d.p2_ = beta;
  const double s = alpha + beta;
  d.mean_ = alpha / s;
  d.variance_ = alpha * beta / (s * s * (s + 1.0));
  return d;
}

DgpSpec DgpSpec::discrete(std::vector<double> support, std::vector<double> probs) {
  if (support.empty() || support.size() != probs.size()) {
    throw PreconditionError("discrete DGP needs matching, nonempty support and probabilities");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!(support[i] >= 0.0 && support[i] <= 1.0)) {
      throw PreconditionError("discrete DGP support must lie in [0, 1]");
    }
    if (!(probs[i] >= 0.0)) throw PreconditionError("probabilities must be nonnegative");
    total.add(probs[i]);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw PreconditionError("discrete DGP probabilities must sum to 1");
  }
  std::ostringstream name;
  name << "discrete(";
  for (std::size_t i = 0; i < support.size(); ++i) {
    name << (i ? "|" : "") << support[i] << ":" << probs[i];
  }
  name << ")";
  DgpSpec d(DgpFamily::discrete, name.str());
  CompensatedSum mean;
  CompensatedSum cum;
  for (std::size_t i = 0; i < support.size(); ++i) {
    mean.add(support[i] * probs[i]);
    cum.add(probs[i]);
    d.cumulative_.push_back(cum.value());
  }
  d.mean_ = mean.value();
  CompensatedSum var;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double dev = support[i] - d.mean_;
    var.add(dev * dev * probs[i]);
  }
  d.variance_ = var.value();
  d.support_ = std::move(support);
  d.probs_ = std::move(probs);
  return d;
}

DgpSpec DgpSpec::point_mass(double value) {
  DgpSpec d = discrete({value}, {1.0});
  d.name_ = "point(" + format_param(value) + ")";
  return d;
}

double draw_normal(PhiloxStream& rng) {
  // Box-Muller; the second variate of the pair is discarded.
  const double u1 = rng.uniform_open();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double draw_gamma(PhiloxStream& rng, double shape) {
  // Marsaglia & Tsang (2000); shapes below 1 use the u^(1/a) boost.
  if (shape < 1.0) {
    const double g = draw_gamma(rng, shape + 1.0);
    return g * std::pow(rng.uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x;
    double v;
    do {
      x = draw_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> DgpSpec::draw(PhiloxStream& rng, std::size_t n) const {
  std::vector<double> out(n);
  for (auto& x : out) {
    switch (family_) {
      case DgpFamily::bernoulli:
        x = rng.uniform() < p1_ ? 1.0 : 0.0;
        break;
      case DgpFamily::uniform01:
        x = rng.uniform();
        break;
      case DgpFamily::beta: {
        const double a = draw_gamma(rng, p1_);
        const double b = draw_gamma(rng, p2_);
        x = a / (a + b);
        break;
      }
      case DgpFamily::discrete: {
        const double u = rng.uniform();
        std::size_t i = 0;
        while (i + 1 < cumulative_.size() && u >= cumulative_[i]) ++i;
        x = support_[i];
        break;
      }
    }
  }
  return out;
}

DgpSpec parse_dgp(std::string_view text) {
  if (text == "uniform01" || text == "uniform") return DgpSpec::uniform01();
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw ParseError("unrecognised DGP '" + std::string(text) + "'");
  }
  const auto family = text.substr(0, open);
  const auto args = text.substr(open + 1, text.size() - open - 2);
  if (family == "bernoulli") return DgpSpec::bernoulli(parse_number(args));
  if (family == "point") return DgpSpec::point_mass(parse_number(args));
  if (family == "beta") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw ParseError("beta takes two parameters");
    return DgpSpec::beta(parse_number(parts[0]), parse_number(parts[1]));
  }
  if (family == "discrete") {
    std::vector<double> support;
    std::vector<double> probs;
    for (auto atom : split(args, '|')) {
      const auto kv = split(atom, ':');
      if (kv.size() != 2) throw ParseError("discrete atoms are value:probability");
      support.push_back(parse_number(kv[0]));
      probs.push_back(parse_number(kv[1]));
    }
    return DgpSpec::discrete(std::move(support), std::move(probs));
  }
  throw ParseError("unrecognised DGP '" + std::string(text) + "'");
}

double true_theta(const DgpSpec& dgp, const KernelSpec& k) {
  if (dgp.family() == DgpFamily::discrete) {
    const auto& support = dgp.support();
    const auto& probs = dgp.probs();
    const std::size_t m = k.order();
    const std::size_t s = support.size();
    std::vector<std::size_t> digits(m, 0);
    std::vector<double> points(m);
    CompensatedSum acc;
    while (true) {
      double weight = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        points[i] = support[digits[i]];
        weight *= probs[digits[i]];
      }
      acc.add(weight * eval_kernel(k, points));
      std::size_t pos = 0;
      while (pos < m && ++digits[pos] == s) digits[pos++] = 0;
      if (pos == m) break;
    }
    return acc.value();
  }
  switch (k.kind()) {
    case KernelKind::identity:
      return dgp.true_mean();
    case KernelKind::variance:
      return dgp.true_variance();
    case KernelKind::closure:
      break;
  }
  throw PreconditionError("no exact expectation for kernel '" + k.name() + "' under " +
                          dgp.name());
}

}  // namespace uci

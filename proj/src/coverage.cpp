#include "uci/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "uci/errors.hpp"
#include "uci/io.hpp"
#include "uci/summation.hpp"
#include "uci/ustat.hpp"

namespace uci {
namespace {

bool is_ustat(Method m) {
  return m == Method::ustat_empirical_hoeffding || m == Method::ustat_empirical_bernstein ||
         m == Method::ustat_empirical_bernstein_2sided;
}

// Tags whose CI exists only in the one-sided form.
bool one_sided_only(Method m) {
  switch (m) {
    case Method::sd_bernstein_upper:
    case Method::sd_bernstein_lower:
    case Method::sd_maurer_upper:
    case Method::sd_maurer_lower:
    case Method::ustat_empirical_bernstein:
    case Method::mean_improved_hoeffding_1:
    case Method::mean_improved_hoeffding_2:
    case Method::mean_audibert:
    case Method::mean_maurer:
      return true;
    default:
      return false;
  }
}

bool side_ok(const CoverageMethod& cm) {
  if (const auto fixed = implied_side(cm.method); fixed && *fixed != cm.side) return false;
  return !(one_sided_only(cm.method) && cm.side == Side::two_sided);
}

std::size_t min_n(const CoverageMethod& cm) { return is_ustat(cm.method) ? 2 * cm.m : 2; }

// Statistics of one replicate's sample.
struct ReplicateStats {
  double xbar = 0.0;
  double s2 = 0.0;
  double u2 = 0.0;  // U_n of the variance kernel
  double w2 = 0.0;  // W~_n of the variance kernel
};

ReplicateStats replicate_stats(const Sample& sample, bool need_order2) {
  ReplicateStats st;
  st.xbar = compensated_sum(sample.values()) / static_cast<double>(sample.size());
  st.s2 = compute_sample_variance(sample);
  if (need_order2) {
    static const KernelSpec kVar = variance_kernel();
    st.u2 = compute_ustat(sample, kVar);
    st.w2 = compute_w_symmetrized_fast(sample, kVar);
  }
  return st;
}

CiInputs inputs_for(const CoverageMethod& cm, const ReplicateStats& st, std::size_t n) {
  CiInputs in;
  in.n = n;
  in.m = cm.m;
  in.xbar = st.xbar;
  in.s2 = st.s2;
  if (is_ustat(cm.method)) {
    if (cm.m == 1) {
      // Identity kernel: U_n is the mean and W_n = W~_n = S_n^2.
      in.u = st.xbar;
      in.w = st.s2;
    } else {
      in.u = st.u2;
      in.w = st.w2;
    }
  }
  return in;
}

}  // namespace

std::string CoverageMethod::label() const {
  std::string out(to_string(method));
  out += ":";
  out += to_string(side);
  if (is_ustat(method)) out += ":m" + std::to_string(m);
  return out;
}

std::optional<CoverageMethod> parse_coverage_method(std::string_view label) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = label.find(':', start);
    parts.push_back(label.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  const auto method = parse_method(parts[0]);
  if (!method) return std::nullopt;
  CoverageMethod cm;
  cm.method = *method;
  cm.side = implied_side(*method).value_or(Side::upper);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (const auto side = parse_side(parts[i])) {
      cm.side = *side;
    } else if (parts[i] == "m1" || parts[i] == "m2") {
      cm.m = parts[i] == "m1" ? 1 : 2;
    } else {
      return std::nullopt;
    }
  }
  if (!side_ok(cm)) return std::nullopt;
  if (!is_ustat(cm.method) && cm.m != 1) return std::nullopt;
  return cm;
}

std::vector<CoverageMethod> default_coverage_methods() {
  using M = Method;
  using S = Side;
  std::vector<CoverageMethod> out = {
      {M::var_hoeffding, S::upper, 1},
      {M::var_hoeffding, S::lower, 1},
      {M::var_hoeffding, S::two_sided, 1},
      {M::sd_bernstein_upper, S::upper, 1},
      {M::sd_bernstein_lower, S::lower, 1},
      {M::sd_maurer_upper, S::upper, 1},
      {M::sd_maurer_lower, S::lower, 1},
  };
  for (std::size_t m : {1u, 2u}) {
    out.push_back({M::ustat_empirical_hoeffding, S::upper, m});
    out.push_back({M::ustat_empirical_hoeffding, S::lower, m});
    out.push_back({M::ustat_empirical_hoeffding, S::two_sided, m});
    out.push_back({M::ustat_empirical_bernstein, S::upper, m});
    out.push_back({M::ustat_empirical_bernstein, S::lower, m});
    out.push_back({M::ustat_empirical_bernstein_2sided, S::two_sided, m});
  }
  const std::vector<CoverageMethod> means = {
      {M::mean_improved_hoeffding_1, S::upper, 1}, {M::mean_improved_hoeffding_1, S::lower, 1},
      {M::mean_improved_hoeffding_2, S::upper, 1}, {M::mean_improved_hoeffding_2, S::lower, 1},
      {M::mean_improved_2sided_1, S::two_sided, 1}, {M::mean_improved_2sided_2, S::two_sided, 1},
      {M::mean_audibert, S::upper, 1},            {M::mean_audibert, S::lower, 1},
      {M::mean_maurer, S::upper, 1},              {M::mean_maurer, S::lower, 1},
  };
  out.insert(out.end(), means.begin(), means.end());
  return out;
}

double coverage_target(const CoverageMethod& method, const DgpSpec& dgp) {
  switch (method.method) {
    case Method::var_hoeffding:
      return dgp.true_variance();
    case Method::sd_bernstein_upper:
    case Method::sd_bernstein_lower:
    case Method::sd_maurer_upper:
    case Method::sd_maurer_lower:
      return std::sqrt(dgp.true_variance());
    case Method::ustat_empirical_hoeffding:
    case Method::ustat_empirical_bernstein:
    case Method::ustat_empirical_bernstein_2sided:
      return method.m == 1 ? true_theta(dgp, identity_kernel()) : true_theta(dgp, variance_kernel());
    default:
      return dgp.true_mean();
  }
}

std::vector<CoverageReport> run_coverage(const CoverageRequest& req) {
  if (req.replicates < kMinReplicates) {
    std::ostringstream os;
    os << "coverage runs need at least " << kMinReplicates << " replicates, got "
       << req.replicates;
    throw PreconditionError(os.str());
  }
  if (req.methods.empty() || req.ns.empty() || req.deltas.empty()) {
    throw PreconditionError("coverage request needs methods, sample sizes and deltas");
  }
  bool need_order2 = false;
  for (const auto& cm : req.methods) {
    if (!side_ok(cm)) {
      throw PreconditionError("method " + cm.label() + " does not support that side");
    }
    if (is_ustat(cm.method) && cm.m != 1 && cm.m != 2) {
      throw PreconditionError("coverage supports U-statistic orders 1 and 2 only");
    }
    need_order2 = need_order2 || (is_ustat(cm.method) && cm.m == 2);
    for (std::size_t n : req.ns) {
      if (n < min_n(cm)) {
        std::ostringstream os;
        os << "method " << cm.label() << " needs n >= " << min_n(cm) << ", got " << n;
        throw PreconditionError(os.str());
      }
    }
  }
  for (double d : req.deltas) {
    if (!(d > 0.0 && d < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  }

  std::vector<double> targets;
  for (const auto& cm : req.methods) targets.push_back(coverage_target(cm, req.dgp));

  const std::size_t reps = req.replicates;
  const std::size_t cells_per_n = req.methods.size() * req.deltas.size();
  const std::size_t threads = std::clamp<std::size_t>(req.threads, 1, reps);

  std::vector<CoverageReport> reports;
  for (std::size_t n : req.ns) {
    // Per (cell, replicate) outcomes, filled independently of scheduling.
    std::vector<unsigned char> covered(cells_per_n * reps, 0);
    std::vector<double> widths(cells_per_n * reps, 0.0);

    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        PhiloxStream rng(req.seed, req.first_replicate + r);
        const Sample sample(req.dgp.draw(rng, n));
        const ReplicateStats st = replicate_stats(sample, need_order2);
        for (std::size_t mi = 0; mi < req.methods.size(); ++mi) {
          const auto& cm = req.methods[mi];
          const CiInputs in = inputs_for(cm, st, n);
          for (std::size_t di = 0; di < req.deltas.size(); ++di) {
            const CiResult ci = compute_ci(cm.method, cm.side, in, req.deltas[di], req.options);
            const std::size_t cell = mi * req.deltas.size() + di;
            covered[cell * reps + r] = ci.covers(targets[mi]) ? 1 : 0;
            widths[cell * reps + r] = ci.half_width;
          }
        }
      }
    };

    if (threads == 1) {
      work(0, reps);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (reps + threads - 1) / threads;
      for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(reps, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }

    for (std::size_t mi = 0; mi < req.methods.size(); ++mi) {
      for (std::size_t di = 0; di < req.deltas.size(); ++di) {
        const std::size_t cell = mi * req.deltas.size() + di;
        CoverageReport rep;
        rep.method = req.methods[mi].label();
        rep.dgp = req.dgp.name();
        rep.n = n;
        rep.delta = req.deltas[di];
        rep.replicates = reps;
        rep.seed = req.seed;
        CompensatedSum width_sum;
        for (std::size_t r = 0; r < reps; ++r) {
          rep.covered += covered[cell * reps + r];
          width_sum.add(widths[cell * reps + r]);
        }
        rep.empirical_coverage = static_cast<double>(rep.covered) / static_cast<double>(reps);
        rep.mean_half_width = width_sum.value() / static_cast<double>(reps);
        const double p = rep.empirical_coverage;
        rep.mc_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
        reports.push_back(std::move(rep));
      }
    }
  }

  // method-major order
  std::stable_sort(reports.begin(), reports.end(), [&](const auto& a, const auto& b) {
    auto index = [&](const std::string& label) {
      for (std::size_t i = 0; i < req.methods.size(); ++i) {
        if (req.methods[i].label() == label) return i;
      }
      return req.methods.size();
    };
    return index(a.method) < index(b.method);
  });
  return reports;
}

CoverageReport run_coverage(const DgpSpec& dgp, const CoverageMethod& method, std::size_t n,
                            double delta, std::size_t replicates, std::uint64_t seed,
                            const CiOptions& options) {
  CoverageRequest req;
  req.dgp = dgp;
  req.methods = {method};
  req.ns = {n};
  req.deltas = {delta};
  req.replicates = replicates;
  req.seed = seed;
  req.options = options;
  return run_coverage(req).front();
}

void write_coverage_csv_header(std::ostream& os) {
  os << "method,dgp,n,delta,replicates,covered,coverage,mean_half_width,seed\n";
}

void write_coverage_csv_row(std::ostream& os, const CoverageReport& r) {
  // DGP names may contain commas (beta(2,5)); quote them.
  os << r.method << ",\"" << r.dgp << "\"," << r.n << ',' << format_double(r.delta) << ','
     << r.replicates << ',' << r.covered << ',' << format_double(r.empirical_coverage) << ','
     << format_double(r.mean_half_width) << ',' << r.seed << '\n';
}

}  // namespace uci

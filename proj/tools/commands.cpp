#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "uci/ci.hpp"
#include "uci/coverage.hpp"
#include "uci/curves.hpp"
#include "uci/errors.hpp"
#include "uci/io.hpp"
#include "uci/ustat.hpp"

namespace uci::cli {
namespace {

bool is_ustat(Method m) {
  return m == Method::ustat_empirical_hoeffding || m == Method::ustat_empirical_bernstein ||
         m == Method::ustat_empirical_bernstein_2sided;
}

// Runs `body`, mapping library exceptions onto exit codes with a one-line
// diagnostic.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const KernelRangeError& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const EnumerationCapError& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const VacuousBoundError& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionError;
  }
}

// Writes `content` to `path` in one go; nothing is left behind on failure
// to open.
void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void render_text(std::ostream& out, const CiResult& ci, std::string_view kernel) {
  out << "method: " << to_string(ci.method) << '\n'
      << "side: " << to_string(ci.side) << '\n'
      << "kernel: " << kernel << '\n'
      << "delta: " << format_double(ci.delta) << '\n'
      << "level: " << format_double(ci.level) << '\n'
      << "center: " << format_double(ci.center) << '\n'
      << "lower: " << format_double(ci.lower) << '\n'
      << "upper: " << format_double(ci.upper) << '\n'
      << "half_width: " << format_double(ci.half_width) << '\n'
      << "variance_term: " << format_double(ci.terms.variance) << '\n'
      << "cross_term: " << format_double(ci.terms.cross) << '\n'
      << "linear_term: " << format_double(ci.terms.linear) << '\n'
      << "floor_free: " << (ci.floor_free ? "true" : "false") << '\n';
}

void render_json(std::ostream& out, const CiResult& ci, std::string_view kernel) {
  nlohmann::ordered_json j;
  j["method"] = to_string(ci.method);
  j["side"] = to_string(ci.side);
  j["kernel"] = kernel;
  j["delta"] = ci.delta;
  j["level"] = ci.level;
  j["center"] = ci.center;
  j["lower"] = ci.lower;
  j["upper"] = ci.upper;
  j["half_width"] = ci.half_width;
  j["terms"] = {{"variance", ci.terms.variance},
                {"cross", ci.terms.cross},
                {"linear", ci.terms.linear}};
  j["floor_free"] = ci.floor_free;
  out << j.dump(2) << '\n';
}

}  // namespace

int cmd_ci(const CiArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto method = parse_method(args.method);
    if (!method) throw ParseError("unknown method '" + args.method + "'");
    const auto side = parse_side(args.side);
    if (!side) throw ParseError("unknown side '" + args.side + "'");
    if (args.kernel != "mean" && args.kernel != "variance") {
      throw ParseError("unknown kernel '" + args.kernel + "' (expected mean or variance)");
    }
    if (args.format != "text" && args.format != "json") {
      throw ParseError("unknown format '" + args.format + "'");
    }

    const Sample sample = read_sample_csv(args.input);
    if (sample.empty()) throw PreconditionError("input contains no data");
    if (!sample.within(0.0, 1.0)) {
      throw PreconditionError("all values must lie in [0, 1] for these confidence intervals");
    }
    if (sample.size() < 2) throw PreconditionError("at least two observations are required");

    CiInputs in;
    in.n = sample.size();
    in.xbar = compute_ustat(sample, identity_kernel());
    in.s2 = compute_sample_variance(sample);
    if (is_ustat(*method)) {
      const KernelSpec k = args.kernel == "mean" ? identity_kernel() : variance_kernel();
      in.m = k.order();
      if (sample.size() < 2 * in.m) {
        throw PreconditionError("kernel '" + args.kernel + "' needs at least " +
                                std::to_string(2 * in.m) + " observations");
      }
      in.u = compute_ustat(sample, k);
      in.w = k.order() <= 2 && args.symmetrized ? compute_w_symmetrized_fast(sample, k)
                                                : compute_w(sample, VarianceKernel(k, false));
    }

    CiOptions opts;
    opts.floor_free = args.floor_free;
    opts.as_printed = args.as_printed;
    const CiResult ci = compute_ci(*method, *side, in, args.delta, opts);
    if (args.format == "json") {
      render_json(out, ci, args.kernel);
    } else {
      render_text(out, ci, args.kernel);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_curves(const CurvesArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    CurveScale scale;
    if (args.scale == "log") {
      scale = CurveScale::log;
    } else if (args.scale == "linear") {
      scale = CurveScale::linear;
    } else {
      throw ParseError("unknown scale '" + args.scale + "'");
    }
    std::vector<Method> methods;
    for (const auto& name : args.methods) {
      const auto m = parse_method(name);
      if (!m) throw ParseError("unknown method '" + name + "'");
      methods.push_back(*m);
    }
    if (methods.empty()) methods = figure_methods();
    if (args.n_step == 0 || args.n_min > args.n_max) {
      throw PreconditionError("the n grid is empty");
    }
    if (args.s2_values.empty() || args.deltas.empty()) {
      throw PreconditionError("need at least one S_n^2 value and one delta");
    }
    if (args.s2_values.size() * args.deltas.size() > 4) {
      throw PreconditionError("at most four (S_n^2, delta) panels fit the figure");
    }
    if (args.csv_out.empty() && args.svg_out.empty()) {
      throw PreconditionError("nothing to write; pass --csv and/or --svg");
    }

    std::vector<std::size_t> grid;
    for (std::size_t n = args.n_min; n <= args.n_max; n += args.n_step) grid.push_back(n);

    std::vector<CurveSet> sets;
    for (double s2 : args.s2_values) {
      for (double delta : args.deltas) {
        if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
        if (!(s2 >= 0.0)) throw PreconditionError("S_n^2 must be nonnegative");
        CurveSpec spec;
        spec.methods = methods;
        spec.n_values = grid;
        spec.s2 = s2;
        spec.delta = delta;
        spec.scale = scale;
        sets.push_back(compute_curves(spec));
      }
    }
    for (const auto& set : sets) {
      for (const auto& gap : set.gaps) {
        err << "skipped " << to_string(gap.method) << " at n=" << gap.n << ": " << gap.reason
            << '\n';
      }
    }

    if (!args.csv_out.empty()) {
      std::ostringstream csv;
      write_curves_csv(csv, sets);
      write_file(args.csv_out, csv.str());
      out << "wrote " << args.csv_out << '\n';
    }
    if (!args.svg_out.empty()) {
      std::ostringstream svg;
      write_curves_svg(svg, sets);
      write_file(args.svg_out, svg.str());
      out << "wrote " << args.svg_out << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_coverage(const CoverageArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.replicates < kMinReplicates) {
      throw PreconditionError("--replicates must be at least " + std::to_string(kMinReplicates));
    }
    std::vector<CoverageMethod> methods;
    for (const auto& label : args.methods) {
      const auto cm = parse_coverage_method(label);
      if (!cm) throw ParseError("unknown coverage method '" + label + "'");
      methods.push_back(*cm);
    }
    if (methods.empty()) methods = default_coverage_methods();
    std::vector<DgpSpec> dgps;
    for (const auto& d : args.dgps) dgps.push_back(parse_dgp(d));

    std::ostringstream csv;
    write_coverage_csv_header(csv);
    std::vector<std::vector<CoverageReport>> per_dgp;
    for (const auto& dgp : dgps) {
      CoverageRequest req;
      req.dgp = dgp;
      req.methods = methods;
      req.ns = args.ns;
      req.deltas = args.deltas;
      req.replicates = args.replicates;
      req.seed = args.seed;
      req.threads = args.threads;
      req.options.floor_free = args.floor_free;
      per_dgp.push_back(run_coverage(req));
    }
    // Row order: method, dgp, n, delta.
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const std::size_t per_method = args.ns.size() * args.deltas.size();
      for (const auto& reports : per_dgp) {
        for (std::size_t i = 0; i < per_method; ++i) {
          write_coverage_csv_row(csv, reports[mi * per_method + i]);
        }
      }
    }

    if (args.out.empty() || args.out == "-") {
      out << csv.str();
    } else {
      write_file(args.out, csv.str());
      out << "wrote " << args.out << '\n';
    }
    return static_cast<int>(kOk);
  });
}

}  // namespace uci::cli

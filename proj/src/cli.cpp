#include "wavelab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wavelab/analysis.hpp"
#include "wavelab/ineq_lab.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/report.hpp"
#include "wavelab/solver_riemann.hpp"

namespace wavelab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Context {
  const RunConfig& config;
  std::ostream& out;
  std::ostream& err;
  bool quiet;
  std::vector<std::string> files;
  bool failed = false;

  void say(const std::string& line) {
    if (!quiet) out << line << '\n';
  }
  void fail(const std::string& line) {
    failed = true;
    err << "wavelab: " << line << '\n';
  }
  void emit(const std::string& name, const std::string& text) {
    write_text(fs::path(config.output_dir) / name, text);
    files.push_back(name);
  }
};

// Runs body(i) for i in [0, n) with one worker per item (capped).
template <class Body>
void for_each_parallel(std::size_t n, Body body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(n, default_worker_count()));
  parallel_chunks(n, workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

Trajectory simulate_one(const RunConfig& c, double alpha) {
  const Grid grid(c.n_cells);
  const auto damping = sample_damping(c.damping_spec(alpha), grid);
  return evolve(initial_data_from_tag(c.initial_data, c.amplitude), damping, grid, c.t_end, c.record_stride);
}

std::vector<EnergyTrace> traces_for(const RunConfig& c, const Trajectory& traj) {
  std::vector<EnergyTrace> traces(c.p_list.size());
  for_each_parallel(traces.size(), [&](std::size_t i) {
    traces[i] = energy_trace(traj, PExponent(c.p_list[i]), c.overbar);
  });
  return traces;
}

// Largest relative step-over-step increase of E_p.
double worst_increase(const EnergyTrace& tr) {
  double worst = 0.0;
  for (std::size_t k = 1; k < tr.E_p.size(); ++k) {
    const double scale = std::max(tr.E_p[k - 1], 1e-300);
    worst = std::max(worst, (tr.E_p[k] - tr.E_p[k - 1]) / scale);
  }
  return worst;
}

void cmd_simulate(Context& ctx) {
  const auto& c = ctx.config;
  const auto traj = simulate_one(c, c.alpha_list.front());
  const auto traces = traces_for(c, traj);
  ctx.emit("energy_trace.csv", to_csv(energy_trace_table(traces)));
  for (const auto& tr : traces) {
    const double inc = worst_increase(tr);
    std::ostringstream line;
    line << "p=" << format_double(tr.p) << " E_p(0)=" << format_double(tr.E_p.front())
         << " E_p(end)=" << format_double(tr.E_p.back()) << " worst relative increase=" << format_double(inc);
    ctx.say(line.str());
    if (inc > c.monotonicity_tol) ctx.fail("E_p increased at p = " + format_double(tr.p));
  }
}

void cmd_decay(Context& ctx) {
  const auto& c = ctx.config;
  const auto traj = simulate_one(c, c.alpha_list.front());
  const auto traces = traces_for(c, traj);
  ctx.emit("energy_trace.csv", to_csv(energy_trace_table(traces)));

  CsvTable table;
  table.header = {"p", "gamma_hat", "intercept", "r_squared", "window_lo", "window_hi", "samples"};
  for (const auto& tr : traces) {
    try {
      const auto window = default_decay_window(tr);
      const auto fit = fit_decay_rate(tr, window);
      table.add_row({format_double(tr.p), format_double(fit.gamma_hat), format_double(fit.intercept),
                     format_double(fit.r_squared), format_double(window.lo), format_double(window.hi),
                     std::to_string(fit.samples)});
      ctx.say("p=" + format_double(tr.p) + " gamma_hat=" + format_double(fit.gamma_hat) +
              " r2=" + format_double(fit.r_squared));
      if (!(fit.gamma_hat > 0.0)) ctx.fail("no decay measured at p = " + format_double(tr.p));
    } catch (const Error& e) {
      ctx.fail("decay fit at p = " + format_double(tr.p) + ": " + e.what());
    }
  }
  ctx.emit("decay.csv", to_csv(table));
}

void cmd_global_bound(Context& ctx) {
  const auto& c = ctx.config;
  const std::size_t np = c.p_list.size();
  std::vector<GlobalDampingReport> reports(c.alpha_list.size() * np);
  // One trajectory per alpha, reused for every p.
  std::vector<Trajectory> trajs(c.alpha_list.size(), Trajectory{Grid(c.n_cells), {}, {}, 1});
  for_each_parallel(c.alpha_list.size(), [&](std::size_t i) { trajs[i] = simulate_one(c, c.alpha_list[i]); });
  for_each_parallel(reports.size(), [&](std::size_t i) {
    reports[i] = check_global_decay(trajs[i / np], PExponent(c.p_list[i % np]), c.alpha_list[i / np], c.bound_tol);
  });

  CsvTable table;
  table.header = {"alpha", "p", "K_p", "M_alpha", "worst_margin", "bound_satisfied"};
  for (const auto& r : reports) {
    table.add_row({format_double(r.alpha), format_double(r.p), format_double(r.K_p), format_double(r.M_alpha),
                   format_double(r.worst_margin), r.bound_satisfied ? "1" : "0"});
    ctx.say("alpha=" + format_double(r.alpha) + " p=" + format_double(r.p) + " M_alpha=" +
            format_double(r.M_alpha) + " worst margin=" + format_double(r.worst_margin));
    if (!r.bound_satisfied) {
      ctx.fail("bound violated at alpha = " + format_double(r.alpha) + ", p = " + format_double(r.p));
    }
  }
  ctx.emit("global_bound.csv", to_csv(table));
}

void cmd_oracle_compare(Context& ctx) {
  const auto& c = ctx.config;
  ConvergenceProblem problem{initial_data_from_tag(c.initial_data, c.amplitude), c.damping_spec(), c.t_end,
                             c.picard_tol};
  const auto rows = convergence_study(problem, c.n_list);
  CsvTable table;
  table.header = {"n_cells", "sup_error", "observed_order"};
  bool orders_ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    table.add_row({std::to_string(r.n_cells), format_double(r.sup_error), format_double(r.observed_order)});
    ctx.say("N=" + std::to_string(r.n_cells) + " sup error=" + format_double(r.sup_error) +
            (i ? " order=" + format_double(r.observed_order) : ""));
    if (i > 0 && r.observed_order < 1.8) orders_ok = false;
  }
  ctx.emit("oracle_compare.csv", to_csv(table));
  // At the roundoff floor the order is meaningless; the gap itself is the check.
  if (!orders_ok && rows.back().sup_error > 1e-10) ctx.fail("observed order below 1.8");
}

void cmd_verify_inequalities(Context& ctx) {
  const auto& c = ctx.config;
  ineq::SuiteOptions options;
  options.p_list = c.p_list;
  options.samples = c.audit_samples;
  options.identity_samples = std::min<std::size_t>(c.audit_samples, 10000);
  options.poincare_samples = std::min<std::size_t>(c.audit_samples, 1000);
  options.seed = c.seed;
  const auto results = ineq::inequality_suite(options);

  CsvTable table;
  table.header = {"check", "p", "C_min", "C_used", "samples", "violations", "max_ratio"};
  for (const auto& r : results) {
    table.add_row({r.name, format_double(r.p), format_double(r.C_min), format_double(r.C_used),
                   std::to_string(r.samples), std::to_string(r.violations), format_double(r.max_ratio)});
    ctx.say(r.name + " p=" + format_double(r.p) + " violations=" + std::to_string(r.violations) + "/" +
            std::to_string(r.samples));
    if (r.violations > 0) ctx.fail(r.name + " violated at p = " + format_double(r.p));
  }
  ctx.emit("inequalities.csv", to_csv(table));
}

void cmd_plot(Context& ctx) {
  const auto& c = ctx.config;
  const auto series = energy_series_from_table(read_csv(c.plot_input));
  const std::string name = c.plot_output.empty() ? "energy.svg" : c.plot_output;
  ctx.emit(name, svg_log_plot(series, "t", "E_p"));
  ctx.say("wrote " + (fs::path(c.output_dir) / name).string());
}

json meta_for(const Context& ctx) {
  const auto& c = ctx.config;
  const char* kinds[] = {"constant", "bump", "indicator", "none"};
  json meta;
  meta["subcommand"] = to_string(c.subcommand);
  meta["seed"] = c.seed;
  meta["n_cells"] = c.n_cells;
  meta["t_end"] = c.t_end;
  meta["record_stride"] = c.record_stride;
  meta["p"] = c.p_list;
  meta["damping"] = kinds[static_cast<int>(c.damping_kind)];
  meta["alpha"] = c.alpha_list;
  meta["a0"] = c.a0;
  meta["omega"] = {c.omega.lo, c.omega.hi};
  meta["initial_data"] = c.initial_data;
  meta["amplitude"] = c.amplitude;
  meta["files"] = ctx.files;
  meta["status"] = ctx.failed ? "fail" : "pass";
  return meta;
}

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::OutOfRegime:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidUse:
    case ErrorKind::InvalidGeometry:
    case ErrorKind::InvalidData:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const RunConfig& config, const RunOptions& options) {
  std::ostream& out = options.out ? *options.out : std::cout;
  std::ostream& err = options.err ? *options.err : std::cerr;
  Context ctx{config, out, err, options.quiet, {}, false};
  try {
    validate_config(config);
    switch (config.subcommand) {
      case Subcommand::Simulate: cmd_simulate(ctx); break;
      case Subcommand::Decay: cmd_decay(ctx); break;
      case Subcommand::GlobalBound: cmd_global_bound(ctx); break;
      case Subcommand::OracleCompare: cmd_oracle_compare(ctx); break;
      case Subcommand::VerifyInequalities: cmd_verify_inequalities(ctx); break;
      case Subcommand::Plot: cmd_plot(ctx); break;
    }
    write_text(fs::path(config.output_dir) / "run_meta.json", meta_for(ctx).dump(2) + "\n");
  } catch (const Error& e) {
    err << "wavelab: " << e.what() << '\n';
    return is_usage_error(e.kind()) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "wavelab: " << e.what() << '\n';
    return kExitFailure;
  }
  return ctx.failed ? kExitFailure : kExitOk;
}

int run_command_line(int argc, const char* const* argv, const RunOptions& options) {
  std::ostream& err = options.err ? *options.err : std::cerr;
  CLI::App app{"wavelab: damped wave laboratory"};
  std::string subcommand, config_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("subcommand", subcommand,
                 "simulate | decay | global-bound | oracle-compare | verify-inequalities | plot");
  app.add_option("--config", config_path, "configuration file");
  app.add_option("--seed", seed, "root RNG seed (overrides [run] seed)");
  app.add_flag("--quiet", quiet, "suppress the summary");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    err << "wavelab: " << e.what() << '\n';
    return kExitUsage;
  }

  RunConfig config;
  try {
    std::optional<Subcommand> cmd;
    if (!subcommand.empty()) cmd = parse_subcommand(subcommand);
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read config " + config_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    config = parse_config(text, cmd);
  } catch (const Error& e) {
    err << "wavelab: " << e.what() << '\n';
    return kExitUsage;
  }
  if (seed) config.seed = *seed;
  RunOptions opts = options;
  opts.quiet = opts.quiet || quiet;
  return run(config, opts);
}

}  // namespace wavelab

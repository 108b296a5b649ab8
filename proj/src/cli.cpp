#include "polygen/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "polygen/analysis.hpp"
#include "polygen/emit.hpp"
#include "polygen/errors.hpp"

namespace polygen {

namespace {

std::string ordering_note(const OrderingRule& rule) {
  switch (rule.kind) {
    case OrderingKind::lexicographic:
      return "lexicographically";
    case OrderingKind::contiguity:
      return "by contiguity";
    case OrderingKind::fixed_mu:
      return "by fixed permutation mu=" + std::to_string(rule.mu);
    case OrderingKind::random:
      return "randomly with seed " + std::to_string(rule.rng_seed);
  }
  return "lexicographically";
}

DetectOptions detect_options(const RunConfig& config) {
  DetectOptions options;
  options.tol_asymptotic = config.tol_asymptotic;
  return options;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string fmt17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

unsigned worker_count(std::size_t cells) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("POLYGEN_THREADS")) {
    char* end = nullptr;
    const unsigned long requested = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && requested > 0)
      workers = static_cast<unsigned>(std::min<unsigned long>(requested, 256));
  }
  return static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(cells, 1)));
}

SolveOptions solve_options(const RunConfig& config) {
  SolveOptions options;
  options.root.collision_tol = config.collision_tol;
  return options;
}

/// Rescales states and stored coefficients by (1 + perturb). The two scale
/// inconsistently under Vieta (coefficients would need powers), so every
/// verification check must notice a nonzero perturbation.
void perturb_trajectory(Trajectory& traj, double perturb) {
  const Complex factor(1.0 + perturb, 0.0);
  for (RootSet& state : traj.states)
    for (Complex& value : state.values) value *= factor;
  for (CoeffVector& coeffs : traj.coeffs)
    for (Complex& value : coeffs) value *= factor;
}

std::optional<TaxonomyReport> taxonomy_for(const RunConfig& config) {
  if (config.seed.kind == SeedKind::affine)
    return classify_parameters(config.seed.affine());
  if (config.seed.kind == SeedKind::q_affine)
    return classify_parameters(config.seed.q_affine().base);
  return std::nullopt;
}

std::optional<PeriodicityConditionReport> condition_for(const RunConfig& config) {
  if (config.seed.kind != SeedKind::second_order_multiplicative)
    return std::nullopt;
  const SecondOrderParams& params = config.seed.second_order();
  if (!params.autonomous) return std::nullopt;
  std::vector<MultiplierClass> classes;
  classes.reserve(params.a_const.size());
  for (Complex a : params.a_const) classes.push_back(classify_multiplier(a));
  const std::optional<long> rotation_period = predicted_period(classes);
  if (!rotation_period) return std::nullopt;
  for (const MultiplierClass& cls : classes)
    if (cls.kind != MultiplierKind::rational_rotation) return std::nullopt;
  try {
    return example4_condition_check(config.initial[0], config.initial[1], params,
                                    *rotation_period, config.tol_exact);
  } catch (const numerical_error&) {
    return std::nullopt;  // degenerate initial data; the check is advisory
  }
}

SimulateReport build_simulate_report(const RunConfig& config,
                                     const std::string& subject,
                                     const Trajectory& traj) {
  SimulateReport report;
  report.subject = subject;
  report.depth = config.depth;
  report.arity = config.seed.arity;
  report.steps = config.steps;
  report.mode = config.mode == SolveMode::closed_form ? "closed_form" : "iterated";
  report.tolerances = {config.tol_exact, config.tol_asymptotic,
                       config.collision_tol};
  report.set_period =
      detect_period(traj, config.max_period, config.tol_exact, detect_options(config));
  if (config.display_ordering.kind != OrderingKind::lexicographic)
    report.ordered_period = detect_period_ordered(traj, config.max_period,
                                                  config.tol_exact,
                                                  detect_options(config));
  report.taxonomy = taxonomy_for(config);
  report.condition = condition_for(config);
  for (std::size_t ell = 0; ell < traj.length(); ++ell) {
    if (traj.non_generic[ell]) ++report.non_generic_steps;
    if (traj.ambiguous[ell]) ++report.ambiguous_steps;
  }
  report.divergence_truncated = traj.divergence_truncated;
  return report;
}

void warn_flags(const SimulateReport& report, std::ostream& err) {
  if (report.non_generic_steps > 0)
    err << "warning: " << report.non_generic_steps
        << " step(s) flagged non-generic (near-collision of zeros)\n";
  if (report.ambiguous_steps > 0)
    err << "warning: " << report.ambiguous_steps
        << " step(s) flagged ambiguous (ordering not uniquely determined)\n";
  if (report.divergence_truncated)
    err << "warning: trajectory truncated at the divergence threshold\n";
}

int cmd_simulate(const RunConfig& config, const std::string& subject,
                 const std::string& out_dir, const std::string& format,
                 std::ostream& out, std::ostream& err) {
  const Trajectory traj = compute_trajectory(config);
  const SimulateReport report = build_simulate_report(config, subject, traj);
  warn_flags(report, err);

  atomic_write_file(join_path(out_dir, "report.json"),
                    simulate_report_json(report));
  out << "subject: " << subject << '\n';
  out << "verdict: " << verdict_name(report.set_period.verdict) << '\n';
  if (report.set_period.period) out << "period: " << *report.set_period.period << '\n';
  if (report.ordered_period) {
    out << "ordered verdict: " << verdict_name(report.ordered_period->verdict)
        << '\n';
    if (report.ordered_period->period)
      out << "ordered period: " << *report.ordered_period->period << '\n';
  }
  out << "wrote " << join_path(out_dir, "report.json") << '\n';

  if (format == "csv" || format == "svg") {
    const std::string note = ordering_note(config.display_ordering);
    atomic_write_file(join_path(out_dir, "trajectory.csv"),
                      trajectory_csv(traj, note));
    out << "wrote " << join_path(out_dir, "trajectory.csv") << '\n';
  }
  if (format == "svg") {
    atomic_write_file(join_path(out_dir, "series.svg"),
                      series_svg(traj, subject + ": Re and Im vs time"));
    atomic_write_file(join_path(out_dir, "plane.svg"),
                      plane_svg(traj, subject + ": complex plane"));
    out << "wrote " << join_path(out_dir, "series.svg") << '\n';
    out << "wrote " << join_path(out_dir, "plane.svg") << '\n';
  }
  return 0;
}

int cmd_reproduce(const std::string& name, const std::string& out_dir,
                  std::ostream& out) {
  const ExamplePreset preset = example_preset(name);
  RunConfig config = preset_run_config(preset);
  config.steps = preset.plot_steps;
  const Trajectory traj = compute_trajectory(config);
  const std::string note = ordering_note(preset.display_ordering);

  const auto emit = [&](const std::string& suffix, const std::string& content) {
    const std::string path = join_path(out_dir, name + suffix);
    atomic_write_file(path, content);
    out << "wrote " << path << '\n';
  };
  emit("_trajectory.csv", trajectory_csv(traj, note));
  emit("_re.csv", component_series_csv(traj, false));
  emit("_im.csv", component_series_csv(traj, true));
  emit("_reim.svg", series_svg(traj, "example " + name + ": Re and Im vs time"));
  if (preset.plane_figure)
    emit("_plane.svg", plane_svg(traj, "example " + name + ": complex plane"));
  return 0;
}

int cmd_verify(const RunConfig& config, const std::string& subject,
               const std::string& out_dir, std::ostream& out) {
  const VerifyReport report = run_verification(config, subject);
  atomic_write_file(join_path(out_dir, "verify.json"), verify_report_json(report));
  out << "subject: " << subject << '\n';
  for (const CheckResult& check : report.checks)
    out << check.name << ": max " << fmt17(check.max_residual) << " tol "
        << fmt17(check.tolerance) << (check.pass ? " PASS" : " FAIL") << '\n';
  out << (report.pass ? "PASS" : "FAIL") << '\n';
  return report.pass ? 0 : 1;
}

struct SweepRow {
  std::vector<Complex> a;
  std::string predicted_label;
  std::optional<long> predicted_period;
  std::string detected_verdict;
  std::optional<int> detected_period;
  std::string agree = "skipped";
  std::string error;
};

SweepRow run_sweep_cell(const SweepConfig& sweep, std::vector<Complex> a) {
  SweepRow row;
  row.a = std::move(a);
  try {
    const TaxonomyReport taxonomy = classify_parameters({row.a, sweep.b});
    row.predicted_label = taxonomy_name(taxonomy.label);
    row.predicted_period = taxonomy.period;

    const GenerationSpec spec{make_affine_seed(row.a, sweep.b), 0, {}};
    const Trajectory traj = solve_initial_value(
        spec, {sweep.initial}, sweep.steps, SolveMode::closed_form, {});
    const PeriodReport report =
        detect_period(traj, sweep.max_period, sweep.tol_exact, {});
    row.detected_verdict = verdict_name(report.verdict);
    row.detected_period = report.period;

    if (taxonomy.label == TaxonomyLabel::inconclusive) {
      row.agree = "skipped";
      return row;
    }
    bool ok = false;
    switch (taxonomy.label) {
      case TaxonomyLabel::isochronous:
        ok = report.verdict == Verdict::exact_periodic;
        break;
      case TaxonomyLabel::asymptotically_isochronous:
        ok = report.verdict == Verdict::asymptotically_periodic;
        break;
      case TaxonomyLabel::convergent:
        ok = report.verdict == Verdict::convergent;
        break;
      case TaxonomyLabel::divergent:
        ok = report.verdict == Verdict::divergent;
        break;
      case TaxonomyLabel::inconclusive:
        break;
    }
    if (ok && taxonomy.period)
      ok = report.period &&
           static_cast<long>(*report.period) == *taxonomy.period;
    row.agree = ok ? "true" : "false";
  } catch (const std::exception& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), ',', ';');
    std::replace(message.begin(), message.end(), '\n', ' ');
    row.error = std::move(message);
    row.agree = "skipped";
  }
  return row;
}

int cmd_sweep(const SweepConfig& sweep, const std::string& out_dir,
              std::ostream& out) {
  std::vector<std::size_t> sizes;
  sizes.reserve(sweep.axes.size());
  std::size_t total = 1;
  for (const auto& axis : sweep.axes) {
    sizes.push_back(axis.size());
    total *= axis.size();
  }

  const auto cell_of = [&](std::size_t index) {
    std::vector<Complex> a(sweep.axes.size());
    for (std::size_t m = sweep.axes.size(); m-- > 0;) {
      a[m] = sweep.axes[m][index % sizes[m]];
      index /= sizes[m];
    }
    return a;  // first axis varies slowest
  };

  std::vector<SweepRow> rows(total);
  const unsigned workers = worker_count(total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i)
      rows[i] = run_sweep_cell(sweep, cell_of(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total;
             i = next.fetch_add(1))
          rows[i] = run_sweep_cell(sweep, cell_of(i));
      });
    }
    for (std::thread& worker : pool) worker.join();
  }

  std::ostringstream csv;
  for (std::size_t m = 1; m <= sweep.axes.size(); ++m)
    csv << (m == 1 ? "" : ",") << 'a' << m << "_re,a" << m << "_im";
  csv << ",predicted_label,predicted_period,detected_verdict,detected_period,"
         "agree,error\n";
  std::size_t agreed = 0, disagreed = 0, skipped = 0;
  for (const SweepRow& row : rows) {
    for (std::size_t m = 0; m < row.a.size(); ++m)
      csv << (m == 0 ? "" : ",") << fmt17(row.a[m].real()) << ','
          << fmt17(row.a[m].imag());
    csv << ',' << row.predicted_label << ',';
    if (row.predicted_period) csv << *row.predicted_period;
    csv << ',' << row.detected_verdict << ',';
    if (row.detected_period) csv << *row.detected_period;
    csv << ',' << row.agree << ',' << row.error << '\n';
    if (row.agree == "true")
      ++agreed;
    else if (row.agree == "false")
      ++disagreed;
    else
      ++skipped;
  }
  atomic_write_file(join_path(out_dir, "sweep.csv"), csv.str());
  out << total << " cells: " << agreed << " agree, " << disagreed
      << " disagree, " << skipped << " skipped\n";
  out << "wrote " << join_path(out_dir, "sweep.csv") << '\n';
  return 0;
}

int cmd_detect_period(const std::string& input_path, int max_period, double tol,
                      std::ostream& out) {
  std::ifstream in(input_path, std::ios::binary);
  if (!in) throw config_error("cannot read trajectory CSV: " + input_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const Trajectory traj = parse_trajectory_csv(buffer.str());
  DetectOptions options;
  const PeriodReport report = detect_period(traj, max_period, tol, options);
  out << period_report_json(report, tol, options.tol_asymptotic);
  return 0;
}

}  // namespace

RunConfig preset_run_config(const ExamplePreset& preset) {
  RunConfig config;
  config.seed = preset.seed;
  config.depth = preset.depth;
  config.lifts = preset.lifts;
  config.display_ordering = preset.display_ordering;
  config.initial = preset.initial;
  config.steps = preset.analysis_steps;
  config.max_period = preset.max_period;
  return config;
}

Trajectory compute_trajectory(const RunConfig& config) {
  const GenerationSpec spec{config.seed, config.depth, config.lifts};
  Trajectory traj = run_generation(spec, config.initial, config.steps,
                                   config.mode, solve_options(config));
  return order_trajectory(std::move(traj), config.display_ordering);
}

VerifyReport run_verification(const RunConfig& config,
                              const std::string& subject) {
  VerifyReport report;
  report.subject = subject;
  const GenerationSpec spec{config.seed, config.depth, config.lifts};
  const SolveOptions options = solve_options(config);
  Trajectory closed = run_generation(spec, config.initial, config.steps,
                                     SolveMode::closed_form, options);
  const Trajectory iterated = run_generation(spec, config.initial, config.steps,
                                             SolveMode::iterated, options);
  if (config.perturb != 0.0) perturb_trajectory(closed, config.perturb);

  double mode_max = 0.0;
  const std::size_t common = std::min(closed.length(), iterated.length());
  for (std::size_t ell = 0; ell < common; ++ell)
    mode_max =
        std::max(mode_max, set_distance(closed.states[ell], iterated.states[ell]));

  double key_max = 0.0;
  for (std::size_t ell = 0; ell + 1 < closed.length(); ++ell)
    key_max = std::max(
        key_max, verify_key_identity(closed.states[ell], closed.states[ell + 1],
                                     closed.coeffs[ell], closed.coeffs[ell + 1]));

  double vieta_max = 0.0;
  for (std::size_t ell = 0; ell < closed.length(); ++ell) {
    const CoeffVector from_zeros = coefficients_from_zeros(closed.states[ell]);
    for (std::size_t m = 0; m < from_zeros.size(); ++m)
      vieta_max =
          std::max(vieta_max, std::abs(from_zeros[m] - closed.coeffs[ell][m]));
  }

  const double tol = config.tol_exact;
  report.checks = {
      CheckResult{"mode_equivalence", mode_max, tol, mode_max <= tol},
      CheckResult{"key_identity", key_max, tol, key_max <= tol},
      CheckResult{"vieta_round_trip", vieta_max, tol, vieta_max <= tol},
  };
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& check) { return check.pass; });
  return report;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "polygen: solvable discrete-time dynamics of polynomial zero sets",
      "polygen"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  double tol = 1e-9;
  long steps = 0;
  std::string preset_name;
  double perturb = 0.0;
  std::string input_path;
  int max_period = 20;

  CLI::Option* opt_config =
      app.add_option("--config", config_path, "JSON config file (schema 1)");
  app.add_option("--out", out_dir, "output directory (default .)");
  CLI::Option* opt_tol =
      app.add_option("--tol", tol, "exact-match tolerance override");
  CLI::Option* opt_steps =
      app.add_option("--steps", steps, "trajectory horizon override");
  app.add_option("--format", format, "simulate output format")
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  CLI::App* sim = app.add_subcommand(
      "simulate", "solve a configured run and report detected periodicity");
  sim->fallthrough();
  CLI::Option* sim_preset =
      sim->add_option("--preset", preset_name, "built-in example preset");

  CLI::App* ver =
      app.add_subcommand("verify", "run consistency checks on a configured run");
  ver->fallthrough();
  CLI::Option* ver_preset =
      ver->add_option("--preset", preset_name, "built-in example preset");
  ver->add_option("--perturb", perturb,
                  "inject a relative perturbation (negative control)");

  CLI::App* rep = app.add_subcommand(
      "reproduce", "emit the data series and figures of a built-in example");
  rep->fallthrough();
  std::string reproduce_name;
  rep->add_option("name", reproduce_name, "preset name (1a..3b, 4)")->required();

  CLI::App* swp = app.add_subcommand(
      "sweep", "classify a parameter grid and compare with detection");
  swp->fallthrough();

  CLI::App* det = app.add_subcommand("detect-period",
                                     "scan a trajectory CSV for periodicity");
  det->fallthrough();
  det->add_option("input", input_path, "trajectory CSV path")->required();
  det->add_option("--max-period", max_period, "largest lag scanned");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const auto configured_run = [&](CLI::Option* preset_option) {
    if (preset_option->count() > 0 && opt_config->count() > 0)
      throw config_error("choose either --preset or --config, not both");
    RunConfig config;
    std::string subject;
    if (preset_option->count() > 0) {
      config = preset_run_config(example_preset(preset_name));
      subject = preset_name;
    } else if (opt_config->count() > 0) {
      config = load_config(config_path);
      subject = config_path;
    } else {
      throw config_error("this command needs --preset or --config");
    }
    if (opt_steps->count() > 0) {
      if (steps < config.seed.order())
        throw config_error("--steps must be at least the seed order");
      config.steps = steps;
    }
    if (opt_tol->count() > 0) {
      if (!(tol > 0.0)) throw config_error("--tol must be positive");
      config.tol_exact = tol;
    }
    return std::make_pair(config, subject);
  };

  try {
    if (sim->parsed()) {
      const auto [config, subject] = configured_run(sim_preset);
      return cmd_simulate(config, subject, out_dir, format, out, err);
    }
    if (ver->parsed()) {
      auto [config, subject] = configured_run(ver_preset);
      config.perturb += perturb;
      return cmd_verify(config, subject, out_dir, out);
    }
    if (rep->parsed()) return cmd_reproduce(reproduce_name, out_dir, out);
    if (swp->parsed()) {
      if (opt_config->count() == 0)
        throw config_error("sweep needs --config with a 'sweep' block");
      SweepConfig sweep = load_sweep_config(config_path);
      if (opt_tol->count() > 0) {
        if (!(tol > 0.0)) throw config_error("--tol must be positive");
        sweep.tol_exact = tol;
      }
      if (opt_steps->count() > 0) {
        if (steps < 3 * sweep.max_period)
          throw config_error("--steps must be at least 3 * max_period");
        sweep.steps = steps;
      }
      return cmd_sweep(sweep, out_dir, out);
    }
    if (det->parsed()) {
      if (max_period < 1) throw config_error("--max-period must be positive");
      if (opt_tol->count() > 0 && !(tol > 0.0))
        throw config_error("--tol must be positive");
      return cmd_detect_period(input_path, max_period, tol, out);
    }
    err << "error: no command given\n" << app.help();
    return 2;
  } catch (const config_error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace polygen

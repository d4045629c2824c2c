#include "signvote/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "signvote/cli/config.hpp"
#include "signvote/cli/csv.hpp"
#include "signvote/cli/svg.hpp"
#include "signvote/errors.hpp"

namespace signvote::cli {
namespace fs = std::filesystem;

namespace {

std::string g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Exact wrong-sign probability for a single unit-variance sample at SNR s.
double exact_wrong_sign(NoiseFamily family, double s) {
  switch (family) {
    case NoiseFamily::kGaussian:
      return normal_cdf(-s);
    case NoiseFamily::kUniform:
      return s < std::numbers::sqrt3 ? 0.5 * (1.0 - s / std::numbers::sqrt3) : 0.0;
    case NoiseFamily::kLaplace:
      return 0.5 * std::exp(-std::numbers::sqrt2 * s);
  }
  return 0.0;
}

std::string file_token(std::string_view s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
  return out;
}

// Loads the config, applies the seed override and reports errors with the
// documented exit codes. Returns nullopt after printing a diagnostic.
std::optional<RunConfig> load_for_command(const fs::path& path, const RunOptions& options, std::ostream& err,
                                          int& code) {
  try {
    RunConfig config = load_run_config(path);
    if (options.seed) config.master_seed = *options.seed;
    return config;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitUsage;
  }
  return std::nullopt;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InfeasibleError*>(&e)) return kExitInfeasible;
  if (dynamic_cast<const InputError*>(&e)) return kExitUsage;
  return kExitUsage;
}

}  // namespace

int cmd_run(const fs::path& config_path, const RunOptions& options, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto config = load_for_command(config_path, options, err, code);
  if (!config) return code;
  RunResult result;
  try {
    result = run(*config, options.threads);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  fs::create_directories(options.out_dir);
  const std::string csv = trajectory_csv(result);
  write_file_atomic(options.out_dir / "trajectory.csv", csv);
  write_file_atomic(options.out_dir / "manifest.json", run_manifest(*config).dump(2) + "\n");

  if (options.self_check) {
    if (auto problem = check_csv(csv, trajectory_schema(), config->iterations); !problem.empty()) {
      err << "self-check failed: " << problem << '\n';
      return kExitVerifyFailed;
    }
    out << "self-check: trajectory.csv conforms\n";
  }
  out << "steps: " << result.trajectory.size() << "\n"
      << "initial objective: " << g9(result.trajectory.front().objective_value) << "\n"
      << "final objective: " << g9(result.final_objective) << "\n"
      << "mean flip rate: " << g9(result.mean_flip_rate()) << "\n"
      << "wall time (s): " << g9(result.wall_time_seconds) << "\n"
      << "wrote " << (options.out_dir / "trajectory.csv").string() << "\n";
  return kExitOk;
}

int cmd_sweep(const fs::path& config_path, const SweepOptions& so, const RunOptions& options, std::ostream& out,
              std::ostream& err) {
  if (so.values.empty()) {
    err << "error: sweep needs at least one axis value\n";
    return kExitUsage;
  }
  if (so.repeats == 0) {
    err << "error: repeats must be at least 1\n";
    return kExitUsage;
  }
  if (so.panel_axis && (*so.panel_axis == so.axis || so.panel_values.empty())) {
    err << "error: panel axis must differ from the sweep axis and have values\n";
    return kExitUsage;
  }
  int code = kExitOk;
  auto base = load_for_command(config_path, options, err, code);
  if (!base) return code;

  struct PanelRun {
    std::string value;  // empty without a panel axis
    std::vector<SweepPoint> points;
  };
  std::vector<PanelRun> panels;
  const std::vector<std::string> no_panel{""};
  for (const auto& pv : so.panel_axis ? so.panel_values : no_panel) {
    RunConfig config = *base;
    if (so.panel_axis) {
      try {
        apply_axis(config, *so.panel_axis, pv);
      } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      }
    }
    panels.push_back({pv, sweep(config, so.axis, so.values, so.repeats, options.threads)});
  }

  fs::create_directories(options.out_dir / "runs");
  const std::string axis_name(to_string(so.axis));
  std::vector<Panel> charts;
  bool any_failed = false;
  std::string check_problem;

  for (const auto& panel : panels) {
    const std::string prefix =
        so.panel_axis ? std::string(to_string(*so.panel_axis)) + "_" + file_token(panel.value) + "__" : "";
    const std::string summary_name =
        so.panel_axis ? "summary_" + std::string(to_string(*so.panel_axis)) + "_" + file_token(panel.value) + ".csv"
                      : "summary.csv";
    const std::string summary = sweep_summary_csv(panel.points);
    write_file_atomic(options.out_dir / summary_name, summary);
    if (options.self_check && check_problem.empty())
      check_problem = check_csv(summary, sweep_summary_schema(), panel.points.size());

    std::map<std::string, std::vector<fs::path>> written;
    for (const auto& point : panel.points) {
      if (!point.result) {
        any_failed = true;
        err << "point " << (so.panel_axis ? std::string(to_string(*so.panel_axis)) + "=" + panel.value + " " : "")
            << axis_name << "=" << point.axis_value << " repeat " << point.repeat << " failed: " << point.error
            << '\n';
        continue;
      }
      const fs::path path = options.out_dir / "runs" /
                            (prefix + axis_name + "_" + file_token(point.axis_value) + "__r" +
                             std::to_string(point.repeat) + ".csv");
      const std::string csv = trajectory_csv(*point.result);
      write_file_atomic(path, csv);
      written[point.axis_value].push_back(path);
      if (options.self_check && check_problem.empty())
        check_problem = check_csv(csv, trajectory_schema(), point.result->trajectory.size());
    }

    if (so.svg) {
      Panel chart;
      chart.title = so.panel_axis ? std::string(to_string(*so.panel_axis)) + " = " + panel.value
                                  : "sweep over " + axis_name;
      chart.x_label = "step";
      chart.y_label = "objective (mean over repeats)";
      for (const auto& value : so.values) {
        auto it = written.find(value);
        if (it == written.end()) continue;
        Series series;
        series.label = axis_name + " = " + value;
        for (const auto& path : it->second) {
          const CsvTable table = parse_csv(read_file(path));
          if (series.x.empty()) {
            series.x.resize(table.rows.size());
            series.y.assign(table.rows.size(), 0.0);
            for (std::size_t r = 0; r < table.rows.size(); ++r) series.x[r] = std::stod(table.rows[r][0]);
          }
          for (std::size_t r = 0; r < table.rows.size() && r < series.y.size(); ++r)
            series.y[r] += std::stod(table.rows[r][1]) / static_cast<double>(it->second.size());
        }
        chart.series.push_back(std::move(series));
      }
      charts.push_back(std::move(chart));
    }
  }

  if (so.svg) write_file_atomic(options.out_dir / "sweep.svg", line_chart_svg(charts));

  nlohmann::json manifest;
  manifest["base_config"] = to_json(*base);
  manifest["sweep"] = {{"axis", axis_name}, {"values", so.values}, {"repeats", so.repeats}};
  if (so.panel_axis) {
    manifest["sweep"]["panel_axis"] = std::string(to_string(*so.panel_axis));
    manifest["sweep"]["panel_values"] = so.panel_values;
  }
  manifest["versions"] = {{"signvote", std::string(kVersion)}, {"config_format", kConfigFormat}};
  write_file_atomic(options.out_dir / "sweep_manifest.json", manifest.dump(2) + "\n");

  if (options.self_check) {
    if (!check_problem.empty()) {
      err << "self-check failed: " << check_problem << '\n';
      return kExitVerifyFailed;
    }
    out << "self-check: all CSV files conform\n";
  }
  std::size_t total = 0;
  for (const auto& p : panels) total += p.points.size();
  out << "runs: " << total << "\nwrote " << options.out_dir.string() << "\n";
  return any_failed ? kExitInfeasible : kExitOk;
}

std::string bound_report_csv(const BoundReport& r) {
  const auto& in = r.inputs;
  std::string out =
      "q,alpha,p,s,sigma_l1,smoothness_l1,f0_minus_fstar,k_iters,lemma1_wrong_sign_bound,vote_failure_bound_raw,"
      "vote_failure_bound,vote_failure_bound_snr_raw,rate_rhs_proof_form,rate_rhs_statement_form,alpha_threshold,"
      "tolerable_byzantine_count\n";
  out += std::to_string(in.q) + ',' + format_real(in.alpha) + ',' + format_real(in.p) + ',' + optional_real(in.s) +
         ',' + format_real(in.sigma_l1) + ',' + format_real(in.smoothness_l1) + ',' + format_real(in.f0_minus_fstar) +
         ',' + std::to_string(in.k_iters) + ',' + optional_real(r.lemma1_wrong_sign_bound) + ',' +
         format_real(r.vote_failure_bound_raw) + ',' + format_real(r.vote_failure_bound) + ',' +
         optional_real(r.vote_failure_bound_snr_raw) + ',' + format_real(r.rate_rhs_proof_form) + ',' +
         format_real(r.rate_rhs_statement_form) + ',' + format_real(r.alpha_threshold) + ',' +
         std::to_string(r.tolerable_byzantine_count) + '\n';
  return out;
}

std::string bound_report_text(const BoundReport& r) {
  const auto& in = r.inputs;
  std::string out;
  out += "inputs: q=" + std::to_string(in.q) + " alpha=" + g9(in.alpha) + " p=" + g9(in.p) +
         (in.s ? " s=" + g9(*in.s) : std::string()) + " sigma_l1=" + g9(in.sigma_l1) +
         " smoothness_l1=" + g9(in.smoothness_l1) + " f0_minus_fstar=" + g9(in.f0_minus_fstar) +
         " k_iters=" + std::to_string(in.k_iters) + "\n";
  if (r.lemma1_wrong_sign_bound) out += "wrong-sign bound at s:       " + g9(*r.lemma1_wrong_sign_bound) + "\n";
  out += "vote failure bound (raw):    " + g9(r.vote_failure_bound_raw) + (r.vacuous() ? "  (vacuous, > 1)" : "") +
         "\n";
  out += "vote failure bound:          " + g9(r.vote_failure_bound) + "\n";
  if (r.vote_failure_bound_snr_raw) out += "vote failure bound, SNR form: " + g9(*r.vote_failure_bound_snr_raw) + "\n";
  out += "rate RHS (proof_final form): " + g9(r.rate_rhs_proof_form) + "\n";
  out += "rate RHS (statement form):   " + g9(r.rate_rhs_statement_form) + "\n";
  out += "alpha threshold 1-1/(2p):    " + g9(r.alpha_threshold) + "\n";
  out += "tolerable byzantine count:   " + std::to_string(r.tolerable_byzantine_count) + " of " +
         std::to_string(in.q) + "\n";
  return out;
}

int cmd_bounds(const BoundInputs& inputs, OutputFormat format, std::ostream& out, std::ostream& err) {
  try {
    const BoundReport report = compute_report(inputs);
    out << (format == OutputFormat::kCsv ? bound_report_csv(report) : bound_report_text(report));
    return kExitOk;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

std::vector<VotePoint> default_vote_grid() {
  std::vector<VotePoint> grid;
  for (std::uint32_t q : {9u, 27u, 99u}) {
    for (double p : {0.7, 0.8, 0.9}) {
      for (double alpha : {0.0, 0.2, alpha_threshold(p) - 0.05}) {
        if ((1.0 - alpha) * p - 0.5 > kBoundaryTolerance) grid.push_back({q, alpha, p});
      }
    }
  }
  grid.push_back({9, 1.0 / 3.0, 0.8});
  return grid;
}

int cmd_verify(VerifySuite suite, const VerifyBudget& budget, std::ostream& out, std::ostream& err) {
  int failures = 0;
  auto report = [&](bool ok, const std::string& line) {
    out << (ok ? "PASS " : "FAIL ") << line << '\n';
    if (!ok) ++failures;
  };

  try {
    if (suite == VerifySuite::kLemma1 || suite == VerifySuite::kAll) {
      std::uint32_t index = 0;
      for (auto family : {NoiseFamily::kGaussian, NoiseFamily::kUniform, NoiseFamily::kLaplace}) {
        for (double s : budget.snr_values) {
          const Estimate p = estimate_p({family, 1.0}, s, 1, budget.samples,
                                        derive_stream(budget.seed, index++, 0, kMonteCarloSubstream));
          const double wrong = 1.0 - p.value;
          const double bound = lemma1_bound(s);
          const double exact = exact_wrong_sign(family, s);
          const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(budget.samples));
          const std::string where = "lemma1 " + std::string(to_string(family)) + " S=" + g9(s);
          report(wrong <= bound + 3.0 * se,
                 where + " empirical_wrong=" + g9(wrong) + " bound=" + g9(bound) + " margin=" + g9(bound - wrong));
          report(std::abs(wrong - exact) <= 3.0 * se,
                 where + " empirical_wrong=" + g9(wrong) + " exact=" + g9(exact) + " |diff|/se=" +
                     (se > 0 ? g9(std::abs(wrong - exact) / se) : std::string(wrong == exact ? "0" : "inf")));
        }
      }
    }

    if (suite == VerifySuite::kAppendix || suite == VerifySuite::kAll) {
      const AppendixReport r = verify_appendix_cases(budget.grid_max, budget.grid_step);
      report(r.passed(), "appendix grid points=" + std::to_string(r.grid_points) +
                             " violations=" + std::to_string(r.violations.size()));
      for (const auto& v : r.violations)
        out << "  violation " << v.check << " at S=" << g9(v.s) << " value=" << g9(v.value) << '\n';
      report(std::abs(r.boundary_value - 0.4167) <= 1e-3,
             "appendix case-1 expression at S=2/sqrt(3): " + g9(r.boundary_value) + " (expected ~0.4167)");
      report(r.first_branch_max < 0.5, "appendix first-branch max=" + g9(r.first_branch_max) +
                                           " (decreasing until S~" + g9(r.turning_point) + ")");
      report(r.case1_max <= 0.5, "appendix case-1 max over grid=" + g9(r.case1_max) + " at S=" + g9(r.case1_max_at) +
                                     " min slack to 1/2=" + g9(r.case1_min_slack));
      report(r.piecewise_min_slack >= 0.0, "appendix piecewise <= unified, min slack=" + g9(r.piecewise_min_slack) +
                                               " at S=" + g9(r.piecewise_min_slack_at));
    }

    if (suite == VerifySuite::kVote || suite == VerifySuite::kAll) {
      const auto points = budget.vote_points.empty() ? default_vote_grid() : budget.vote_points;
      std::uint32_t index = 0;
      for (const auto& pt : points) {
        const std::string where = "vote q=" + std::to_string(pt.q) + " alpha=" + g9(pt.alpha) + " p=" + g9(pt.p);
        double bound = 0.0;
        try {
          bound = vote_failure_bound(pt.q, pt.alpha, pt.p);
        } catch (const InfeasibleError& e) {
          report(false, where + " infeasible: " + e.what());
          continue;
        }
        const Estimate est = estimate_vote_failure(pt.q, pt.alpha, pt.p, budget.trials,
                                                   derive_stream(budget.seed, index++, 0, kMonteCarloSubstream));
        const double exact = exact_vote_failure(pt.q, pt.alpha, pt.p);
        const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(budget.trials));
        report(est.value <= bound + 3.0 * se, where + " empirical=" + g9(est.value) + " bound_raw=" + g9(bound) +
                                                  (bound > 1.0 ? " (vacuous)" : "") +
                                                  " margin=" + g9(bound - est.value));
        report(std::abs(est.value - exact) <= 3.0 * se,
               where + " empirical=" + g9(est.value) + " exact=" + g9(exact) + " se=" + g9(se));
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << '\n';
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace signvote::cli

// signvote: run, sweep, bound and verify signSGD majority-vote simulations.
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "signvote/cli/commands.hpp"
#include "signvote/cli/config.hpp"

namespace {

using namespace signvote;
using namespace signvote::cli;

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("SIGNVOTE_OUT_DIR"); env && *env) return env;
  return "out";
}


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signSGD with majority vote under Byzantine workers: simulate, bound, verify"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = default_out_dir().string();
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  bool self_check = false;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config or run manifest")->required();
    cmd->add_option("--out", out_dir, "output directory (default $SIGNVOTE_OUT_DIR or ./out)");
    cmd->add_option("--seed", seed, "override master_seed");
    cmd->add_option("--threads", threads, "worker threads; never changes results")->check(CLI::PositiveNumber);
    cmd->add_flag("--self-check", self_check, "validate emitted CSV files against their schema");
  };

  auto* run_cmd = app.add_subcommand("run", "simulate one training run");
  add_run_flags(run_cmd);

  SweepOptions sweep_opts;
  std::string svg = "on";
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and chart it");
  add_run_flags(sweep_cmd);
  const auto axis_names = CLI::IsMember({"byzantine_count", "batch_size", "attack"});
  std::string axis, panel_axis;
  sweep_cmd->add_option("--axis", axis, "byzantine_count | batch_size | attack")->required()->check(axis_names);
  sweep_cmd->add_option("--values", sweep_opts.values, "axis values (batch accepts 't')")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--panel-axis", panel_axis, "second axis, one chart panel per value")->check(axis_names);
  sweep_cmd->add_option("--panel-values", sweep_opts.panel_values, "values of the panel axis")->delimiter(',');
  sweep_cmd->add_option("--repeats", sweep_opts.repeats, "repeats per point")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--svg", svg, "emit sweep.svg")->check(CLI::IsMember({"on", "off"}));

  BoundInputs bound_inputs;
  std::string bounds_config;
  std::string format = "csv";
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the closed-form bounds");
  bounds_cmd->add_option("--config", bounds_config, "JSON object with bound input fields (flags override)");
  bounds_cmd->add_option("--q", bound_inputs.q, "total workers");
  bounds_cmd->add_option("--alpha", bound_inputs.alpha, "adversary fraction");
  bounds_cmd->add_option("--p", bound_inputs.p, "honest correct-sign probability");
  bounds_cmd->add_option("--s", bound_inputs.s, "per-coordinate SNR");
  bounds_cmd->add_option("--sigma-l1", bound_inputs.sigma_l1, "||sigma||_1");
  bounds_cmd->add_option("--smoothness-l1", bound_inputs.smoothness_l1, "||L||_1");
  bounds_cmd->add_option("--f0-minus-fstar", bound_inputs.f0_minus_fstar, "f0 - f*");
  bounds_cmd->add_option("--k-iters", bound_inputs.k_iters, "iterations K (N = K^2)");
  bounds_cmd->add_option("--format", format, "csv | text")->check(CLI::IsMember({"csv", "text"}));

  std::string suite = "all";
  VerifyBudget budget;
  std::vector<std::uint32_t> vote_q;
  std::vector<double> vote_alpha, vote_p;
  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo and grid checks of the bounds");
  verify_cmd->add_option("suite", suite, "lemma1 | appendix | vote | all")
      ->check(CLI::IsMember({"lemma1", "appendix", "vote", "all"}));
  verify_cmd->add_option("--samples", budget.samples, "samples per SNR point");
  verify_cmd->add_option("--trials", budget.trials, "trials per vote point");
  verify_cmd->add_option("--grid-max", budget.grid_max, "largest S on the appendix grid");
  verify_cmd->add_option("--grid-step", budget.grid_step, "appendix grid step");
  verify_cmd->add_option("--snr", budget.snr_values, "SNR values for lemma1")->delimiter(',');
  verify_cmd->add_option("--q", vote_q, "vote point q (with --alpha and --p)")->delimiter(',');
  verify_cmd->add_option("--alpha", vote_alpha, "vote point alpha")->delimiter(',');
  verify_cmd->add_option("--p", vote_p, "vote point p")->delimiter(',');
  verify_cmd->add_option("--seed", budget.seed, "Monte Carlo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunOptions options{out_dir, seed, threads, self_check};

  if (*run_cmd) return cmd_run(config_path, options, std::cout, std::cerr);

  if (*sweep_cmd) {
    sweep_opts.svg = svg == "on";
    sweep_opts.axis = *parse_axis(axis);
    if (!panel_axis.empty()) sweep_opts.panel_axis = parse_axis(panel_axis);
    return cmd_sweep(config_path, sweep_opts, options, std::cout, std::cerr);
  }

  if (*bounds_cmd) {
    BoundInputs inputs = bound_inputs;
    if (!bounds_config.empty()) {
      try {
        inputs = parse_bound_inputs(read_json_file(bounds_config));
      } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      // Explicit flags win over the file.
      if (bounds_cmd->count("--q")) inputs.q = bound_inputs.q;
      if (bounds_cmd->count("--alpha")) inputs.alpha = bound_inputs.alpha;
      if (bounds_cmd->count("--p")) inputs.p = bound_inputs.p;
      if (bounds_cmd->count("--s")) inputs.s = bound_inputs.s;
      if (bounds_cmd->count("--sigma-l1")) inputs.sigma_l1 = bound_inputs.sigma_l1;
      if (bounds_cmd->count("--smoothness-l1")) inputs.smoothness_l1 = bound_inputs.smoothness_l1;
      if (bounds_cmd->count("--f0-minus-fstar")) inputs.f0_minus_fstar = bound_inputs.f0_minus_fstar;
      if (bounds_cmd->count("--k-iters")) inputs.k_iters = bound_inputs.k_iters;
    }
    return cmd_bounds(inputs, format == "csv" ? OutputFormat::kCsv : OutputFormat::kText, std::cout, std::cerr);
  }

  if (*verify_cmd) {
    if (vote_q.size() != vote_alpha.size() || vote_q.size() != vote_p.size()) {
      std::cerr << "error: --q, --alpha and --p must list the same number of values\n";
      return kExitUsage;
    }
    for (std::size_t i = 0; i < vote_q.size(); ++i) budget.vote_points.push_back({vote_q[i], vote_alpha[i], vote_p[i]});
    const VerifySuite s = suite == "lemma1"     ? VerifySuite::kLemma1
                          : suite == "appendix" ? VerifySuite::kAppendix
                          : suite == "vote"     ? VerifySuite::kVote
                                                : VerifySuite::kAll;
    return cmd_verify(s, budget, std::cout, std::cerr);
  }
  return kExitUsage;
}

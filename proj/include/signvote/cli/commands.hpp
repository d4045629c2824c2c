#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "signvote/bounds.hpp"
#include "signvote/sim.hpp"

namespace signvote::cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitInfeasible = 3 };

enum class OutputFormat { kCsv, kText };

struct RunOptions {
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;  // overrides master_seed
  unsigned threads = 1;
  bool self_check = false;
};

// Writes <out_dir>/trajectory.csv and <out_dir>/manifest.json.
int cmd_run(const std::filesystem::path& config_path, const RunOptions& options, std::ostream& out,
            std::ostream& err);

struct SweepOptions {
  SweepAxis axis = SweepAxis::kByzantineCount;
  std::vector<std::string> values;
  // Optional second axis; one chart panel and one summary file per value.
  std::optional<SweepAxis> panel_axis;
  std::vector<std::string> panel_values;
  std::uint32_t repeats = 1;
  bool svg = true;
};

// Writes summary CSV(s), runs/*.csv trajectories, sweep_manifest.json and
// (unless disabled) sweep.svg built from the written trajectory CSVs.
int cmd_sweep(const std::filesystem::path& config_path, const SweepOptions& sweep_options,
              const RunOptions& options, std::ostream& out, std::ostream& err);

std::string bound_report_csv(const BoundReport& report);
std::string bound_report_text(const BoundReport& report);

int cmd_bounds(const BoundInputs& inputs, OutputFormat format, std::ostream& out, std::ostream& err);

enum class VerifySuite { kLemma1, kAppendix, kVote, kAll };

struct VotePoint {
  std::uint32_t q;
  double alpha;
  double p;
};

struct VerifyBudget {
  std::uint64_t samples = 100000;  // per SNR point (lemma1)
  std::uint64_t trials = 100000;   // per (q, alpha, p) point (vote)
  double grid_max = 10.0;
  double grid_step = 0.01;
  std::vector<double> snr_values{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<VotePoint> vote_points;  // empty: the default grid
  std::uint64_t seed = 20240601;
};

std::vector<VotePoint> default_vote_grid();

// Prints one PASS/FAIL line per check; returns 0 iff all pass, else 1.
int cmd_verify(VerifySuite suite, const VerifyBudget& budget, std::ostream& out, std::ostream& err);

}  // namespace signvote::cli

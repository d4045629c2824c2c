#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "signvote/adversary.hpp"
#include "signvote/core.hpp"
#include "signvote/oracle.hpp"
#include "signvote/rng.hpp"

namespace signvote {

// Substream ids within a (seed, worker, step) coordinate.
inline constexpr std::uint32_t kGradientSubstream = 0;
inline constexpr std::uint32_t kMonteCarloSubstream = 1;

struct FleetConfig {
  std::uint32_t q = 27;
  std::uint32_t byzantine_count = 0;
  AttackStrategy attack{AttackKind::kOmniscientOptimal};
  BatchSchedule batch{};
  NoiseModel noise{};

  std::uint32_t honest_count() const { return q - byzantine_count; }
  double alpha() const { return static_cast<double>(byzantine_count) / static_cast<double>(q); }
};

enum class LrSchedule { kConstant, kInvSqrt };

enum class InitKind { kOnes, kZeros, kExplicit };

struct RunConfig {
  Objective objective{};
  FleetConfig fleet{};
  std::uint32_t iterations = 500;
  double initial_lr = 1.0;
  LrSchedule lr_schedule = LrSchedule::kInvSqrt;
  double weight_decay = 0.0;
  std::uint64_t master_seed = 42;
  InitKind x0_kind = InitKind::kOnes;
  GradVector x0_values{};  // used when x0_kind == kExplicit

  double learning_rate(std::uint32_t step) const;
};

// Throws InputError for malformed values and InfeasibleError when there is
// no honest worker (b >= q).
void validate(const RunConfig& config);
GradVector initial_point(const RunConfig& config);

struct StepRecord {
  std::uint32_t step = 0;
  double objective_value = 0.0;  // f(x_t), before the update of this step
  double grad_l1 = 0.0;          // ||g(x_t)||_1
  double lr = 0.0;
  std::uint32_t flipped_coords = 0;  // sign(O_t)_i == -sign(g_i) != 0
  std::uint32_t tie_coords = 0;      // O_t,i == 0

  bool operator==(const StepRecord&) const = default;
};

struct RunResult {
  RunConfig config_echo;
  std::vector<StepRecord> trajectory;
  double final_objective = 0.0;  // f(x_T)
  GradVector final_x;
  double wall_time_seconds = 0.0;

  double mean_flip_rate() const;
};

// Executes the protocol for config.iterations steps. `threads` only changes
// how per-worker sampling is scheduled; results are identical for any value.
RunResult run(const RunConfig& config, unsigned threads = 1);

// Vote-only rounds at a frozen point: honest draws and adversary estimates
// are generated once per round and every listed attack is applied to the
// same draws. Returns flipped-coordinate counts indexed [attack][round].
std::vector<std::vector<std::uint32_t>> frozen_vote_flips(const Objective& objective, const GradVector& x,
                                                          const FleetConfig& fleet,
                                                          std::span<const AttackKind> attacks,
                                                          std::uint32_t rounds, std::uint64_t seed);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  // Set by estimate_p when g_i == 0: "correct" is then measured against +1.
  bool degenerate_reference = false;
};

// Monte Carlo P[sign(g_hat_i) == sign(g_i)] for a scalar batch-averaged
// estimate, with binomial standard error.
Estimate estimate_p(const NoiseModel& noise, double g_i, std::uint32_t n, std::uint64_t samples, RngStream stream);

// Adversary count used by the vote-failure model: floor(alpha q), with
// decimal alphas landing on an integer product rounded to that integer.
std::uint32_t adversary_count(std::uint32_t q, double alpha);

// Monte Carlo of the binomial vote model: M = q - floor(alpha q) honest
// workers each correct with probability p, adversaries never correct;
// failure when Z < q/2.
Estimate estimate_vote_failure(std::uint32_t q, double alpha, double p, std::uint64_t trials, RngStream stream);

// Exact P[Z <= ceil(q/2) - 1] for Z ~ Binomial(q - floor(alpha q), p).
double exact_vote_failure(std::uint32_t q, double alpha, double p);

enum class SweepAxis { kByzantineCount, kBatchSize, kAttack };

struct SweepPoint {
  std::string axis_value;
  std::uint32_t repeat = 0;
  std::uint64_t seed = 0;
  std::optional<RunResult> result;
  std::string error;  // set when the point was infeasible or malformed
};

// Applies one axis value to a config. Batch values are positive integers or
// "t" for the iteration-counter schedule. Throws InputError on bad values.
void apply_axis(RunConfig& config, SweepAxis axis, std::string_view value);

// Seed used for a repeat; shared across axis values so points are compared
// on common random numbers.
std::uint64_t repeat_seed(std::uint64_t master_seed, std::uint32_t repeat);

// values x repeats runs, ordered value-major. Failed points are recorded and
// the sweep continues.
std::vector<SweepPoint> sweep(const RunConfig& base, SweepAxis axis, std::span<const std::string> values,
                              std::uint32_t repeats, unsigned threads = 1);

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);
std::string_view to_string(LrSchedule schedule);

}  // namespace signvote

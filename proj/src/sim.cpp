#include "signvote/sim.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "signvote/errors.hpp"
#include "signvote/parallel.hpp"

namespace signvote {
namespace {

// Per-step sampled state shared by all attacks.
struct StepDraws {
  std::vector<GradVector> honest_estimates;
  std::vector<SignVector> honest_votes;
  std::vector<GradVector> adversary_estimates;
};

// Honest workers occupy ids [0, M), adversaries [M, q). Each worker draws
// from its own stream so the result does not depend on scheduling.
void draw_step(const GradVector& gradient, const FleetConfig& fleet, bool need_adversary_estimates,
               std::uint32_t step, std::uint64_t seed, unsigned threads, StepDraws& draws) {
  const std::uint32_t honest = fleet.honest_count();
  const std::uint32_t adversaries = need_adversary_estimates ? fleet.byzantine_count : 0;
  const std::uint32_t n = fleet.batch.at(step);
  const std::size_t dim = gradient.dim();

  draws.honest_estimates.resize(honest, GradVector(dim));
  draws.honest_votes.resize(honest);
  draws.adversary_estimates.resize(adversaries, GradVector(dim));

  parallel_for(honest + adversaries, threads, [&](std::size_t w) {
    const auto worker = static_cast<std::uint32_t>(w);
    RngStream stream(seed, worker, step, kGradientSubstream);
    GradVector& out = w < honest ? draws.honest_estimates[w] : draws.adversary_estimates[w - honest];
    sample_estimate(gradient.values(), fleet.noise, n, stream, out.values());
    if (w < honest) draws.honest_votes[w] = sign_of_unchecked(out.values());
  });
}

VoteOutcome tally_step(const GradVector& gradient, const StepDraws& draws, const FleetConfig& fleet,
                       AttackKind attack) {
  VoteTally tally;
  tally.sums.assign(gradient.dim(), 0);
  for (const auto& vote : draws.honest_votes) accumulate_vote(tally, vote);
  if (fleet.byzantine_count > 0) {
    AdversaryKnowledge knowledge;
    if (attack == AttackKind::kOmniscientOptimal) knowledge.true_gradient = gradient;
    knowledge.honest_votes = draws.honest_votes;
    knowledge.own_estimates = draws.adversary_estimates;
    for (const auto& vote : adversarial_votes(AttackStrategy{attack}, knowledge, fleet.byzantine_count))
      accumulate_vote(tally, vote);
  }
  auto result = sign_of_tally(tally);
  return {std::move(tally), std::move(result)};
}

std::uint32_t count_flips(const GradVector& gradient, const SignVector& outcome) {
  std::uint32_t flips = 0;
  for (std::size_t i = 0; i < gradient.dim(); ++i) {
    const Sign truth = sign_scalar(gradient[i]);
    if (truth != 0 && outcome[i] == -truth) ++flips;
  }
  return flips;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

double RunConfig::learning_rate(std::uint32_t step) const {
  if (lr_schedule == LrSchedule::kConstant) return initial_lr;
  return initial_lr / std::sqrt(static_cast<double>(step) + 1.0);
}

void validate(const RunConfig& c) {
  if (c.objective.dim == 0) throw InputError("objective dim must be positive");
  if (c.fleet.q == 0) throw InputError("q must be at least 1");
  if (c.fleet.byzantine_count >= c.fleet.q)
    throw InfeasibleError("byzantine_count (" + std::to_string(c.fleet.byzantine_count) + ") must be < q (" +
                          std::to_string(c.fleet.q) + "): at least one honest worker is required");
  if (c.fleet.batch.mode == BatchMode::kConstant && c.fleet.batch.size == 0)
    throw InputError("batch size must be at least 1");
  if (!std::isfinite(c.fleet.noise.sigma) || c.fleet.noise.sigma < 0.0)
    throw InputError("noise sigma must be finite and >= 0");
  if (c.iterations == 0) throw InputError("iterations must be at least 1");
  if (!std::isfinite(c.initial_lr) || c.initial_lr <= 0.0) throw InputError("initial_lr must be > 0");
  if (!std::isfinite(c.weight_decay) || c.weight_decay < 0.0) throw InputError("weight_decay must be >= 0");
  if (c.x0_kind == InitKind::kExplicit) {
    if (c.x0_values.dim() != c.objective.dim)
      throw InputError("x0 has " + std::to_string(c.x0_values.dim()) + " entries, objective dim is " +
                       std::to_string(c.objective.dim));
    c.x0_values.check_finite();
  }
}

GradVector initial_point(const RunConfig& c) {
  switch (c.x0_kind) {
    case InitKind::kOnes:
      return GradVector(c.objective.dim, 1.0);
    case InitKind::kZeros:
      return GradVector(c.objective.dim, 0.0);
    case InitKind::kExplicit:
      return c.x0_values;
  }
  return {};
}

double RunResult::mean_flip_rate() const {
  if (trajectory.empty()) return 0.0;
  const double dim = static_cast<double>(config_echo.objective.dim);
  double acc = 0.0;
  for (const auto& rec : trajectory) acc += static_cast<double>(rec.flipped_coords) / dim;
  return acc / static_cast<double>(trajectory.size());
}

RunResult run(const RunConfig& config, unsigned threads) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  result.config_echo = config;
  result.trajectory.reserve(config.iterations);

  const FleetConfig& fleet = config.fleet;
  const bool need_estimates = fleet.byzantine_count > 0 && fleet.attack.needs_own_estimates();
  GradVector x = initial_point(config);
  StepDraws draws;

  for (std::uint32_t t = 0; t < config.iterations; ++t) {
    const GradVector gradient = true_gradient(config.objective, x);
    StepRecord rec;
    rec.step = t;
    rec.objective_value = objective_value(config.objective, x);
    for (double g : gradient.values()) rec.grad_l1 += std::abs(g);
    rec.lr = config.learning_rate(t);

    draw_step(gradient, fleet, need_estimates, t, config.master_seed, threads, draws);
    const VoteOutcome vote = tally_step(gradient, draws, fleet, fleet.attack.kind);

    rec.flipped_coords = count_flips(gradient, vote.result);
    for (auto s : vote.tally.sums) rec.tie_coords += (s == 0);

    for (std::size_t i = 0; i < x.dim(); ++i)
      x[i] -= rec.lr * (static_cast<double>(vote.result[i]) + config.weight_decay * x[i]);
    result.trajectory.push_back(rec);
  }

  result.final_objective = objective_value(config.objective, x);
  result.final_x = std::move(x);
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<std::vector<std::uint32_t>> frozen_vote_flips(const Objective& objective, const GradVector& x,
                                                          const FleetConfig& fleet,
                                                          std::span<const AttackKind> attacks,
                                                          std::uint32_t rounds, std::uint64_t seed) {
  if (fleet.byzantine_count >= fleet.q) throw InfeasibleError("byzantine_count must be < q");
  const GradVector gradient = true_gradient(objective, x);
  bool need_estimates = false;
  for (auto a : attacks) need_estimates |= AttackStrategy{a}.needs_own_estimates();
  need_estimates &= fleet.byzantine_count > 0;

  std::vector<std::vector<std::uint32_t>> flips(attacks.size(), std::vector<std::uint32_t>(rounds));
  StepDraws draws;
  for (std::uint32_t r = 0; r < rounds; ++r) {
    draw_step(gradient, fleet, need_estimates, r, seed, 1, draws);
    for (std::size_t a = 0; a < attacks.size(); ++a)
      flips[a][r] = count_flips(gradient, tally_step(gradient, draws, fleet, attacks[a]).result);
  }
  return flips;
}

Estimate estimate_p(const NoiseModel& noise, double g_i, std::uint32_t n, std::uint64_t samples, RngStream stream) {
  if (n == 0) throw InputError("batch size must be at least 1");
  if (samples == 0) throw InputError("samples must be at least 1");
  Estimate est;
  Sign reference = sign_scalar(g_i);
  if (reference == 0) {
    reference = 1;
    est.degenerate_reference = true;
  }
  const double gradient[1] = {g_i};
  double sample[1];
  std::uint64_t correct = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    sample_estimate(gradient, noise, n, stream, sample);
    correct += sign_scalar(sample[0]) == reference;
  }
  const double total = static_cast<double>(samples);
  est.value = static_cast<double>(correct) / total;
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / total);
  return est;
}

std::uint32_t adversary_count(std::uint32_t q, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("alpha must lie in [0, 1), got " + fmt(alpha));
  return static_cast<std::uint32_t>(std::floor(alpha * static_cast<double>(q) + 1e-9));
}

Estimate estimate_vote_failure(std::uint32_t q, double alpha, double p, std::uint64_t trials, RngStream stream) {
  if (q == 0) throw InputError("q must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1], got " + fmt(p));
  if (trials == 0) throw InputError("trials must be at least 1");
  const std::uint32_t honest = q - adversary_count(q, alpha);
  std::uint64_t failures = 0;
  for (std::uint64_t k = 0; k < trials; ++k) {
    std::uint32_t correct = 0;
    for (std::uint32_t m = 0; m < honest; ++m) correct += stream.uniform_open() < p;
    failures += 2 * correct < q;
  }
  Estimate est;
  const double total = static_cast<double>(trials);
  est.value = static_cast<double>(failures) / total;
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / total);
  return est;
}

double exact_vote_failure(std::uint32_t q, double alpha, double p) {
  if (q == 0) throw InputError("q must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1], got " + fmt(p));
  const std::uint32_t honest = q - adversary_count(q, alpha);
  const std::uint32_t max_correct = (q + 1) / 2 - 1;  // ceil(q/2) - 1
  if (max_correct >= honest) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_n_fact = std::lgamma(honest + 1.0);
  double total = 0.0;
  for (std::uint32_t k = 0; k <= max_correct; ++k) {
    const double log_term = log_n_fact - std::lgamma(k + 1.0) - std::lgamma(honest - k + 1.0) + k * log_p +
                            (honest - k) * log_q;
    total += std::exp(log_term);
  }
  return std::min(total, 1.0);
}

void apply_axis(RunConfig& config, SweepAxis axis, std::string_view value) {
  const std::string text(value);
  auto parse_uint = [&]() -> std::uint32_t {
    std::size_t used = 0;
    unsigned long parsed = 0;
    try {
      parsed = std::stoul(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty() || text.front() == '-' || parsed > 0xFFFFFFFFul)
      throw InputError("axis value '" + text + "' is not a non-negative integer");
    return static_cast<std::uint32_t>(parsed);
  };
  switch (axis) {
    case SweepAxis::kByzantineCount:
      config.fleet.byzantine_count = parse_uint();
      return;
    case SweepAxis::kBatchSize:
      if (text == "t" || text == "iteration_counter") {
        config.fleet.batch = {BatchMode::kIterationCounter, 1};
      } else {
        const auto size = parse_uint();
        if (size == 0) throw InputError("batch size must be at least 1");
        config.fleet.batch = {BatchMode::kConstant, size};
      }
      return;
    case SweepAxis::kAttack: {
      auto kind = parse_attack(text);
      if (!kind) throw InputError("unknown attack '" + text + "'");
      config.fleet.attack.kind = *kind;
      return;
    }
  }
}

std::uint64_t repeat_seed(std::uint64_t master_seed, std::uint32_t repeat) { return mix_seed(master_seed, repeat); }

std::vector<SweepPoint> sweep(const RunConfig& base, SweepAxis axis, std::span<const std::string> values,
                              std::uint32_t repeats, unsigned threads) {
  if (repeats == 0) throw InputError("repeats must be at least 1");
  std::vector<SweepPoint> points(values.size() * repeats);
  parallel_for(points.size(), threads, [&](std::size_t idx) {
    SweepPoint& point = points[idx];
    point.axis_value = values[idx / repeats];
    point.repeat = static_cast<std::uint32_t>(idx % repeats);
    point.seed = repeat_seed(base.master_seed, point.repeat);
    try {
      RunConfig config = base;
      config.master_seed = point.seed;
      apply_axis(config, axis, point.axis_value);
      point.result = run(config, 1);
    } catch (const std::exception& e) {
      point.error = e.what();
    }
  });
  return points;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kByzantineCount:
      return "byzantine_count";
    case SweepAxis::kBatchSize:
      return "batch_size";
    case SweepAxis::kAttack:
      return "attack";
  }
  return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  for (auto axis : {SweepAxis::kByzantineCount, SweepAxis::kBatchSize, SweepAxis::kAttack}) {
    if (to_string(axis) == name) return axis;
  }
  return std::nullopt;
}

std::string_view to_string(LrSchedule schedule) {
  return schedule == LrSchedule::kConstant ? "constant" : "inv_sqrt";
}

}  // namespace signvote

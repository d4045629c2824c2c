#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "signvote/core.hpp"
#include "signvote/rng.hpp"

namespace signvote {

enum class ObjectiveKind { kQuadratic };

// f(x) = 0.5 <x, x>, g(x) = x, f* = 0, L_i = 1.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::kQuadratic;
  std::size_t dim = 1000;

  double smoothness_l1() const { return static_cast<double>(dim); }
  double optimum_value() const { return 0.0; }
};

double objective_value(const Objective& obj, const GradVector& x);
GradVector true_gradient(const Objective& obj, const GradVector& x);

enum class NoiseFamily { kGaussian, kUniform, kLaplace };

// Zero-mean, symmetric, unimodal per-coordinate noise with standard
// deviation sigma for a single sample.
struct NoiseModel {
  NoiseFamily family = NoiseFamily::kGaussian;
  double sigma = 1.0;
};

// One draw of zero-mean noise with the model's standard deviation.
double draw_noise(const NoiseModel& noise, RngStream& stream);

enum class BatchMode { kConstant, kIterationCounter };

struct BatchSchedule {
  BatchMode mode = BatchMode::kConstant;
  std::uint32_t size = 1;

  // step is zero-indexed; iteration_counter mode uses the 1-indexed counter.
  std::uint32_t at(std::uint32_t step) const { return mode == BatchMode::kConstant ? size : step + 1; }
};

// g(x) + mean of n independent noise draws per coordinate.
//
// Gaussian noise samples the batch mean directly as N(0, sigma^2 / n), which
// has exactly the distribution of the mean of n draws at O(1) cost; other
// families draw and average n samples.
GradVector stochastic_gradient(const Objective& obj, const GradVector& x, const NoiseModel& noise, std::uint32_t n,
                               RngStream& stream);

// Same as stochastic_gradient but from a precomputed true gradient into a
// caller-owned buffer. No validation.
void sample_estimate(std::span<const double> gradient, const NoiseModel& noise, std::uint32_t n, RngStream& stream,
                     std::span<double> out);

// Effective signal-to-noise ratio |g_i| sqrt(n) / sigma of a batch-averaged
// estimate. Throws InputError when sigma == 0 (callers treat that as
// infinite SNR) or n == 0.
double snr(double g_i, double sigma, std::uint32_t n);

std::string_view to_string(NoiseFamily family);
std::string_view to_string(BatchMode mode);

}  // namespace signvote

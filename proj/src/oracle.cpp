#include "signvote/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "signvote/errors.hpp"

namespace signvote {
namespace {

void check_dim(const Objective& obj, const GradVector& x) {
  if (x.dim() != obj.dim)
    throw InputError("point has dimension " + std::to_string(x.dim()) + ", objective expects " +
                     std::to_string(obj.dim));
  x.check_finite();
}

}  // namespace

double objective_value(const Objective& obj, const GradVector& x) {
  check_dim(obj, x);
  double acc = 0.0;
  for (double v : x.values()) acc += v * v;
  return 0.5 * acc;
}

GradVector true_gradient(const Objective& obj, const GradVector& x) {
  check_dim(obj, x);
  return x;
}

double draw_noise(const NoiseModel& noise, RngStream& stream) {
  switch (noise.family) {
    case NoiseFamily::kGaussian:
      return noise.sigma * stream.normal();
    case NoiseFamily::kUniform:
      // U(-a, a) has variance a^2 / 3.
      return noise.sigma * std::numbers::sqrt3 * (2.0 * stream.uniform_open() - 1.0);
    case NoiseFamily::kLaplace: {
      // Laplace(0, b) has variance 2 b^2.
      const double b = noise.sigma / std::numbers::sqrt2;
      const double u = stream.uniform_open() - 0.5;
      return u < 0 ? b * std::log1p(2.0 * u) : -b * std::log1p(-2.0 * u);
    }
  }
  return 0.0;
}

void sample_estimate(std::span<const double> gradient, const NoiseModel& noise, std::uint32_t n, RngStream& stream,
                     std::span<double> out) {
  if (noise.sigma == 0.0) {
    std::copy(gradient.begin(), gradient.end(), out.begin());
    return;
  }
  if (noise.family == NoiseFamily::kGaussian) {
    const double scale = noise.sigma / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < gradient.size(); ++i) out[i] = gradient[i] + scale * stream.normal();
    return;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    double acc = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) acc += draw_noise(noise, stream);
    out[i] = gradient[i] + acc * inv_n;
  }
}

GradVector stochastic_gradient(const Objective& obj, const GradVector& x, const NoiseModel& noise, std::uint32_t n,
                               RngStream& stream) {
  if (n == 0) throw InputError("batch size must be at least 1");
  if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) throw InputError("noise sigma must be finite and >= 0");
  GradVector g = true_gradient(obj, x);
  GradVector out(g.dim());
  sample_estimate(g.values(), noise, n, stream, out.values());
  return out;
}

double snr(double g_i, double sigma, std::uint32_t n) {
  if (n == 0) throw InputError("batch size must be at least 1");
  if (sigma == 0.0) throw InputError("snr undefined for sigma = 0 (infinite signal-to-noise)");
  if (sigma < 0.0) throw InputError("sigma must be non-negative");
  return std::abs(g_i) * std::sqrt(static_cast<double>(n)) / sigma;
}

std::string_view to_string(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::kGaussian:
      return "gaussian";
    case NoiseFamily::kUniform:
      return "uniform";
    case NoiseFamily::kLaplace:
      return "laplace";
  }
  return "?";
}

std::string_view to_string(BatchMode mode) {
  return mode == BatchMode::kConstant ? "constant" : "iteration_counter";
}

}  // namespace signvote

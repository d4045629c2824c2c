#include "signvote/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "signvote/errors.hpp"

namespace signvote {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InputError("p must lie in (0, 1], got " + fmt(p));
}

void check_q(std::uint32_t q) {
  if (q == 0) throw InputError("q must be at least 1");
}

// (1 - alpha) p - 1/2, the expected honest surplus per worker.
double honest_margin(double alpha, double p) { return (1.0 - alpha) * p - 0.5; }

}  // namespace

double lemma1_bound(double s) {
  if (!(s >= 0.0)) throw InputError("SNR must be non-negative, got " + fmt(s));
  if (std::isinf(s)) return 0.0;
  return 0.5 - s / (2.0 * std::sqrt(4.0 + s * s));
}

bool lemma1_ratio_check(double p, double s) {
  if (!(p > 0.5 && p <= 1.0)) throw InputError("lemma1 ratio needs p in (1/2, 1], got " + fmt(p));
  if (!(s > 0.0)) throw InputError("lemma1 ratio needs s > 0, got " + fmt(s));
  const double d = p - 0.5;
  const double ratio = p * (1.0 - p) / (d * d);
  const double rhs = 4.0 / (s * s);
  return ratio <= rhs * (1.0 + 1e-9);
}

double alpha_threshold(double p) {
  if (std::isnan(p) || p > 1.0) throw InputError("p must lie in (0, 1], got " + fmt(p));
  if (p <= 0.5 + kBoundaryTolerance)
    throw InfeasibleError("p > 1/2 required (got p = " + fmt(p) + "): no adversary fraction is tolerable");
  return 1.0 - 1.0 / (2.0 * p);
}

std::uint32_t tolerable_byzantine_count(std::uint32_t q, double p) {
  check_q(q);
  if (std::isnan(p) || p > 1.0) throw InputError("p must lie in (0, 1], got " + fmt(p));
  if (p <= 0.5) return 0;
  // K < (2p - 1)(q - K) is monotone in K; scan down from the largest
  // candidate. Equality within tolerance counts as not tolerable.
  const double slope = 2.0 * p - 1.0;
  for (std::uint32_t k = q; k-- > 0;) {
    const double margin = slope * static_cast<double>(q - k) - static_cast<double>(k);
    if (margin > kBoundaryTolerance * std::max(1.0, static_cast<double>(q))) return k;
  }
  return 0;
}

void check_feasible(double alpha, double p) {
  check_probability(p);
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("alpha must lie in [0, 1), got " + fmt(alpha));
  if (p <= 0.5 + kBoundaryTolerance) throw InfeasibleError("infeasible: p > 1/2 required, got p = " + fmt(p));
  if (honest_margin(alpha, p) <= kBoundaryTolerance)
    throw InfeasibleError("infeasible: alpha < 1 - 1/(2p) required, got alpha = " + fmt(alpha) +
                          " >= " + fmt(1.0 - 1.0 / (2.0 * p)));
}

double vote_failure_bound(std::uint32_t q, double alpha, double p) {
  check_q(q);
  check_feasible(alpha, p);
  const double honest = 1.0 - alpha;
  return std::sqrt(honest * p * (1.0 - p)) / (2.0 * std::sqrt(static_cast<double>(q)) * honest_margin(alpha, p));
}

double vote_failure_bound_snr(std::uint32_t q, double alpha, double p, double s) {
  check_q(q);
  check_feasible(alpha, p);
  if (!(s > 0.0)) throw InputError("SNR form needs s > 0, got " + fmt(s));
  return std::sqrt(1.0 - alpha) * (p - 0.5) /
         (4.0 * s * std::sqrt(static_cast<double>(q)) * honest_margin(alpha, p));
}

double rate_fraction(double alpha, double p, RateForm form) {
  check_feasible(alpha, p);
  const double numerator =
      form == RateForm::kProofFinal ? std::sqrt(1.0 - alpha) * (p - 0.5) : std::sqrt((1.0 - alpha) * p);
  return numerator / honest_margin(alpha, p);
}

double convergence_rate_rhs(const BoundInputs& in, RateForm form) {
  check_q(in.q);
  if (in.k_iters == 0) throw InputError("k_iters must be at least 1");
  if (!(in.sigma_l1 >= 0.0) || !(in.smoothness_l1 >= 0.0) || !(in.f0_minus_fstar >= 0.0))
    throw InputError("sigma_l1, smoothness_l1 and f0_minus_fstar must be non-negative");
  const double fraction = rate_fraction(in.alpha, in.p, form);
  const double n_calls = static_cast<double>(in.k_iters) * static_cast<double>(in.k_iters);
  const double bracket = in.sigma_l1 / (4.0 * std::sqrt(static_cast<double>(in.q))) * fraction +
                         std::sqrt(in.smoothness_l1 * in.f0_minus_fstar);
  return 4.0 / std::sqrt(n_calls) * bracket * bracket;
}

BoundReport compute_report(const BoundInputs& in) {
  BoundReport r;
  r.inputs = in;
  r.alpha_threshold = alpha_threshold(in.p);
  r.tolerable_byzantine_count = tolerable_byzantine_count(in.q, in.p);
  r.vote_failure_bound_raw = vote_failure_bound(in.q, in.alpha, in.p);
  r.vote_failure_bound = std::clamp(r.vote_failure_bound_raw, 0.0, 1.0);
  if (in.s) {
    r.lemma1_wrong_sign_bound = lemma1_bound(*in.s);
    if (*in.s > 0.0) r.vote_failure_bound_snr_raw = vote_failure_bound_snr(in.q, in.alpha, in.p, *in.s);
  }
  r.rate_rhs_proof_form = convergence_rate_rhs(in, RateForm::kProofFinal);
  r.rate_rhs_statement_form = convergence_rate_rhs(in, RateForm::kStatement);
  return r;
}

double appendix_case1_expression(double s) {
  const double root = std::sqrt(4.0 + s * s);
  return (4.0 * root + 9.0 * s * s * s) / (18.0 * s * s * root);
}

bool appendix_case2_holds(double s) { return std::sqrt(3.0) <= std::sqrt(4.0 + s * s); }

double piecewise_wrong_sign_bound(double s) {
  if (s > kCaseBoundary) return 2.0 / (9.0 * s * s);
  return 0.5 - s / (2.0 * std::sqrt(3.0));
}

AppendixReport verify_appendix_cases(double grid_max, double grid_step) {
  if (!(grid_step > 0.0)) throw InputError("grid_step must be positive");
  if (!(grid_max > 0.0)) throw InputError("grid_max must be positive");

  AppendixReport r;
  r.boundary_value = appendix_case1_expression(kCaseBoundary);
  r.case1_min_slack = std::numeric_limits<double>::infinity();
  r.piecewise_min_slack = std::numeric_limits<double>::infinity();

  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor(grid_max / grid_step + 1e-9));
  grid.reserve(count + 1);
  for (std::size_t k = 1; k <= count; ++k) grid.push_back(static_cast<double>(k) * grid_step);
  grid.push_back(kCaseBoundary);
  std::sort(grid.begin(), grid.end());
  r.grid_points = grid.size();

  double case1_min = std::numeric_limits<double>::infinity();
  for (double s : grid) {
    if (s > kCaseBoundary) {
      const double e = appendix_case1_expression(s);
      if (e > r.case1_max) {
        r.case1_max = e;
        r.case1_max_at = s;
      }
      if (e < case1_min) {
        case1_min = e;
        r.turning_point = s;
      }
      r.case1_min_slack = std::min(r.case1_min_slack, 0.5 - e);
      if (e > 0.5) r.violations.push_back({"case1", s, e});
    } else if (!appendix_case2_holds(s)) {
      r.violations.push_back({"case2", s, std::sqrt(4.0 + s * s)});
    }
    const double slack = lemma1_bound(s) - piecewise_wrong_sign_bound(s);
    if (slack < r.piecewise_min_slack) {
      r.piecewise_min_slack = slack;
      r.piecewise_min_slack_at = s;
    }
    if (slack < 0.0) r.violations.push_back({"piecewise", s, piecewise_wrong_sign_bound(s)});
  }

  r.first_branch_max = r.boundary_value;
  for (double s : grid) {
    if (s > kCaseBoundary && s <= r.turning_point)
      r.first_branch_max = std::max(r.first_branch_max, appendix_case1_expression(s));
  }
  return r;
}

std::string_view to_string(RateForm form) { return form == RateForm::kProofFinal ? "proof_final" : "statement"; }

}  // namespace signvote

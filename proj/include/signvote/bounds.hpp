#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace signvote {

// Feasibility comparisons treat values within this distance of a boundary as
// on the boundary. Parameters arrive as decimals (p = 0.9, alpha = 1/3) whose
// binary approximations would otherwise land on either side of a strict
// inequality at random.
inline constexpr double kBoundaryTolerance = 1e-12;

// Upper bound on a worker's wrong-sign probability at SNR s:
// 1/2 - s / (2 sqrt(4 + s^2)). Throws InputError for s < 0 or NaN.
double lemma1_bound(double s);

// Whether p(1-p)/(p-1/2)^2 <= 4/s^2 (relative tolerance 1e-9).
// Throws InputError for p <= 1/2, p > 1 or s <= 0.
bool lemma1_ratio_check(double p, double s);

// 1 - 1/(2p): the strict upper bound on the tolerable adversary fraction.
// Throws InfeasibleError for p <= 1/2.
double alpha_threshold(double p);

// Largest integer K with K < (2p - 1)(q - K). Returns 0 for p <= 1/2.
std::uint32_t tolerable_byzantine_count(std::uint32_t q, double p);

// Throws InfeasibleError naming the first violated condition among
// p > 1/2, alpha < 1 - 1/(2p) (equivalently (1 - alpha) p > 1/2).
void check_feasible(double alpha, double p);

// Cantelli-derived bound on P[vote fails on a coordinate] under the optimal
// attack: sqrt((1-a) p (1-p)) / (2 sqrt(q) ((1-a) p - 1/2)). Raw value, may
// exceed 1.
double vote_failure_bound(std::uint32_t q, double alpha, double p);

// The SNR form: sqrt(1-a)(p - 1/2) / (4 s sqrt(q) ((1-a) p - 1/2)).
double vote_failure_bound_snr(std::uint32_t q, double alpha, double p, double s);

struct BoundInputs {
  std::uint32_t q = 27;
  double alpha = 0.0;
  double p = 0.9;
  std::optional<double> s;
  double sigma_l1 = 1000.0;
  double smoothness_l1 = 1000.0;
  double f0_minus_fstar = 500.0;
  std::uint32_t k_iters = 500;
};

enum class RateForm {
  kProofFinal,  // sqrt(1-a)(p - 1/2) / ((1-a) p - 1/2)
  kStatement,   // sqrt((1-a) p) / ((1-a) p - 1/2)
};

// The adversarial fraction F that multiplies ||sigma||_1 / (4 sqrt(Q)).
double rate_fraction(double alpha, double p, RateForm form);

// (4/sqrt(N)) [ ||sigma||_1/(4 sqrt(Q)) F + sqrt(||L||_1 (f0 - f*)) ]^2 with
// N = K^2.
double convergence_rate_rhs(const BoundInputs& inputs, RateForm form);

struct BoundReport {
  BoundInputs inputs;
  std::optional<double> lemma1_wrong_sign_bound;
  double vote_failure_bound_raw = 0.0;
  double vote_failure_bound = 0.0;  // clamped to [0, 1]
  std::optional<double> vote_failure_bound_snr_raw;
  double rate_rhs_proof_form = 0.0;
  double rate_rhs_statement_form = 0.0;
  double alpha_threshold = 0.0;
  std::uint32_t tolerable_byzantine_count = 0;

  bool vacuous() const { return vote_failure_bound_raw > 1.0; }
};

// Throws InputError / InfeasibleError on bad inputs.
BoundReport compute_report(const BoundInputs& inputs);

// 2/(9 S^2) + S/(2 sqrt(4 + S^2)), written as one fraction. Case 1 of the
// unified-bound argument needs it <= 1/2 for S > 2/sqrt(3).
double appendix_case1_expression(double s);
// Case 2: sqrt(3) <= sqrt(4 + S^2).
bool appendix_case2_holds(double s);
// The piecewise wrong-sign bound the unified form replaces:
// 2/(9 S^2) for S > 2/sqrt(3), else 1/2 - S/(2 sqrt(3)).
double piecewise_wrong_sign_bound(double s);

inline constexpr double kCaseBoundary = 1.1547005383792515;  // 2 / sqrt(3)

struct AppendixViolation {
  std::string_view check;
  double s;
  double value;
};

struct AppendixReport {
  std::size_t grid_points = 0;
  double boundary_value = 0.0;        // case-1 expression at S = 2/sqrt(3)
  double turning_point = 0.0;         // grid S minimizing the case-1 expression
  double first_branch_max = 0.0;      // max over (2/sqrt(3), turning_point]
  double case1_max = 0.0;             // max over all grid S > 2/sqrt(3)
  double case1_max_at = 0.0;
  double case1_min_slack = 0.0;       // min of 1/2 - expression
  double piecewise_min_slack = 0.0;   // min of unified - piecewise
  double piecewise_min_slack_at = 0.0;
  std::vector<AppendixViolation> violations;

  bool passed() const { return violations.empty(); }
};

// Checks the three inequalities on S = step, 2 step, ..., <= grid_max plus the
// analytic boundary 2/sqrt(3). Violations are reported, not thrown.
// Throws InputError for grid_step <= 0.
AppendixReport verify_appendix_cases(double grid_max, double grid_step);

std::string_view to_string(RateForm form);

}  // namespace signvote

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "signvote/bounds.hpp"
#include "signvote/errors.hpp"

using namespace signvote;

TEST_CASE("lemma1 bound examples and limits") {
  CHECK(lemma1_bound(0.0) == doctest::Approx(0.5));
  CHECK(lemma1_bound(2.0) == doctest::Approx(0.1464466094).epsilon(1e-9));
  CHECK(lemma1_bound(kCaseBoundary) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(lemma1_bound(1e6) < 1e-6);
  CHECK_THROWS_AS(lemma1_bound(-0.1), InputError);
  CHECK_THROWS_AS(lemma1_bound(std::nan("")), InputError);

  double prev = lemma1_bound(0.0);
  for (int k = 1; k <= 2000; ++k) {
    const double b = lemma1_bound(0.01 * k);
    CHECK(b < prev);
    CHECK(b > 0.0);
    prev = b;
  }
}

TEST_CASE("lemma1 ratio check") {
  CHECK(lemma1_ratio_check(1.0 - lemma1_bound(2.0), 2.0));
  CHECK(lemma1_ratio_check(0.9, 1.0));
  CHECK_FALSE(lemma1_ratio_check(0.6, 10.0));
  CHECK_THROWS_AS(lemma1_ratio_check(0.5, 1.0), InputError);
  CHECK_THROWS_AS(lemma1_ratio_check(0.9, 0.0), InputError);
  CHECK_THROWS_AS(lemma1_ratio_check(1.1, 1.0), InputError);
}

TEST_CASE("p at the lemma1 bound satisfies the ratio check for every s") {
  for (int k = 1; k <= 400; ++k) {
    const double s = 0.05 * k;
    CAPTURE(s);
    CHECK(lemma1_ratio_check(1.0 - lemma1_bound(s), s));
  }
}

TEST_CASE("alpha threshold and tolerable count") {
  CHECK(alpha_threshold(0.9) == doctest::Approx(4.0 / 9.0));
  CHECK(alpha_threshold(1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(alpha_threshold(0.5), InfeasibleError);
  CHECK_THROWS_AS(alpha_threshold(0.3), InfeasibleError);

  CHECK(tolerable_byzantine_count(27, 0.9) == 11);
  CHECK(tolerable_byzantine_count(27, 1.0) == 13);
  CHECK(tolerable_byzantine_count(27, 0.5) == 0);
  CHECK(tolerable_byzantine_count(1, 0.99) == 0);
}

TEST_CASE("tolerable count agrees with exact rational arithmetic") {
  // p = k/1000: K < (2p - 1)(q - K)  <=>  1000 K < (2k - 1000)(q - K).
  for (std::int64_t q = 3; q <= 1000; q += (q < 100 ? 1 : 37)) {
    for (std::int64_t k = 501; k <= 1000; k += 7) {
      std::int64_t expected = 0;
      for (std::int64_t K = q; K >= 0; --K) {
        if (1000 * K < (2 * k - 1000) * (q - K)) {
          expected = K;
          break;
        }
      }
      const auto got = tolerable_byzantine_count(static_cast<std::uint32_t>(q), static_cast<double>(k) / 1000.0);
      CAPTURE(q);
      CAPTURE(k);
      REQUIRE(got == expected);
      CHECK(2 * static_cast<std::int64_t>(got) < q);
    }
  }
}

TEST_CASE("feasibility boundary") {
  CHECK_NOTHROW(check_feasible(0.0, 0.9));
  CHECK_NOTHROW(check_feasible(0.44, 0.9));
  CHECK_THROWS_AS(check_feasible(4.0 / 9.0, 0.9), InfeasibleError);
  CHECK_THROWS_AS(check_feasible(0.5, 0.9), InfeasibleError);
  CHECK_THROWS_AS(check_feasible(0.0, 0.5), InfeasibleError);
}

TEST_CASE("vote failure bound values") {
  CHECK(vote_failure_bound(27, 0.0, 0.9) == doctest::Approx(0.0721687836).epsilon(1e-9));
  CHECK(vote_failure_bound(99, 1.0 / 3.0, 0.8) == doctest::Approx(0.4923659639).epsilon(1e-9));
  CHECK(vote_failure_bound(9, 1.0 / 3.0, 0.8) == doctest::Approx(1.6329931619).epsilon(1e-9));
  CHECK(vote_failure_bound(27, 5.0 / 27.0, 0.9) == doctest::Approx(0.1116765657).epsilon(1e-9));
  CHECK_THROWS_AS(vote_failure_bound(27, 0.5, 0.9), InfeasibleError);
  CHECK_THROWS_AS(vote_failure_bound(0, 0.0, 0.9), InputError);
}

TEST_CASE("vote failure bound is monotone") {
  for (double p : {0.7, 0.8, 0.9, 0.99}) {
    const double limit = alpha_threshold(p);
    double prev = 0.0;
    for (int i = 0; i < 40; ++i) {
      const double a = limit * i / 40.0;
      const double v = vote_failure_bound(27, a, p);
      CHECK(v > prev);
      prev = v;
    }
  }
  double prev = 1e300;
  for (int k = 60; k < 100; ++k) {
    const double v = vote_failure_bound(27, 0.1, k / 100.0);
    CHECK(v < prev);
    prev = v;
  }
  prev = 1e300;
  for (std::uint32_t q = 1; q <= 200; ++q) {
    const double v = vote_failure_bound(q, 0.2, 0.9);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("SNR form relative to the p form at the lemma1 boundary") {
  // With p = 1 - lemma1_bound(s), sqrt(p(1-p)) = 2(p - 1/2)/s exactly, so the
  // p form equals four times the SNR form as written.
  for (double s : {0.5, 1.0, 2.0, 5.0}) {
    const double p = 1.0 - lemma1_bound(s);
    for (double a : {0.0, 0.05}) {
      if ((1 - a) * p <= 0.5) continue;
      CHECK(4.0 * vote_failure_bound_snr(27, a, p, s) == doctest::Approx(vote_failure_bound(27, a, p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("convergence rate example") {
  BoundInputs in;
  in.q = 25;
  in.alpha = 0.2;
  in.p = 0.9;
  in.sigma_l1 = 10;
  in.smoothness_l1 = 2;
  in.f0_minus_fstar = 2;
  in.k_iters = 100;
  CHECK(rate_fraction(0.2, 0.9, RateForm::kProofFinal) == doctest::Approx(1.6262312564).epsilon(1e-9));
  CHECK(convergence_rate_rhs(in, RateForm::kProofFinal) == doctest::Approx(0.3165447815).epsilon(1e-9));
  CHECK(convergence_rate_rhs(in, RateForm::kStatement) > convergence_rate_rhs(in, RateForm::kProofFinal));
}

TEST_CASE("proof-final fraction never exceeds the statement fraction") {
  for (int pk = 51; pk <= 100; ++pk) {
    const double p = pk / 100.0;
    const double limit = 1.0 - 1.0 / (2.0 * p);
    for (int i = 0; i < 20; ++i) {
      const double a = limit * i / 20.0;
      CHECK(rate_fraction(a, p, RateForm::kProofFinal) <= rate_fraction(a, p, RateForm::kStatement));
    }
  }
}

TEST_CASE("bound report") {
  BoundInputs in;
  const auto report = compute_report(in);
  CHECK(report.vote_failure_bound == doctest::Approx(0.0721687836).epsilon(1e-9));
  CHECK(report.alpha_threshold == doctest::Approx(4.0 / 9.0));
  CHECK(report.tolerable_byzantine_count == 11);
  CHECK_FALSE(report.lemma1_wrong_sign_bound.has_value());
  CHECK_FALSE(report.vacuous());

  in.q = 9;
  in.alpha = 1.0 / 3.0;
  in.p = 0.8;
  in.s = 2.0;
  const auto vac = compute_report(in);
  CHECK(vac.vacuous());
  CHECK(vac.vote_failure_bound == 1.0);
  CHECK(vac.vote_failure_bound_raw == doctest::Approx(1.6329931619).epsilon(1e-9));
  REQUIRE(vac.lemma1_wrong_sign_bound.has_value());
  CHECK(*vac.lemma1_wrong_sign_bound == doctest::Approx(0.1464466094).epsilon(1e-9));

  in.p = 0.5;
  CHECK_THROWS_AS(compute_report(in), InfeasibleError);
}

TEST_CASE("unified bound case analysis") {
  CHECK(appendix_case1_expression(kCaseBoundary) == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
  CHECK(appendix_case2_holds(0.0));
  CHECK(appendix_case2_holds(kCaseBoundary));
  CHECK(piecewise_wrong_sign_bound(1.0) == doctest::Approx(0.5 - 1.0 / (2.0 * std::sqrt(3.0))));
  CHECK(piecewise_wrong_sign_bound(2.0) == doctest::Approx(2.0 / 36.0));

  const auto report = verify_appendix_cases(10.0, 0.01);
  CHECK(report.passed());
  CHECK(report.grid_points == 1001);
  CHECK(report.boundary_value == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
  CHECK(report.first_branch_max == doctest::Approx(5.0 / 12.0).epsilon(1e-9));
  CHECK(report.case1_max < 0.5);
  CHECK(report.case1_max_at == doctest::Approx(10.0));
  CHECK(report.case1_min_slack > 0.0);
  CHECK(report.piecewise_min_slack >= 0.0);
  CHECK(report.turning_point > kCaseBoundary);
  CHECK(report.turning_point < 10.0);
  CHECK_THROWS_AS(verify_appendix_cases(10.0, 0.0), InputError);
}

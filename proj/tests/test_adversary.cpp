#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "signvote/adversary.hpp"
#include "signvote/errors.hpp"
#include "signvote/oracle.hpp"

using namespace signvote;

namespace {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Probability that more than half of b independent workers, each correct with
// probability p, are correct. Enumerates all 2^b outcomes.
double majority_correct_by_enumeration(unsigned b, double p) {
  double total = 0;
  for (unsigned mask = 0; mask < (1u << b); ++mask) {
    const unsigned correct = static_cast<unsigned>(__builtin_popcount(mask));
    if (2 * correct > b) total += std::pow(p, correct) * std::pow(1 - p, b - correct);
  }
  return total;
}

std::vector<GradVector> noisy_estimates(const GradVector& g, unsigned b, double sigma, std::uint64_t seed,
                                        std::uint32_t step) {
  std::vector<GradVector> out;
  for (unsigned j = 0; j < b; ++j) {
    RngStream s(seed, j, step, 0);
    GradVector e(g.dim());
    sample_estimate(g.values(), {NoiseFamily::kGaussian, sigma}, 1, s, e.values());
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("omniscient attack sends the negated true sign") {
  AdversaryKnowledge k;
  k.true_gradient = GradVector{1.5, -0.2, 0.0};
  auto votes = omniscient_optimal_votes(k, 3);
  REQUIRE(votes.size() == 3);
  for (const auto& v : votes) CHECK(v == SignVector{-1, 1, 0});

  k.true_gradient = GradVector(10, 2.0);
  votes = omniscient_optimal_votes(k, 1);
  REQUIRE(votes.size() == 1);
  CHECK(votes[0] == SignVector(std::vector<Sign>(10, -1)));
}

TEST_CASE("omniscient attack needs the true gradient") {
  AdversaryKnowledge k;
  CHECK_THROWS_AS(omniscient_optimal_votes(k, 2), CapabilityError);
  k.true_gradient = GradVector{1.0};
  CHECK_THROWS_AS(omniscient_optimal_votes(k, 0), InputError);
}

TEST_CASE("honest 2-vs-1 majority defeats a single omniscient adversary") {
  const GradVector g{0.3, -1.0, 2.0, -0.1};
  AdversaryKnowledge k;
  k.true_gradient = g;
  std::vector<SignVector> votes{sign_of(g), sign_of(g)};
  for (auto& v : omniscient_optimal_votes(k, 1)) votes.push_back(v);
  CHECK(majority_vote(votes).result == sign_of(g));
}

TEST_CASE("blind flip negates each adversary's own estimate") {
  std::vector<GradVector> own{GradVector{2, -1}};
  AdversaryKnowledge k;
  k.own_estimates = own;
  auto votes = blind_flip_votes(k, 1);
  REQUIRE(votes.size() == 1);
  CHECK(votes[0] == SignVector{-1, 1});
  CHECK_THROWS_AS(blind_flip_votes(k, 2), InputError);
}

TEST_CASE("blind flip coincides with the omniscient attack without noise") {
  const GradVector g{0.5, -3.0, 0.0, 1e-9};
  const auto own = noisy_estimates(g, 4, 0.0, 1, 0);
  AdversaryKnowledge k;
  k.true_gradient = g;
  k.own_estimates = own;
  CHECK(blind_flip_votes(k, 4) == omniscient_optimal_votes(k, 4));
  CHECK(adversary_server_votes(k, 4) == omniscient_optimal_votes(k, 4));
}

TEST_CASE("two blind adversaries disagree with probability 2p(1-p)") {
  // g_i = 1, sigma = 1, n = 1: each adversary reads the right sign with
  // probability p = Phi(1).
  const double p = phi(1.0);
  double oracle = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (a != b) oracle += (a ? p : 1 - p) * (b ? p : 1 - p);
    }
  }
  CHECK(oracle == doctest::Approx(2 * p * (1 - p)));

  const std::size_t dim = 1000;
  const int rounds = 100;
  const GradVector g(dim, 1.0);
  long disagreements = 0;
  for (int r = 0; r < rounds; ++r) {
    const auto own = noisy_estimates(g, 2, 1.0, 77, static_cast<std::uint32_t>(r));
    AdversaryKnowledge k;
    k.own_estimates = own;
    const auto votes = blind_flip_votes(k, 2);
    for (std::size_t i = 0; i < dim; ++i) disagreements += votes[0][i] != votes[1][i];
  }
  const double trials = static_cast<double>(rounds * dim);
  const double rate = static_cast<double>(disagreements) / trials;
  CHECK(std::abs(rate - oracle) < 3.0 * std::sqrt(oracle * (1 - oracle) / trials));
}

TEST_CASE("adversary server negates the adversaries' own majority") {
  std::vector<GradVector> single{GradVector{2, -1}};
  AdversaryKnowledge k;
  k.own_estimates = single;
  CHECK(adversary_server_votes(k, 1) == std::vector<SignVector>{SignVector{-1, 1}});

  std::vector<GradVector> three{GradVector{0.4}, GradVector{1.0}, GradVector{-0.3}};
  k.own_estimates = three;
  CHECK(adversary_server_votes(k, 3) == std::vector<SignVector>(3, SignVector{-1}));

  std::vector<GradVector> empty;
  k.own_estimates = empty;
  CHECK_THROWS_AS(adversary_server_votes(k, 1), InputError);
}

TEST_CASE("adversary server approaches the optimal attack as b grows") {
  const double p = phi(1.0);
  const std::size_t dim = 1000;
  const int rounds = 20;
  const GradVector g(dim, 1.0);
  for (unsigned b : {3u, 15u}) {
    CAPTURE(b);
    const double oracle = majority_correct_by_enumeration(b, p);
    long matches = 0;
    for (int r = 0; r < rounds; ++r) {
      const auto own = noisy_estimates(g, b, 1.0, 500 + b, static_cast<std::uint32_t>(r));
      AdversaryKnowledge k;
      k.own_estimates = own;
      const auto votes = adversary_server_votes(k, b);
      for (const auto& v : votes) CHECK(v == votes.front());
      for (std::size_t i = 0; i < dim; ++i) matches += votes[0][i] == -1;
    }
    const double trials = static_cast<double>(rounds * dim);
    const double rate = static_cast<double>(matches) / trials;
    CHECK(std::abs(rate - oracle) < 3.0 * std::sqrt(oracle * (1 - oracle) / trials) + 1e-12);
  }
  CHECK(majority_correct_by_enumeration(15, p) > majority_correct_by_enumeration(3, p));
  CHECK(majority_correct_by_enumeration(15, p) == doctest::Approx(0.9991020636829085));
}

TEST_CASE("the optimal attack minimizes the adversarial tally in the true direction") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GradVector g(200);
    RngStream s(seed, 99, 0, 0);
    for (std::size_t i = 0; i < g.dim(); ++i) g[i] = s.normal();
    const unsigned b = 1 + static_cast<unsigned>(seed % 6);
    const auto own = noisy_estimates(g, b, 1.0, seed, 1);
    AdversaryKnowledge k;
    k.true_gradient = g;
    k.own_estimates = own;
    auto directional = [&](const std::vector<SignVector>& votes) {
      std::vector<int> sum(g.dim(), 0);
      for (const auto& v : votes) {
        for (std::size_t i = 0; i < g.dim(); ++i) sum[i] += v[i] * sign_scalar(g[i]);
      }
      return sum;
    };
    const auto opt = directional(omniscient_optimal_votes(k, b));
    const auto blind = directional(blind_flip_votes(k, b));
    const auto server = directional(adversary_server_votes(k, b));
    for (std::size_t i = 0; i < g.dim(); ++i) {
      CHECK(opt[i] == -static_cast<int>(b));
      CHECK(opt[i] <= blind[i]);
      CHECK(opt[i] <= server[i]);
    }
  }
}

TEST_CASE("attack 'none' lets the slots vote honestly") {
  std::vector<GradVector> own{GradVector{1, -1}, GradVector{-2, 0}};
  AdversaryKnowledge k;
  k.own_estimates = own;
  const auto votes = adversarial_votes({AttackKind::kNone}, k, 2);
  CHECK(votes == std::vector<SignVector>{SignVector{1, -1}, SignVector{-1, 0}});
  CHECK(adversarial_votes({AttackKind::kNone}, k, 0).empty());
}

TEST_CASE("attack names round-trip") {
  for (auto kind : {AttackKind::kNone, AttackKind::kOmniscientOptimal, AttackKind::kBlindFlip,
                    AttackKind::kAdversaryServer}) {
    CHECK(parse_attack(to_string(kind)) == kind);
  }
  CHECK_FALSE(parse_attack("omniscient").has_value());
}

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "doctest.h"
#include "signvote/core.hpp"
#include "signvote/errors.hpp"
#include "signvote/parallel.hpp"
#include "signvote/rng.hpp"

using namespace signvote;

namespace {

std::vector<SignVector> random_votes(std::uint64_t seed, std::size_t voters, std::size_t dim, bool allow_zero) {
  RngStream rng(seed, 0, 0, 7);
  std::vector<SignVector> votes;
  for (std::size_t m = 0; m < voters; ++m) {
    std::vector<Sign> v(dim);
    for (auto& s : v) {
      const auto r = rng.next_u32() % (allow_zero ? 3u : 2u);
      s = allow_zero ? static_cast<Sign>(static_cast<int>(r) - 1) : static_cast<Sign>(r == 0 ? -1 : 1);
    }
    votes.emplace_back(std::move(v));
  }
  return votes;
}

}  // namespace

TEST_CASE("sign_of uses the three-valued sign") {
  CHECK(sign_of(GradVector{1.5, -0.2, 0.0}) == SignVector{1, -1, 0});
  CHECK(sign_of(GradVector{-3.0}) == SignVector{-1});
  CHECK(sign_of(GradVector(1000, 0.25)) == SignVector(std::vector<Sign>(1000, 1)));
  CHECK(sign_of(GradVector{-0.0})[0] == 0);
}

TEST_CASE("sign_of rejects non-finite entries") {
  CHECK_THROWS_AS(sign_of(GradVector{1.0, std::nan("")}), InputError);
  CHECK_THROWS_AS(sign_of(GradVector{std::numeric_limits<double>::infinity()}), InputError);
  CHECK_THROWS_AS(sign_of(GradVector{}), InputError);
}

TEST_CASE("SignVector rejects out-of-range entries") {
  CHECK_THROWS_AS(SignVector({2, 0}), InputError);
  CHECK_THROWS_AS(SignVector(std::vector<Sign>{0, -2}), InputError);
}

TEST_CASE("majority_vote hand counts") {
  std::vector<SignVector> votes{{1, -1}, {1, 1}, {-1, 1}};
  auto out = majority_vote(votes);
  CHECK(out.tally.sums == std::vector<std::int32_t>{1, 1});
  CHECK(out.tally.voters == 3);
  CHECK(out.result == SignVector{1, 1});

  std::vector<SignVector> tie{{1}, {-1}};
  out = majority_vote(tie);
  CHECK(out.tally.sums == std::vector<std::int32_t>{0});
  CHECK(out.result == SignVector{0});

  std::vector<SignVector> honest_win{{1}, {1}, {-1}};
  CHECK(majority_vote(honest_win).result == SignVector{1});
}

TEST_CASE("majority_vote input errors") {
  std::vector<SignVector> none;
  CHECK_THROWS_AS(majority_vote(none), InputError);
  std::vector<SignVector> mismatched{{1, 1}, {1}};
  CHECK_THROWS_AS(majority_vote(mismatched), InputError);
}

TEST_CASE("majority_vote properties over random vote sets") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t voters = 1 + seed % 9;
    auto votes = random_votes(seed, voters, 64, seed % 2 == 0);
    const auto base = majority_vote(votes);

    // |sums| <= voters; parity matches voters when nobody abstained.
    for (auto s : base.tally.sums) CHECK(std::abs(s) <= static_cast<int>(voters));

    std::vector<SignVector> negated;
    for (const auto& v : votes) negated.push_back(v.negated());
    const auto neg = majority_vote(negated);
    for (std::size_t i = 0; i < base.tally.sums.size(); ++i) CHECK(neg.tally.sums[i] == -base.tally.sums[i]);
    CHECK(neg.result == base.result.negated());

    std::reverse(votes.begin(), votes.end());
    std::rotate(votes.begin(), votes.begin() + static_cast<long>(seed % voters), votes.end());
    const auto permuted = majority_vote(votes);
    CHECK(permuted.tally == base.tally);
    CHECK(permuted.result == base.result);
  }
}

TEST_CASE("odd voter count without abstentions never ties") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const std::size_t voters = 2 * (seed % 7) + 1;
    auto votes = random_votes(seed, voters, 128, false);
    const auto out = majority_vote(votes);
    for (std::size_t i = 0; i < out.result.dim(); ++i) {
      CHECK(out.result[i] != 0);
      CHECK((out.tally.sums[i] - static_cast<int>(voters)) % 2 == 0);
    }
  }
}

TEST_CASE("philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("derive_stream is deterministic and separates coordinates") {
  auto draws = [](RngStream s) {
    std::vector<std::uint64_t> out(100);
    for (auto& v : out) v = s.next_u64();
    return out;
  };
  CHECK(draws(derive_stream(42, 0, 0, 0)) == draws(derive_stream(42, 0, 0, 0)));
  CHECK(draws(derive_stream(42, 0, 0, 0)) != draws(derive_stream(42, 1, 0, 0)));
  CHECK(draws(derive_stream(42, 0, 0, 0)) != draws(derive_stream(42, 0, 1, 0)));
  CHECK(draws(derive_stream(42, 0, 0, 0)) != draws(derive_stream(42, 0, 0, 1)));
  CHECK(draws(derive_stream(42, 0, 0, 0)) != draws(derive_stream(43, 0, 0, 0)));
}

TEST_CASE("stream output does not depend on the thread that consumes it") {
  auto draw = [](std::uint32_t worker) {
    RngStream s = derive_stream(42, worker, 17, 0);
    std::vector<double> out(256);
    for (auto& v : out) v = s.normal();
    return out;
  };
  std::vector<std::vector<double>> serial(8), threaded(8);
  for (std::uint32_t w = 0; w < 8; ++w) serial[w] = draw(w);
  parallel_for(8, 8, [&](std::size_t w) { threaded[w] = draw(static_cast<std::uint32_t>(w)); });
  CHECK(serial == threaded);
  CHECK(serial[5] == draw(5));
}

TEST_CASE("uniform_open stays inside (0, 1) with the right moments") {
  RngStream s(7, 3, 1, 0);
  double sum = 0, sum_sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.005));
  CHECK(sum_sq / n - mean * mean == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("normal draws have unit variance and zero mean") {
  RngStream s(11, 0, 0, 0);
  const int n = 200000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("mix_seed separates salts") {
  CHECK(mix_seed(42, 0) != mix_seed(42, 1));
  CHECK(mix_seed(42, 0) == mix_seed(42, 0));
}

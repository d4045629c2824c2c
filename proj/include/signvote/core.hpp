#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace signvote {

using Sign = std::int8_t;

// Dense real-valued vector (true or estimated gradient, or an iterate).
// Entries are finite; dim > 0 is checked where a GradVector enters an
// operation, not on construction, so iterates can be built incrementally.
class GradVector {
 public:
  GradVector() = default;
  explicit GradVector(std::size_t dim, double fill = 0.0) : entries_(dim, fill) {}
  explicit GradVector(std::vector<double> entries) : entries_(std::move(entries)) {}
  GradVector(std::initializer_list<double> init) : entries_(init) {}

  std::size_t dim() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }
  std::span<const double> values() const { return entries_; }
  std::span<double> values() { return entries_; }

  // Throws InputError on an empty vector or a NaN/Inf entry.
  void check_finite() const;

  bool operator==(const GradVector&) const = default;

 private:
  std::vector<double> entries_;
};

// Three-valued sign vector: every entry is -1, 0 or +1.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t dim) : entries_(dim, 0) {}
  // Throws InputError if any entry is outside {-1, 0, +1}.
  explicit SignVector(std::vector<Sign> entries);
  SignVector(std::initializer_list<int> init);

  std::size_t dim() const { return entries_.size(); }
  Sign operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Sign> values() const { return entries_; }

  SignVector negated() const;

  bool operator==(const SignVector&) const = default;

 private:
  friend SignVector sign_of(const GradVector& v);
  friend SignVector sign_of_unchecked(std::span<const double> v);
  std::vector<Sign> entries_;
};

// Signed per-coordinate vote counts O_t together with the number of voters.
struct VoteTally {
  std::vector<std::int32_t> sums;
  std::int32_t voters = 0;

  bool operator==(const VoteTally&) const = default;
};

struct VoteOutcome {
  VoteTally tally;
  SignVector result;
};

inline Sign sign_scalar(double x) { return static_cast<Sign>((x > 0.0) - (x < 0.0)); }

// sign(0) = 0. Throws InputError on a non-finite entry.
SignVector sign_of(const GradVector& v);
// Hot-path variant for values already known to be finite.
SignVector sign_of_unchecked(std::span<const double> v);

// Coordinate-wise sum of the votes followed by sign(); tied coordinates
// resolve to 0. Throws InputError on an empty voter set or mismatched dims.
VoteOutcome majority_vote(std::span<const SignVector> votes);

// Adds one vote into a running tally (used by the simulator to avoid
// materializing the full vote list twice).
void accumulate_vote(VoteTally& tally, const SignVector& vote);
SignVector sign_of_tally(const VoteTally& tally);

}  // namespace signvote

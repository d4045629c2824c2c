#include "signvote/core.hpp"

#include <cmath>
#include <string>

#include "signvote/errors.hpp"

namespace signvote {

void GradVector::check_finite() const {
  if (entries_.empty()) throw InputError("gradient vector has zero dimension");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i]))
      throw InputError("non-finite gradient entry at index " + std::to_string(i));
  }
}

SignVector::SignVector(std::vector<Sign> entries) : entries_(std::move(entries)) {
  for (Sign s : entries_) {
    if (s < -1 || s > 1) throw InputError("sign entry outside {-1, 0, +1}");
  }
}

SignVector::SignVector(std::initializer_list<int> init) {
  entries_.reserve(init.size());
  for (int s : init) {
    if (s < -1 || s > 1) throw InputError("sign entry outside {-1, 0, +1}");
    entries_.push_back(static_cast<Sign>(s));
  }
}

SignVector SignVector::negated() const {
  SignVector out(dim());
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = static_cast<Sign>(-entries_[i]);
  return out;
}

SignVector sign_of_unchecked(std::span<const double> v) {
  SignVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.entries_[i] = sign_scalar(v[i]);
  return out;
}

SignVector sign_of(const GradVector& v) {
  v.check_finite();
  return sign_of_unchecked(v.values());
}

void accumulate_vote(VoteTally& tally, const SignVector& vote) {
  if (tally.voters == 0 && tally.sums.empty()) tally.sums.assign(vote.dim(), 0);
  if (vote.dim() != tally.sums.size())
    throw InputError("vote dimension " + std::to_string(vote.dim()) + " does not match tally dimension " +
                     std::to_string(tally.sums.size()));
  auto values = vote.values();
  for (std::size_t i = 0; i < values.size(); ++i) tally.sums[i] += values[i];
  ++tally.voters;
}

SignVector sign_of_tally(const VoteTally& tally) {
  std::vector<Sign> out(tally.sums.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<Sign>((tally.sums[i] > 0) - (tally.sums[i] < 0));
  return SignVector(std::move(out));
}

VoteOutcome majority_vote(std::span<const SignVector> votes) {
  if (votes.empty()) throw InputError("majority vote needs at least one voter");
  VoteTally tally;
  tally.sums.assign(votes.front().dim(), 0);
  for (const auto& v : votes) accumulate_vote(tally, v);
  auto result = sign_of_tally(tally);
  return {std::move(tally), std::move(result)};
}

}  // namespace signvote

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "signvote/core.hpp"

namespace signvote {

enum class AttackKind { kNone, kOmniscientOptimal, kBlindFlip, kAdversaryServer };

struct AttackStrategy {
  AttackKind kind = AttackKind::kNone;

  bool needs_true_gradient() const { return kind == AttackKind::kOmniscientOptimal; }
  bool needs_own_estimates() const { return kind != AttackKind::kOmniscientOptimal; }
};

// What the adversaries may see at step t: the current true gradient, the
// honest workers' current votes, and their own stochastic estimates. Nothing
// about future iterates is representable here.
//
// honest_votes is exposed but no strategy consumes it; the optimal attack
// does not need it.
struct AdversaryKnowledge {
  std::optional<GradVector> true_gradient;
  std::span<const SignVector> honest_votes;
  std::span<const GradVector> own_estimates;
};

// b copies of -sign(g). Coordinates with g_i == 0 get 0.
// Throws CapabilityError without a true gradient, InputError when b == 0.
std::vector<SignVector> omniscient_optimal_votes(const AdversaryKnowledge& knowledge, std::uint32_t b);

// Adversary j independently sends -sign(own_estimates[j]).
std::vector<SignVector> blind_flip_votes(const AdversaryKnowledge& knowledge, std::uint32_t b);

// The adversaries majority-vote their own signs to estimate sign(g), then
// all send the negation of that estimate.
std::vector<SignVector> adversary_server_votes(const AdversaryKnowledge& knowledge, std::uint32_t b);

// Dispatch on the strategy. Under kNone the b slots follow the protocol and
// vote sign(own_estimates[j]).
std::vector<SignVector> adversarial_votes(const AttackStrategy& attack, const AdversaryKnowledge& knowledge,
                                          std::uint32_t b);

std::string_view to_string(AttackKind kind);
std::optional<AttackKind> parse_attack(std::string_view name);

}  // namespace signvote

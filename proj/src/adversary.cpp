#include "signvote/adversary.hpp"

#include <string>

#include "signvote/errors.hpp"

namespace signvote {
namespace {

void require_estimates(const AdversaryKnowledge& knowledge, std::uint32_t b) {
  if (b == 0) throw InputError("adversary count must be at least 1");
  if (knowledge.own_estimates.size() < b)
    throw InputError("need " + std::to_string(b) + " adversary estimates, got " +
                     std::to_string(knowledge.own_estimates.size()));
}

}  // namespace

std::vector<SignVector> omniscient_optimal_votes(const AdversaryKnowledge& knowledge, std::uint32_t b) {
  if (!knowledge.true_gradient) throw CapabilityError("omniscient attack requires the true gradient");
  if (b == 0) throw InputError("adversary count must be at least 1");
  const SignVector flipped = sign_of(*knowledge.true_gradient).negated();
  return std::vector<SignVector>(b, flipped);
}

std::vector<SignVector> blind_flip_votes(const AdversaryKnowledge& knowledge, std::uint32_t b) {
  require_estimates(knowledge, b);
  std::vector<SignVector> votes;
  votes.reserve(b);
  for (std::uint32_t j = 0; j < b; ++j) votes.push_back(sign_of(knowledge.own_estimates[j]).negated());
  return votes;
}

std::vector<SignVector> adversary_server_votes(const AdversaryKnowledge& knowledge, std::uint32_t b) {
  require_estimates(knowledge, b);
  std::vector<SignVector> own;
  own.reserve(b);
  for (std::uint32_t j = 0; j < b; ++j) own.push_back(sign_of(knowledge.own_estimates[j]));
  const SignVector estimate = majority_vote(own).result;
  return std::vector<SignVector>(b, estimate.negated());
}

std::vector<SignVector> adversarial_votes(const AttackStrategy& attack, const AdversaryKnowledge& knowledge,
                                          std::uint32_t b) {
  switch (attack.kind) {
    case AttackKind::kNone: {
      if (b == 0) return {};
      require_estimates(knowledge, b);
      std::vector<SignVector> votes;
      votes.reserve(b);
      for (std::uint32_t j = 0; j < b; ++j) votes.push_back(sign_of(knowledge.own_estimates[j]));
      return votes;
    }
    case AttackKind::kOmniscientOptimal:
      return omniscient_optimal_votes(knowledge, b);
    case AttackKind::kBlindFlip:
      return blind_flip_votes(knowledge, b);
    case AttackKind::kAdversaryServer:
      return adversary_server_votes(knowledge, b);
  }
  return {};
}

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone:
      return "none";
    case AttackKind::kOmniscientOptimal:
      return "omniscient_optimal";
    case AttackKind::kBlindFlip:
      return "blind_flip";
    case AttackKind::kAdversaryServer:
      return "adversary_server";
  }
  return "?";
}

std::optional<AttackKind> parse_attack(std::string_view name) {
  for (auto kind : {AttackKind::kNone, AttackKind::kOmniscientOptimal, AttackKind::kBlindFlip,
                    AttackKind::kAdversaryServer}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

}  // namespace signvote

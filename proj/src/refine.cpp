#include "cdp/refine.hpp"

#include <algorithm>

namespace cdp {

namespace {

SearchConfig with_proof_hints(const SearchConfig& base, const Proof& p) {
  SearchConfig cfg = base;
  cfg.hints.clear();
  for (const ProofStep& s : p.steps)
    if (!s.is_axiom()) cfg.hints.emplace_back(s.formula, 1);
  return cfg;
}

// The joint proof of an outcome, when it closed every goal and verifies.
std::optional<Proof> usable_proof(const SearchOutcome& out,
                                  const TargetSet& targets) {
  if (!out.joint_proof) return std::nullopt;
  try {
    auto goals = targets.all_goals();
    verify(*out.joint_proof, goals);
  } catch (const VerifyError&) {
    return std::nullopt;
  }
  return out.joint_proof;
}

}  // namespace

std::vector<SearchOutcome> replay_with_blocking(const Proof& p,
                                                const SearchConfig& base,
                                                const TargetSet& targets) {
  verify(p);
  std::vector<Formula> sos = p.axioms();
  SearchConfig cfg = with_proof_hints(base, p);
  std::vector<SearchOutcome> outcomes;
  for (const ProofStep& s : p.steps) {
    if (s.is_axiom()) continue;
    SearchConfig blocked = cfg;
    blocked.blocked.push_back(s.formula);
    outcomes.push_back(saturate(sos, blocked, targets));
  }
  return outcomes;
}

Proof shorten(const Proof& p, const TargetSet& targets,
              const ShortenBudget& budget) {
  verify(p);
  Proof current = p;
  std::vector<Formula> sos = current.axioms();

  for (int round = 0; round < budget.max_rounds; ++round) {
    bool improved = false;

    // hint-guided re-search under ancestor subsumption
    SearchConfig cfg = with_proof_hints(budget.config, current);
    cfg.ancestor_subsumption = true;
    cfg.blocked.clear();
    SearchOutcome out = saturate(sos, cfg, targets);
    if (auto q = usable_proof(out, targets)) {
      if (q->length() < current.length()) {
        current = std::move(*q);
        improved = true;
      }
    }

    // blocking replays, one step at a time
    SearchConfig replay_cfg = budget.config;
    replay_cfg.ancestor_subsumption = true;
    for (SearchOutcome& r :
         replay_with_blocking(current, replay_cfg, targets)) {
      if (auto q = usable_proof(r, targets)) {
        if (q->length() < current.length()) {
          current = std::move(*q);
          improved = true;
        }
      }
    }

    if (!improved) break;
  }
  return current;
}

}  // namespace cdp

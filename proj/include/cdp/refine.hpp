#pragma once

#include "cdp/proof.hpp"
#include "cdp/search.hpp"

namespace cdp {

/// Replays the search once per deduced step of `p`, with that step's
/// formula blocked and p's steps supplied as value-1 hints. Outcomes are
/// returned in step order; any that closed all targets with a strictly
/// shorter proof carry it in joint_proof.
std::vector<SearchOutcome> replay_with_blocking(const Proof& p,
                                                const SearchConfig& base,
                                                const TargetSet& targets);

struct ShortenBudget {
  int max_rounds = 3;
  SearchConfig config;  // mode, caps and limits for the refinement runs
};

/// Iterative shortening: hint-guided re-search with ancestor subsumption,
/// then blocking replays; adopts any strictly shorter verified proof and
/// stops at a fixpoint or when the budget is spent. The result verifies and
/// is never longer than the input.
Proof shorten(const Proof& p, const TargetSet& targets,
              const ShortenBudget& budget);

}  // namespace cdp

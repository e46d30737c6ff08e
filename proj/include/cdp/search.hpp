#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdp/formula.hpp"
#include "cdp/proof.hpp"
#include "cdp/term_index.hpp"

namespace cdp {

struct SearchLimits {
  std::uint64_t max_given = 0;   // 0 = unlimited
  std::uint64_t max_kept = 0;    // 0 = unlimited
  double wall_clock_secs = 0.0;  // 0 = unlimited
};

struct SearchConfig {
  enum class Mode { ratio, breadth_first };

  Mode mode = Mode::breadth_first;
  int pick_given_ratio = 2;  // ratio mode: n weight picks, then one FIFO pick
  int max_weight = 1'000'000'000;
  bool term_avoidance = false;
  bool ancestor_subsumption = false;
  std::optional<int> max_distinct_vars;
  std::vector<Formula> blocked;
  std::vector<std::pair<Formula, int>> hints;  // (pattern, assigned value)
  SearchLimits limits;
};

/// Unit targets are proved individually; a conjunction closes once every
/// member is proved.
struct TargetSet {
  struct Conjunction {
    std::string name;
    std::vector<std::pair<std::string, Formula>> members;
  };

  std::vector<std::pair<std::string, Formula>> units;
  std::vector<Conjunction> conjunctions;

  bool empty() const { return units.empty() && conjunctions.empty(); }

  /// Units and conjunction members, flattened.
  std::vector<std::pair<std::string, Formula>> all_goals() const;

  static TargetSet single(std::string name, Formula f);
};

/// A kept formula. Weight is the effective weight (the hint value when a
/// hint matched, the symbol count otherwise). derivation_length counts
/// distinct deduced ancestors, the clause itself included; level and
/// derivation_length are those of the derivation recorded at creation or
/// at an ancestor-subsumption replacement.
struct ClauseRecord {
  std::uint32_t id = 0;
  Formula formula;  // canonical
  std::int32_t weight = 0;
  std::int32_t level = 0;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> parents;
  std::uint32_t derivation_length = 0;
  std::optional<std::int32_t> hint_matched;
  bool active = true;
  bool given = false;
};

enum class StopReason {
  all_targets_closed,
  saturated,
  given_limit,
  kept_limit,
  time_limit,
};

/// Counters cover deduced conclusions only (inputs are reported
/// separately), so generated = kept + the sum of all discard counters.
struct SearchOutcome {
  std::map<std::string, Proof> proofs;  // per closed target (and conjunction)
  std::optional<Proof> joint_proof;     // over all goals, when all closed
  std::map<std::string, std::uint32_t> closed_steps;

  std::uint64_t generated = 0;
  std::uint64_t kept = 0;
  std::uint64_t discarded_by_weight = 0;
  std::uint64_t discarded_by_term_avoidance = 0;
  std::uint64_t discarded_by_var_cap = 0;
  std::uint64_t discarded_blocked = 0;
  std::uint64_t subsumed = 0;
  std::uint64_t input_count = 0;
  std::uint64_t given_count = 0;
  std::vector<std::uint64_t> per_level_census;  // retained per level

  StopReason stop = StopReason::saturated;
  double wall_secs = 0.0;

  bool all_targets_closed() const {
    return stop == StopReason::all_targets_closed;
  }
};

/// Given-clause selection: breadth-first pops the lowest id; ratio(n) makes
/// n picks by minimal (effective weight, id), then one by lowest id.
class GivenSelector {
 public:
  GivenSelector(SearchConfig::Mode mode, int ratio)
      : mode_(mode), ratio_(ratio) {}

  void add(std::uint32_t id, std::int32_t weight);
  void remove(std::uint32_t id, std::int32_t weight);
  bool empty() const { return by_id_.empty(); }
  std::optional<std::uint32_t> pop();

 private:
  SearchConfig::Mode mode_;
  int ratio_;
  int counter_ = 0;
  std::set<std::pair<std::int32_t, std::uint32_t>> by_weight_;
  std::set<std::uint32_t> by_id_;
  std::unordered_map<std::uint32_t, std::int32_t> weights_;
};

/// The given-clause saturation loop with the full strategy suite.
class Saturation {
 public:
  Saturation(const SearchConfig& config, const TargetSet& targets);

  SearchOutcome run(std::span<const Formula> sos);
  const std::vector<ClauseRecord>& records() const { return records_; }

 private:
  struct Goal {
    std::string name;
    Formula formula;
    int conjunction;  // -1 for units
    std::optional<std::uint32_t> closed_by;
  };

  void process_input(const Formula& f);
  void pair(std::uint32_t major_id, std::uint32_t minor_id);
  void process_conclusion(Formula f, std::uint32_t maj, std::uint32_t min);
  void retain(Formula f,
              std::optional<std::pair<std::uint32_t, std::uint32_t>> parents,
              std::int32_t weight, std::optional<std::int32_t> hint);
  void deactivate(std::uint32_t id);
  void check_goals(const ClauseRecord& rec);
  std::optional<std::int32_t> match_hint(const Formula& f) const;
  std::uint32_t find_active_variant(const Formula& f) const;
  bool has_proper_subtautology(const Formula& f) const;
  // distinct deduced ancestors of {a, b} (themselves included when deduced);
  // also reports whether `watch` is among them
  std::uint32_t count_deduced_ancestors(std::uint32_t a, std::uint32_t b,
                                        std::uint32_t watch, bool& saw_watch);
  bool out_of_time();
  SearchOutcome finish(StopReason stop);

  SearchConfig cfg_;
  std::size_t conclusion_cap_;
  std::vector<Goal> goals_;
  std::vector<std::string> conjunction_names_;
  std::vector<std::size_t> conjunction_open_;
  std::size_t open_goals_ = 0;

  std::vector<ClauseRecord> records_;
  std::vector<std::uint32_t> used_;
  GivenSelector selector_;
  TermIndex index_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> variants_;

  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;

  SearchOutcome out_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t tick_ = 0;
  bool timed_out_ = false;
};

inline SearchOutcome saturate(std::span<const Formula> sos,
                              const SearchConfig& config,
                              const TargetSet& targets) {
  Saturation s(config, targets);
  return s.run(sos);
}

/// Transitive parent closure of the target steps, pruned and ordered.
/// Engine ids are preserved when they are already topologically consistent;
/// otherwise steps are renumbered.
Proof extract_proof(
    const std::vector<ClauseRecord>& records,
    const std::vector<std::pair<std::string, std::uint32_t>>& targets);

enum class CensusDedup { variant_only, forward_subsumption };

/// Exhaustive condensed-detachment closure by levels.
struct CensusResult {
  std::vector<Formula> store;            // seed, then each level in order
  std::vector<std::size_t> level_begin;  // level_begin[k] = start of level k
  std::vector<std::vector<Formula>> exceptions;  // per level 1..n

  std::span<const Formula> level(std::size_t k) const {
    return {store.data() + level_begin[k], level_begin[k + 1] - level_begin[k]};
  }
  std::size_t levels() const { return level_begin.size() - 2; }
  std::uint64_t new_at(std::size_t k) const { return level(k).size(); }
  std::uint64_t cumulative_through(std::size_t k) const;
};

CensusResult level_census(const Formula& seed, int levels,
                          const Formula* variant_pattern = nullptr,
                          int jobs = 1,
                          CensusDedup dedup = CensusDedup::variant_only);

}  // namespace cdp

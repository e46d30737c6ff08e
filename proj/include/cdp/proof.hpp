#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdp/formula.hpp"

namespace cdp {

struct ProofStep {
  std::uint32_t id = 0;
  /// (major id, minor id) for a condensed-detachment step; nullopt = axiom.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> parents;
  Formula formula;

  bool is_axiom() const { return !parents.has_value(); }
};

/// A derivation: steps in ascending id order, plus the claimed targets.
struct Proof {
  std::vector<ProofStep> steps;
  std::map<std::string, std::uint32_t> targets;  // target name -> step id

  /// Number of condensed-detachment steps (shared steps counted once).
  std::size_t length() const;
  const ProofStep* find(std::uint32_t id) const;
  std::vector<Formula> axioms() const;
};

struct ProofMetrics {
  std::size_t length = 0;
  std::size_t level = 0;
  std::size_t max_weight = 0;
  std::size_t max_distinct_vars = 0;
};

class VerifyError : public std::runtime_error {
 public:
  enum class Kind { bad_structure, bad_reference, step_mismatch, target_unproved };

  VerifyError(Kind kind, const std::string& message, std::uint32_t step_id = 0,
              std::string target = {})
      : std::runtime_error(message),
        kind_(kind),
        step_id_(step_id),
        target_(std::move(target)) {}

  Kind kind() const { return kind_; }
  std::uint32_t step_id() const { return step_id_; }
  const std::string& target() const { return target_; }

 private:
  Kind kind_;
  std::uint32_t step_id_;
  std::string target_;
};

/// Recomputes every cd step with condensed_detach and checks the recorded
/// formula is a variant of the result; throws VerifyError on the first
/// failure. Uses only the formula and unify modules.
ProofMetrics verify(const Proof& p);

/// As verify(p), and additionally requires every goal in `goals` to be
/// claimed by the proof with a final step that is a variant of, or
/// subsumes, the goal formula.
ProofMetrics verify(const Proof& p,
                    std::span<const std::pair<std::string, Formula>> goals);

/// One line per step, `<id> [axiom] P(...).` or `<id> [cd,<maj>,<min>]
/// P(...).`, then `% target <name> = <id>` lines and a metrics comment.
std::string render(const Proof& p);

/// Accepts render's format and the OTTER-style `[hyper,<nucleus>,<maj>,
/// <min>]` history (the nucleus id is ignored); entries may wrap across
/// lines until the terminating period.
Proof parse_proof(std::string_view text);

}  // namespace cdp

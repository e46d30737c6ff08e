#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cdp/formula.hpp"

namespace cdp {

/// An idempotent substitution: no bound variable occurs in any binding's
/// value, and identity bindings are never stored.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::vector<std::pair<NameId, Formula>> bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Formula* lookup(NameId var) const;

  /// Bindings sorted by variable name id.
  const std::vector<std::pair<NameId, Formula>>& bindings() const {
    return bindings_;
  }

 private:
  std::vector<std::pair<NameId, Formula>> bindings_;
};

/// Simultaneous replacement of each bound variable by its image.
Formula apply(const Substitution& sub, const Formula& f);

/// Most general unifier with occurs check. Variables of the same name in
/// both formulas are shared; callers standardize apart when required.
std::optional<Substitution> mgu(const Formula& a, const Formula& b);

/// One-way matching: on success apply(result, general) = specific, binding
/// only variables of `general`.
std::optional<Substitution> match_onto(const Formula& general,
                                       const Formula& specific);

/// Thrown when a condensed-detachment major premiss is a variable or its
/// head is not the equivalential connective.
class MajorNotConditional : public std::invalid_argument {
 public:
  MajorNotConditional()
      : std::invalid_argument(
            "major premiss is not an e(...) conditional") {}
};

/// Condensed detachment: for major e(s,t) and minor r (renamed apart
/// internally), returns canonical_rename(sigma(t)) where sigma = mgu(s, r),
/// or nullopt when s and r do not unify.
std::optional<Formula> condensed_detach(const Formula& major,
                                        const Formula& minor);

/// Symbol count of the most general common instance of the major's
/// antecedent and the minor; fails exactly when condensed_detach does.
std::optional<std::size_t> common_instance_size(const Formula& major,
                                                const Formula& minor);

namespace detail {

enum class CdStatus { ok, not_unifiable, over_cap };

/// Condensed detachment with an output size cap: conclusions that would
/// exceed `cap` symbols are abandoned early and reported as over_cap.
CdStatus condensed_detach_capped(const Formula& major, const Formula& minor,
                                 std::size_t cap, Formula& out);

}  // namespace detail

}  // namespace cdp

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cdp/formula.hpp"

namespace cdp {

enum class FormulaTag : unsigned {
  shortest_axiom = 1u << 0,
  too_weak = 1u << 1,
  basis_member = 1u << 2,
  seven_symbol_target = 1u << 3,
};

struct NamedFormula {
  std::string name;
  Formula formula;  // canonically renamed
  unsigned tags = 0;

  bool has_tag(FormulaTag t) const {
    return (tags & static_cast<unsigned>(t)) != 0;
  }
};

std::string tag_names(unsigned tags);

namespace corpus {

/// Looks up a registered formula by name; throws std::out_of_range for
/// unknown names.
const NamedFormula& get(const std::string& name);

/// Reverse lookup: the registered name of a variant of `f`, if any.
/// Registration order decides between duplicates.
const NamedFormula* find_variant(const Formula& f);

/// All registered entries in registration order.
std::span<const NamedFormula> all();

/// The fourteen shortest single axioms, in discovery order.
std::span<const NamedFormula> shortest_axioms();

/// {transitivity, symmetry}.
std::span<const NamedFormula> two_basis();

/// {reflexivity, transitivity, symmetry}.
std::span<const NamedFormula> three_basis();

/// The fifteen 7-symbol theorems with the 2-property, computed by
/// enumeration and memoized.
std::span<const NamedFormula> seven_symbol_targets();

}  // namespace corpus

}  // namespace cdp

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdp {

using NameId = std::int32_t;
using SymbolId = std::int32_t;

/// Interned function symbols. A symbol's arity is fixed the first time the
/// name is seen; re-declaring it with a different arity throws.
class Symbols {
 public:
  static SymbolId intern(std::string_view name, int arity);
  static std::optional<SymbolId> find(std::string_view name);
  static const std::string& text(SymbolId id);
  static int arity(SymbolId id);

  /// The equivalential connective `e`, pre-registered with arity 2.
  static constexpr SymbolId equiv = 0;
};

/// Interned variable names. Canonical names follow the sequence
/// x, y, z, u, v, w, v6, v7, ...
class Names {
 public:
  static NameId intern(std::string_view name);
  static const std::string& text(NameId id);
  static NameId canonical(std::size_t index);
  static std::string canonical_text(std::size_t index);
  /// Reserved names used to standardize a minor premiss apart ("#0", "#1",
  /// ...). The parser never produces them.
  static NameId renamed_apart(std::size_t index);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An object-level formula: a variable or a compound over interned symbols.
///
/// Storage is a preorder code vector: code >= 0 is a variable occurrence
/// (index into the per-formula name table, numbered by first occurrence),
/// code < 0 is a compound head with symbol id -(code+1). Two formulas are
/// alphabetic variants exactly when their code vectors are equal.
class Formula {
 public:
  Formula() = default;

  static Formula variable(NameId name);
  static Formula compound(SymbolId head, std::span<const Formula> args);

  bool empty() const { return codes_.empty(); }
  bool is_variable() const { return codes_.size() == 1 && codes_[0] >= 0; }
  bool is_compound() const { return !codes_.empty() && codes_[0] < 0; }

  /// Head symbol of a compound; throws for variables.
  SymbolId head() const;
  /// Variable name of a bare variable; throws for compounds.
  NameId var_name() const;

  std::size_t symbol_count() const { return codes_.size(); }
  std::size_t distinct_var_count() const { return var_names_.size(); }

  const std::vector<std::int32_t>& codes() const { return codes_; }
  const std::vector<NameId>& var_names() const { return var_names_; }

  /// Hash of the code vector: equal for variants, stable within a process.
  std::uint64_t variant_hash() const;

  /// Structural equality including variable names.
  friend bool operator==(const Formula& a, const Formula& b) {
    return a.codes_ == b.codes_ && a.var_names_ == b.var_names_;
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

  /// Becomes a copy of `src` with its name table replaced; reuses this
  /// formula's storage.
  void assign_renamed(const Formula& src, std::span<const NameId> names);

 private:
  friend class FormulaBuilder;
  friend Formula canonical_rename(const Formula&);
  friend Formula canonical_rename(Formula&&);
  friend Formula rename_with(const Formula&, std::span<const NameId>);

  std::vector<std::int32_t> codes_;
  std::vector<NameId> var_names_;
};

/// Incremental preorder constructor used by substitution application,
/// condensed detachment and the enumerators. Variable indices are assigned
/// by first occurrence of the pushed name.
class FormulaBuilder {
 public:
  void reset();
  void push_symbol(SymbolId head);
  void push_var(NameId name);
  /// Appends a whole formula, translating its variables by name.
  void push_formula(const Formula& f);
  std::size_t size() const { return codes_.size(); }
  Formula take();

 private:
  std::int32_t local_index(NameId name);

  std::vector<std::int32_t> codes_;
  std::vector<NameId> var_names_;
};

/// Arity of the node introduced by a preorder code (0 for variables).
int code_arity(std::int32_t code);

/// End position (one past) of the subterm starting at `pos`.
std::size_t subterm_end(std::span<const std::int32_t> codes, std::size_t pos);

/// Parses the `e(...)` notation. An outer `P( ... )` wrapper and a trailing
/// period are stripped. Lowercase identifiers not followed by `(` are
/// variables; identifiers followed by `(` are compound heads.
Formula parse_formula(std::string_view text);

/// Inverse of parse_formula; emits no whitespace.
std::string format_formula(const Formula& f);

std::size_t symbol_count(const Formula& f);
std::size_t distinct_var_count(const Formula& f);

/// Renames variables, in order of first occurrence, to x, y, z, u, v, w,
/// v6, v7, ... Idempotent.
Formula canonical_rename(const Formula& f);
Formula canonical_rename(Formula&& f);

/// Replaces the formula's name table; `names` must cover every variable.
Formula rename_with(const Formula& f, std::span<const NameId> names);

bool is_canonical(const Formula& f);

/// Alphabetic variance: equality up to injective renaming of variables.
bool is_variant(const Formula& a, const Formula& b);

/// True iff every variable present occurs exactly twice.
bool two_property(const Formula& f);

/// Equivalential-calculus oracle: true iff every variable occurs an even
/// number of times. Throws std::invalid_argument when the formula contains
/// a symbol other than `e`.
bool is_ec_theorem(const Formula& f);

/// True iff some subformula of f (f itself included) is a variant of
/// `pattern`.
bool contains_variant_subformula(const Formula& f, const Formula& pattern);

/// All formulas of symbol count n over `e`, canonically renamed, pairwise
/// non-variant, sorted by their text. Empty for even n.
std::vector<Formula> enumerate_formulas(std::size_t n);

/// The subset of enumerate_formulas(n) satisfying the 2-property.
std::vector<Formula> enumerate_two_property_theorems(std::size_t n);

}  // namespace cdp

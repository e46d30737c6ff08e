#pragma once

#include <string>
#include <vector>

#include "cdp/formula.hpp"
#include "cdp/search.hpp"

namespace cdp {

/// A prove/shorten run read from a problem file: sections `[sos]`,
/// `[hints value=<n>]`, `[targets]`, `[basis-target <name>]`, `[blocked]`
/// and `[params]`; formulas one per line, `%` starts a comment.
struct Problem {
  std::vector<Formula> sos;
  SearchConfig config;
  TargetSet targets;
};

Problem parse_problem(std::string_view text);
Problem load_problem(const std::string& path);

/// One formula per line; `%` comments and blank lines are skipped.
std::vector<Formula> parse_formula_list(std::string_view text);
std::vector<Formula> load_formula_list(const std::string& path);

/// The corpus name of a variant of `f` when one exists, else
/// `target<index>`.
std::string default_target_name(const Formula& f, std::size_t index);

}  // namespace cdp

#include "cdp/proof.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_map>

#include "cdp/unify.hpp"

namespace cdp {

std::size_t Proof::length() const {
  std::size_t n = 0;
  for (const ProofStep& s : steps)
    if (!s.is_axiom()) ++n;
  return n;
}

const ProofStep* Proof::find(std::uint32_t id) const {
  for (const ProofStep& s : steps)
    if (s.id == id) return &s;
  return nullptr;
}

std::vector<Formula> Proof::axioms() const {
  std::vector<Formula> out;
  for (const ProofStep& s : steps)
    if (s.is_axiom()) out.push_back(s.formula);
  return out;
}

namespace {

ProofMetrics metrics_from_levels(
    const Proof& p, const std::unordered_map<std::uint32_t, std::size_t>& lv) {
  ProofMetrics m;
  for (const ProofStep& s : p.steps) {
    if (s.is_axiom()) continue;
    ++m.length;
    m.level = std::max(m.level, lv.at(s.id));
    m.max_weight = std::max(m.max_weight, s.formula.symbol_count());
    m.max_distinct_vars =
        std::max(m.max_distinct_vars, s.formula.distinct_var_count());
  }
  return m;
}

}  // namespace

ProofMetrics verify(const Proof& p) {
  std::unordered_map<std::uint32_t, std::size_t> index;
  std::unordered_map<std::uint32_t, std::size_t> level;
  std::uint32_t prev_id = 0;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& s = p.steps[i];
    if (s.id == 0)
      throw VerifyError(VerifyError::Kind::bad_structure, "step id 0");
    if (s.id <= prev_id)
      throw VerifyError(VerifyError::Kind::bad_structure,
                        "step ids must be strictly increasing", s.id);
    prev_id = s.id;
    if (s.formula.empty())
      throw VerifyError(VerifyError::Kind::bad_structure, "empty step formula",
                        s.id);
    if (s.is_axiom()) {
      index.emplace(s.id, i);
      level.emplace(s.id, 0);
      continue;
    }
    auto [maj_id, min_id] = *s.parents;
    auto maj = index.find(maj_id);
    auto min = index.find(min_id);
    if (maj == index.end() || min == index.end() || maj_id >= s.id ||
        min_id >= s.id)
      throw VerifyError(VerifyError::Kind::bad_reference,
                        "step " + std::to_string(s.id) +
                            " references a missing or later step",
                        s.id);
    std::optional<Formula> expected;
    try {
      expected = condensed_detach(p.steps[maj->second].formula,
                                  p.steps[min->second].formula);
    } catch (const MajorNotConditional&) {
      expected = std::nullopt;
    }
    if (!expected || !is_variant(*expected, s.formula))
      throw VerifyError(VerifyError::Kind::step_mismatch,
                        "step " + std::to_string(s.id) +
                            " does not follow from its premisses",
                        s.id);
    index.emplace(s.id, i);
    level.emplace(s.id, 1 + std::max(level.at(maj_id), level.at(min_id)));
  }
  return metrics_from_levels(p, level);
}

ProofMetrics verify(const Proof& p,
                    std::span<const std::pair<std::string, Formula>> goals) {
  ProofMetrics m = verify(p);
  for (const auto& [name, goal] : goals) {
    auto it = p.targets.find(name);
    if (it == p.targets.end())
      throw VerifyError(VerifyError::Kind::target_unproved,
                        "target '" + name + "' is not claimed by the proof", 0,
                        name);
    const ProofStep* s = p.find(it->second);
    if (s == nullptr)
      throw VerifyError(VerifyError::Kind::target_unproved,
                        "target '" + name + "' claims a missing step", 0,
                        name);
    if (!is_variant(s->formula, goal) && !match_onto(s->formula, goal))
      throw VerifyError(VerifyError::Kind::target_unproved,
                        "step " + std::to_string(s->id) +
                            " neither matches nor subsumes target '" + name +
                            "'",
                        s->id, name);
  }
  return m;
}

std::string render(const Proof& p) {
  std::ostringstream out;
  std::unordered_map<std::uint32_t, std::size_t> level;
  ProofMetrics m;
  for (const ProofStep& s : p.steps) {
    out << s.id;
    if (s.is_axiom()) {
      out << " [axiom] ";
      level[s.id] = 0;
    } else {
      out << " [cd," << s.parents->first << ',' << s.parents->second << "] ";
      std::size_t lv = 0;
      auto a = level.find(s.parents->first);
      auto b = level.find(s.parents->second);
      if (a != level.end()) lv = std::max(lv, a->second + 1);
      if (b != level.end()) lv = std::max(lv, b->second + 1);
      level[s.id] = lv;
      ++m.length;
      m.level = std::max(m.level, lv);
      m.max_weight = std::max(m.max_weight, s.formula.symbol_count());
      m.max_distinct_vars =
          std::max(m.max_distinct_vars, s.formula.distinct_var_count());
    }
    out << "P(" << format_formula(s.formula) << ").\n";
  }
  for (const auto& [name, id] : p.targets)
    out << "% target " << name << " = " << id << "\n";
  out << "% length=" << m.length << " level=" << m.level
      << " max_weight=" << m.max_weight << " max_vars=" << m.max_distinct_vars
      << "\n";
  return out.str();
}

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ": " + message, line);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool parse_u32(std::string_view s, std::uint32_t& out) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void parse_entry(std::string_view entry, std::size_t line, Proof& proof,
                 std::vector<std::uint32_t>& seen) {
  std::size_t bracket = entry.find('[');
  std::size_t close = entry.find(']');
  if (bracket == std::string_view::npos || close == std::string_view::npos ||
      close < bracket)
    bad_line(line, "malformed step (expected '<id> [history] P(...).')");

  std::uint32_t id = 0;
  if (!parse_u32(entry.substr(0, bracket), id) || id == 0)
    bad_line(line, "malformed step id");
  if (!seen.empty() && id <= seen.back())
    bad_line(line, id == seen.back() ? "id reuse" : "step ids must increase");

  std::string_view history = entry.substr(bracket + 1, close - bracket - 1);
  std::vector<std::string_view> parts;
  while (!history.empty()) {
    std::size_t comma = history.find(',');
    parts.push_back(trim(history.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    history.remove_prefix(comma + 1);
  }
  if (!parts.empty() && parts[0].empty() && parts.size() == 1) parts.clear();

  ProofStep step;
  step.id = id;
  if (parts.empty() || (parts.size() == 1 && parts[0] == "axiom")) {
    // axiom
  } else if ((parts.size() == 3 && parts[0] == "cd") ||
             (parts.size() == 4 && parts[0] == "hyper")) {
    std::size_t base = parts.size() - 2;  // hyper carries the nucleus id
    std::uint32_t maj = 0, min = 0;
    if (!parse_u32(parts[base], maj) || !parse_u32(parts[base + 1], min))
      bad_line(line, "malformed premiss reference");
    for (std::uint32_t ref : {maj, min})
      if (!std::binary_search(seen.begin(), seen.end(), ref))
        bad_line(line, "forward reference to step " + std::to_string(ref));
    step.parents = {maj, min};
  } else {
    bad_line(line, "unknown inference history");
  }

  std::string_view body = trim(entry.substr(close + 1));
  try {
    step.formula = parse_formula(body);
  } catch (const ParseError& e) {
    bad_line(line, std::string("bad formula: ") + e.what());
  }
  seen.push_back(id);
  proof.steps.push_back(std::move(step));
}

}  // namespace

Proof parse_proof(std::string_view text) {
  Proof proof;
  std::vector<std::uint32_t> seen;
  std::string pending;
  std::size_t entry_line = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::string_view t = trim(line);
    if (pending.empty()) {
      if (t.empty()) continue;
      if (t.front() == '%') {
        // `% target <name> = <id>` comments restore the target map
        std::string_view rest = trim(t.substr(1));
        if (rest.starts_with("target ")) {
          rest = trim(rest.substr(7));
          std::size_t eq = rest.find('=');
          if (eq != std::string_view::npos) {
            std::string name(trim(rest.substr(0, eq)));
            std::uint32_t id = 0;
            if (name.empty() || !parse_u32(rest.substr(eq + 1), id))
              bad_line(line_no, "malformed target comment");
            if (!std::binary_search(seen.begin(), seen.end(), id))
              bad_line(line_no, "target references an unknown step");
            proof.targets[name] = id;
          }
        }
        continue;
      }
      entry_line = line_no;
    }
    pending += line;
    pending += ' ';
    // an entry ends at the first period
    if (pending.find('.') != std::string::npos) {
      parse_entry(trim(pending), entry_line, proof, seen);
      pending.clear();
    }
  }
  if (!trim(pending).empty())
    bad_line(entry_line, "unterminated step (missing '.')");
  return proof;
}

}  // namespace cdp

#include "cdp/problem.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cdp/corpus.hpp"

namespace cdp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ": " + message, line);
}

Formula parse_line_formula(std::string_view text, std::size_t line) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    bad_line(line, e.what());
  }
}

bool parse_int(std::string_view s, long long& out) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_on_off(std::string_view s, bool& out) {
  if (s == "on") {
    out = true;
    return true;
  }
  if (s == "off") {
    out = false;
    return true;
  }
  return false;
}

void apply_param(SearchConfig& cfg, std::string_view key,
                 std::string_view value, std::size_t line) {
  long long n = 0;
  if (key == "mode") {
    if (value == "bfs") {
      cfg.mode = SearchConfig::Mode::breadth_first;
    } else if (value.starts_with("ratio:") &&
               parse_int(value.substr(6), n) && n >= 1) {
      cfg.mode = SearchConfig::Mode::ratio;
      cfg.pick_given_ratio = static_cast<int>(n);
    } else {
      bad_line(line, "mode is 'ratio:<n>' or 'bfs'");
    }
  } else if (key == "max_weight") {
    if (!parse_int(value, n) || n < 3)
      bad_line(line, "max_weight must be an integer >= 3");
    cfg.max_weight = static_cast<int>(n);
  } else if (key == "term_avoidance") {
    if (!parse_on_off(value, cfg.term_avoidance))
      bad_line(line, "term_avoidance is 'on' or 'off'");
  } else if (key == "ancestor_subsumption") {
    if (!parse_on_off(value, cfg.ancestor_subsumption))
      bad_line(line, "ancestor_subsumption is 'on' or 'off'");
  } else if (key == "max_distinct_vars") {
    if (!parse_int(value, n) || n < 1)
      bad_line(line, "max_distinct_vars must be a positive integer");
    cfg.max_distinct_vars = static_cast<int>(n);
  } else if (key == "max_given") {
    if (!parse_int(value, n) || n < 0) bad_line(line, "bad max_given");
    cfg.limits.max_given = static_cast<std::uint64_t>(n);
  } else if (key == "max_kept") {
    if (!parse_int(value, n) || n < 0) bad_line(line, "bad max_kept");
    cfg.limits.max_kept = static_cast<std::uint64_t>(n);
  } else if (key == "wall_clock_secs") {
    if (!parse_int(value, n) || n < 0) bad_line(line, "bad wall_clock_secs");
    cfg.limits.wall_clock_secs = static_cast<double>(n);
  } else {
    bad_line(line, "unknown parameter '" + std::string(key) + "'");
  }
}

}  // namespace

std::string default_target_name(const Formula& f, std::size_t index) {
  if (const NamedFormula* nf = corpus::find_variant(f)) return nf->name;
  return "target" + std::to_string(index);
}

Problem parse_problem(std::string_view text) {
  Problem prob;
  enum class Section { none, sos, hints, targets, basis, blocked, params };
  Section section = Section::none;
  int hint_value = 1;
  TargetSet::Conjunction* conj = nullptr;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;

    if (line.front() == '[') {
      if (line.back() != ']') bad_line(line_no, "unterminated section header");
      std::string_view header = trim(line.substr(1, line.size() - 2));
      conj = nullptr;
      if (header == "sos") {
        section = Section::sos;
      } else if (header == "targets") {
        section = Section::targets;
      } else if (header == "blocked") {
        section = Section::blocked;
      } else if (header == "params") {
        section = Section::params;
      } else if (header == "hints" || header.starts_with("hints ")) {
        section = Section::hints;
        hint_value = 1;
        std::string_view rest = trim(header.substr(5));
        if (!rest.empty()) {
          if (!rest.starts_with("value="))
            bad_line(line_no, "hints header takes 'value=<n>'");
          long long v = 0;
          if (!parse_int(rest.substr(6), v) || v < 1)
            bad_line(line_no, "hint value must be a positive integer");
          hint_value = static_cast<int>(v);
        }
      } else if (header.starts_with("basis-target")) {
        section = Section::basis;
        std::string name(trim(header.substr(12)));
        if (name.empty()) bad_line(line_no, "basis-target needs a name");
        prob.targets.conjunctions.push_back({name, {}});
        conj = &prob.targets.conjunctions.back();
      } else {
        bad_line(line_no, "unknown section '" + std::string(header) + "'");
      }
      continue;
    }

    switch (section) {
      case Section::none:
        bad_line(line_no, "content before the first section header");
      case Section::sos:
        prob.sos.push_back(parse_line_formula(line, line_no));
        break;
      case Section::hints:
        prob.config.hints.emplace_back(parse_line_formula(line, line_no),
                                       hint_value);
        break;
      case Section::targets: {
        Formula f = parse_line_formula(line, line_no);
        std::string name =
            default_target_name(f, prob.targets.units.size() + 1);
        prob.targets.units.emplace_back(std::move(name), std::move(f));
        break;
      }
      case Section::basis: {
        Formula f = parse_line_formula(line, line_no);
        std::string name = default_target_name(f, conj->members.size() + 1);
        conj->members.emplace_back(std::move(name), std::move(f));
        break;
      }
      case Section::blocked:
        prob.config.blocked.push_back(parse_line_formula(line, line_no));
        break;
      case Section::params: {
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
          bad_line(line_no, "params are 'key = value'");
        apply_param(prob.config, trim(line.substr(0, eq)),
                    trim(line.substr(eq + 1)), line_no);
        break;
      }
    }
  }
  return prob;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Problem load_problem(const std::string& path) {
  return parse_problem(slurp(path));
}

std::vector<Formula> parse_formula_list(std::string_view text) {
  std::vector<Formula> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;
    out.push_back(parse_line_formula(line, line_no));
  }
  return out;
}

std::vector<Formula> load_formula_list(const std::string& path) {
  return parse_formula_list(slurp(path));
}

}  // namespace cdp

#include "cdp/formula.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <unordered_map>

namespace cdp {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::vector<std::string> names;
  std::vector<int> arities;
  std::unordered_map<std::string, SymbolId> by_name;

  SymbolTable() {
    names.emplace_back("e");
    arities.push_back(2);
    by_name.emplace("e", 0);
  }
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

struct NameTable {
  std::mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, NameId> by_name;
  std::vector<NameId> canonical_ids;
  std::vector<NameId> apart_ids;
};

NameTable& names() {
  static NameTable table;
  return table;
}

NameId intern_locked(NameTable& t, const std::string& text) {
  auto it = t.by_name.find(text);
  if (it != t.by_name.end()) return it->second;
  NameId id = static_cast<NameId>(t.names.size());
  t.names.push_back(text);
  t.by_name.emplace(text, id);
  return id;
}

}  // namespace

SymbolId Symbols::intern(std::string_view name, int arity) {
  if (arity < 0) throw std::invalid_argument("negative arity");
  auto& t = symbols();
  std::scoped_lock lock(t.mu);
  auto it = t.by_name.find(std::string(name));
  if (it != t.by_name.end()) {
    if (t.arities[it->second] != arity)
      throw std::invalid_argument("arity conflict for symbol '" +
                                  std::string(name) + "'");
    return it->second;
  }
  SymbolId id = static_cast<SymbolId>(t.names.size());
  t.names.emplace_back(name);
  t.arities.push_back(arity);
  t.by_name.emplace(std::string(name), id);
  return id;
}

std::optional<SymbolId> Symbols::find(std::string_view name) {
  auto& t = symbols();
  std::scoped_lock lock(t.mu);
  auto it = t.by_name.find(std::string(name));
  if (it == t.by_name.end()) return std::nullopt;
  return it->second;
}

const std::string& Symbols::text(SymbolId id) {
  auto& t = symbols();
  std::scoped_lock lock(t.mu);
  return t.names.at(static_cast<std::size_t>(id));
}

int Symbols::arity(SymbolId id) {
  if (id == equiv) return 2;
  auto& t = symbols();
  std::scoped_lock lock(t.mu);
  return t.arities.at(static_cast<std::size_t>(id));
}

NameId Names::intern(std::string_view name) {
  auto& t = names();
  std::scoped_lock lock(t.mu);
  return intern_locked(t, std::string(name));
}

const std::string& Names::text(NameId id) {
  auto& t = names();
  std::scoped_lock lock(t.mu);
  return t.names.at(static_cast<std::size_t>(id));
}

std::string Names::canonical_text(std::size_t index) {
  static const char* first[6] = {"x", "y", "z", "u", "v", "w"};
  if (index < 6) return first[index];
  return "v" + std::to_string(index);
}

NameId Names::canonical(std::size_t index) {
  auto& t = names();
  std::scoped_lock lock(t.mu);
  while (t.canonical_ids.size() <= index)
    t.canonical_ids.push_back(
        intern_locked(t, canonical_text(t.canonical_ids.size())));
  return t.canonical_ids[index];
}

NameId Names::renamed_apart(std::size_t index) {
  auto& t = names();
  std::scoped_lock lock(t.mu);
  while (t.apart_ids.size() <= index)
    t.apart_ids.push_back(
        intern_locked(t, "#" + std::to_string(t.apart_ids.size())));
  return t.apart_ids[index];
}

int code_arity(std::int32_t code) {
  if (code >= 0) return 0;
  SymbolId s = -1 - code;
  if (s == Symbols::equiv) return 2;
  return Symbols::arity(s);
}

std::size_t subterm_end(std::span<const std::int32_t> codes, std::size_t pos) {
  std::size_t need = 1;
  while (need > 0) {
    need += static_cast<std::size_t>(code_arity(codes[pos]));
    --need;
    ++pos;
  }
  return pos;
}

Formula Formula::variable(NameId name) {
  Formula f;
  f.codes_.push_back(0);
  f.var_names_.push_back(name);
  return f;
}

Formula Formula::compound(SymbolId head, std::span<const Formula> args) {
  if (static_cast<int>(args.size()) != Symbols::arity(head))
    throw std::invalid_argument("argument count does not match arity of '" +
                                Symbols::text(head) + "'");
  FormulaBuilder b;
  b.push_symbol(head);
  for (const Formula& a : args) b.push_formula(a);
  return b.take();
}

SymbolId Formula::head() const {
  if (!is_compound()) throw std::logic_error("head() on a variable");
  return -1 - codes_[0];
}

NameId Formula::var_name() const {
  if (!is_variable()) throw std::logic_error("var_name() on a compound");
  return var_names_[0];
}

std::uint64_t Formula::variant_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int32_t c : codes_) {
    h ^= static_cast<std::uint32_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

void FormulaBuilder::reset() {
  codes_.clear();
  var_names_.clear();
}

void FormulaBuilder::push_symbol(SymbolId head) {
  codes_.push_back(-1 - head);
}

void FormulaBuilder::push_var(NameId name) {
  codes_.push_back(local_index(name));
}

void FormulaBuilder::push_formula(const Formula& f) {
  for (std::int32_t c : f.codes_) {
    if (c < 0)
      codes_.push_back(c);
    else
      codes_.push_back(local_index(f.var_names_[static_cast<std::size_t>(c)]));
  }
}

std::int32_t FormulaBuilder::local_index(NameId name) {
  for (std::size_t i = 0; i < var_names_.size(); ++i)
    if (var_names_[i] == name) return static_cast<std::int32_t>(i);
  var_names_.push_back(name);
  return static_cast<std::int32_t>(var_names_.size() - 1);
}

Formula FormulaBuilder::take() {
  Formula f;
  f.codes_ = std::move(codes_);
  f.var_names_ = std::move(var_names_);
  reset();
  return f;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, pos);
  }

  std::string_view identifier() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected an identifier");
    return text.substr(start, pos - start);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  void formula(FormulaBuilder& out) {
    std::string_view id = identifier();
    if (peek() == '(') {
      if (id == "P") fail("'P' is reserved for the clause wrapper");
      ++pos;
      int arity = 0;
      FormulaBuilder args;
      while (true) {
        if (peek() == ')') {
          if (arity == 0) fail("empty argument list");
          fail("empty argument");
        }
        formula(args);
        ++arity;
        char c = peek();
        if (c == ',') {
          ++pos;
          continue;
        }
        if (c == ')') {
          ++pos;
          break;
        }
        fail("unbalanced parentheses");
      }
      SymbolId head;
      try {
        head = Symbols::intern(id, arity);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      out.push_symbol(head);
      Formula packed = args.take();
      out.push_formula(packed);
      return;
    }
    if (!std::islower(static_cast<unsigned char>(id[0])))
      fail("variable names start with a lowercase letter");
    out.push_var(Names::intern(id));
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p{text};
  if (p.at_end()) throw ParseError("empty input", 0);

  // optional P( ... ) wrapper
  bool wrapped = false;
  std::size_t save = p.pos;
  p.skip_ws();
  if (p.pos < p.text.size() && p.text[p.pos] == 'P') {
    std::size_t after = p.pos + 1;
    while (after < p.text.size() &&
           std::isspace(static_cast<unsigned char>(p.text[after])))
      ++after;
    if (after < p.text.size() && p.text[after] == '(') {
      wrapped = true;
      p.pos = after + 1;
    } else {
      p.pos = save;
    }
  }

  FormulaBuilder b;
  p.formula(b);
  if (wrapped) p.expect(')');
  if (p.peek() == '.') ++p.pos;
  if (!p.at_end()) p.fail("trailing garbage");
  return b.take();
}

namespace {

void format_rec(const Formula& f, std::size_t& pos, std::string& out) {
  std::int32_t c = f.codes()[pos++];
  if (c >= 0) {
    out += Names::text(f.var_names()[static_cast<std::size_t>(c)]);
    return;
  }
  SymbolId head = -1 - c;
  out += Symbols::text(head);
  int n = Symbols::arity(head);
  out += '(';
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += ',';
    format_rec(f, pos, out);
  }
  out += ')';
}

}  // namespace

std::string format_formula(const Formula& f) {
  if (f.empty()) throw std::logic_error("formatting an empty formula");
  std::string out;
  std::size_t pos = 0;
  format_rec(f, pos, out);
  return out;
}

std::size_t symbol_count(const Formula& f) { return f.symbol_count(); }

std::size_t distinct_var_count(const Formula& f) {
  return f.distinct_var_count();
}

void Formula::assign_renamed(const Formula& src,
                             std::span<const NameId> names) {
  if (names.size() < src.var_names_.size())
    throw std::invalid_argument("rename table too small");
  codes_ = src.codes_;
  var_names_.assign(names.begin(),
                    names.begin() + static_cast<std::ptrdiff_t>(
                                        src.var_names_.size()));
}

Formula canonical_rename(const Formula& f) {
  Formula out = f;
  for (std::size_t i = 0; i < out.var_names_.size(); ++i)
    out.var_names_[i] = Names::canonical(i);
  return out;
}

Formula canonical_rename(Formula&& f) {
  Formula out = std::move(f);
  for (std::size_t i = 0; i < out.var_names_.size(); ++i)
    out.var_names_[i] = Names::canonical(i);
  return out;
}

Formula rename_with(const Formula& f, std::span<const NameId> names) {
  if (names.size() < f.var_names_.size())
    throw std::invalid_argument("rename table too small");
  Formula out = f;
  for (std::size_t i = 0; i < out.var_names_.size(); ++i)
    out.var_names_[i] = names[i];
  return out;
}

bool is_canonical(const Formula& f) {
  for (std::size_t i = 0; i < f.var_names().size(); ++i)
    if (f.var_names()[i] != Names::canonical(i)) return false;
  return true;
}

bool is_variant(const Formula& a, const Formula& b) {
  return a.codes() == b.codes();
}

bool two_property(const Formula& f) {
  std::vector<int> counts(f.distinct_var_count(), 0);
  for (std::int32_t c : f.codes())
    if (c >= 0) ++counts[static_cast<std::size_t>(c)];
  return std::all_of(counts.begin(), counts.end(),
                     [](int n) { return n == 2; });
}

bool is_ec_theorem(const Formula& f) {
  std::vector<int> counts(f.distinct_var_count(), 0);
  for (std::int32_t c : f.codes()) {
    if (c >= 0) {
      ++counts[static_cast<std::size_t>(c)];
    } else if (-1 - c != Symbols::equiv) {
      throw std::invalid_argument("foreign symbol '" + Symbols::text(-1 - c) +
                                  "' in the equivalential oracle");
    }
  }
  return std::all_of(counts.begin(), counts.end(),
                     [](int n) { return n % 2 == 0; });
}

bool contains_variant_subformula(const Formula& f, const Formula& pattern) {
  const auto& pc = pattern.codes();  // variant classes share their codes
  const auto& fc = f.codes();
  if (pc.empty() || fc.size() < pc.size()) return false;
  std::vector<std::int32_t> map(f.distinct_var_count());
  for (std::size_t start = 0; start + pc.size() <= fc.size(); ++start) {
    std::fill(map.begin(), map.end(), -1);
    std::int32_t next = 0;
    bool ok = true;
    std::size_t need = 1;
    for (std::size_t i = 0; i < pc.size(); ++i) {
      std::int32_t fcode = fc[start + i];
      std::int32_t pcode = pc[i];
      if (fcode < 0 || pcode < 0) {
        if (fcode != pcode) {
          ok = false;
          break;
        }
        need += static_cast<std::size_t>(code_arity(fcode)) - 1;
      } else {
        // the pattern is canonical, so its k-th fresh variable has index k
        std::int32_t& m = map[static_cast<std::size_t>(fcode)];
        if (m < 0) {
          if (pcode != next) {
            ok = false;
            break;
          }
          m = next++;
        } else if (m != pcode) {
          ok = false;
          break;
        }
        --need;
      }
      if (need == 0 && i + 1 < pc.size()) {
        ok = false;  // subterm at `start` ends before the pattern does
        break;
      }
    }
    if (ok && need == 0) return true;
  }
  return false;
}

namespace {

constexpr std::int32_t kLeaf = INT32_MAX;

// Binary tree shapes with 1..max_leaves leaves, as preorder codes over `e`
// with leaves marked by a placeholder.
std::vector<std::vector<std::vector<std::int32_t>>> build_shapes(
    std::size_t max_leaves) {
  std::vector<std::vector<std::vector<std::int32_t>>> by_size(max_leaves + 1);
  if (max_leaves >= 1) by_size[1] = {{kLeaf}};
  const std::int32_t head = -1 - Symbols::equiv;
  for (std::size_t n = 2; n <= max_leaves; ++n) {
    for (std::size_t l = 1; l < n; ++l) {
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[n - l]) {
          std::vector<std::int32_t> s;
          s.reserve(1 + a.size() + b.size());
          s.push_back(head);
          s.insert(s.end(), a.begin(), a.end());
          s.insert(s.end(), b.begin(), b.end());
          by_size[n].push_back(std::move(s));
        }
    }
  }
  return by_size;
}

// All partitions of {0..n-1} as group-id vectors (restricted growth).
void partitions_rec(std::size_t n, std::size_t i, std::int32_t groups,
                    std::vector<std::int32_t>& cur,
                    std::vector<std::vector<std::int32_t>>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (std::int32_t g = 0; g <= groups; ++g) {
    cur[i] = g;
    partitions_rec(n, i + 1, g == groups ? groups + 1 : groups, cur, out);
  }
}

// Perfect pairings of {0..n-1} as group-id vectors.
void pairings_rec(std::size_t n, std::vector<std::int32_t>& cur,
                  std::int32_t next_group,
                  std::vector<std::vector<std::int32_t>>& out) {
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i)
    if (cur[i] < 0) {
      first = i;
      break;
    }
  if (first == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t j = first + 1; j < n; ++j) {
    if (cur[j] >= 0) continue;
    cur[first] = next_group;
    cur[j] = next_group;
    pairings_rec(n, cur, next_group + 1, out);
    cur[first] = -1;
    cur[j] = -1;
  }
}

std::vector<Formula> assemble(
    std::size_t leaves,
    const std::vector<std::vector<std::int32_t>>& groupings) {
  std::vector<Formula> out;
  auto shapes = build_shapes(leaves);
  FormulaBuilder b;
  for (const auto& shape : shapes[leaves]) {
    for (const auto& groups : groupings) {
      b.reset();
      std::size_t leaf = 0;
      for (std::int32_t c : shape) {
        if (c == kLeaf)
          b.push_var(
              Names::canonical(static_cast<std::size_t>(groups[leaf++])));
        else
          b.push_symbol(-1 - c);
      }
      out.push_back(canonical_rename(b.take()));
    }
  }
  std::sort(out.begin(), out.end(), [](const Formula& a, const Formula& b) {
    return format_formula(a) < format_formula(b);
  });
  return out;
}

}  // namespace

std::vector<Formula> enumerate_formulas(std::size_t n) {
  if (n % 2 == 0 || n == 0) return {};
  std::size_t leaves = (n + 1) / 2;
  std::vector<std::vector<std::int32_t>> groupings;
  std::vector<std::int32_t> cur(leaves, 0);
  partitions_rec(leaves, 0, 0, cur, groupings);
  return assemble(leaves, groupings);
}

std::vector<Formula> enumerate_two_property_theorems(std::size_t n) {
  if (n % 2 == 0 || n == 0) return {};
  std::size_t leaves = (n + 1) / 2;
  if (leaves % 2 != 0) return {};  // no perfect pairing of an odd leaf count
  std::vector<std::vector<std::int32_t>> pairings;
  std::vector<std::int32_t> cur(leaves, -1);
  pairings_rec(leaves, cur, 0, pairings);
  return assemble(leaves, pairings);
}

}  // namespace cdp

#include "cdp/unify.hpp"

#include <algorithm>
#include <unordered_map>

namespace cdp {

namespace {

// A subterm view: position `pos` inside the code vector of `*f`.
struct Term {
  const Formula* f;
  std::size_t pos;

  std::int32_t code() const { return f->codes()[pos]; }
  bool is_var() const { return code() >= 0; }
  NameId name() const {
    return f->var_names()[static_cast<std::size_t>(code())];
  }
  std::size_t end() const { return subterm_end(f->codes(), pos); }
};

using Env = std::unordered_map<NameId, Term>;

Term walk(Term t, const Env& env) {
  while (t.is_var()) {
    auto it = env.find(t.name());
    if (it == env.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(NameId v, Term t, const Env& env) {
  std::vector<Term> stack{t};
  std::vector<NameId> visited;
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    std::size_t end = cur.end();
    for (std::size_t p = cur.pos; p < end; ++p) {
      std::int32_t c = cur.f->codes()[p];
      if (c < 0) continue;
      NameId n = cur.f->var_names()[static_cast<std::size_t>(c)];
      if (n == v) return true;
      auto it = env.find(n);
      if (it == env.end()) continue;
      if (std::find(visited.begin(), visited.end(), n) != visited.end())
        continue;
      visited.push_back(n);
      stack.push_back(it->second);
    }
  }
  return false;
}

bool unify_terms(Term a, Term b, Env& env) {
  a = walk(a, env);
  b = walk(b, env);
  if (a.is_var()) {
    if (b.is_var()) {
      if (a.name() == b.name()) return true;
      env.emplace(a.name(), b);
      return true;
    }
    if (occurs(a.name(), b, env)) return false;
    env.emplace(a.name(), b);
    return true;
  }
  if (b.is_var()) {
    if (occurs(b.name(), a, env)) return false;
    env.emplace(b.name(), a);
    return true;
  }
  if (a.code() != b.code()) return false;
  int n = code_arity(a.code());
  std::size_t pa = a.pos + 1;
  std::size_t pb = b.pos + 1;
  for (int i = 0; i < n; ++i) {
    Term ca{a.f, pa};
    Term cb{b.f, pb};
    if (!unify_terms(ca, cb, env)) return false;
    pa = ca.end();
    pb = cb.end();
  }
  return true;
}

// Emits the term with all bindings applied; false once the output would
// exceed `cap` symbols.
bool materialize(Term t, const Env& env, std::size_t cap,
                 FormulaBuilder& out) {
  std::size_t end = t.end();
  for (std::size_t p = t.pos; p < end; ++p) {
    if (out.size() >= cap) return false;
    std::int32_t c = t.f->codes()[p];
    if (c < 0) {
      out.push_symbol(-1 - c);
      continue;
    }
    NameId n = t.f->var_names()[static_cast<std::size_t>(c)];
    auto it = env.find(n);
    if (it == env.end()) {
      out.push_var(n);
      continue;
    }
    if (!materialize(it->second, env, cap, out)) return false;
  }
  return out.size() <= cap;
}

Formula extract_subterm(Term t) {
  FormulaBuilder b;
  std::size_t end = t.end();
  for (std::size_t p = t.pos; p < end; ++p) {
    std::int32_t c = t.f->codes()[p];
    if (c < 0)
      b.push_symbol(-1 - c);
    else
      b.push_var(t.f->var_names()[static_cast<std::size_t>(c)]);
  }
  return b.take();
}

Substitution resolve(const Env& env) {
  std::vector<std::pair<NameId, Formula>> bindings;
  bindings.reserve(env.size());
  for (const auto& [name, term] : env) {
    FormulaBuilder b;
    materialize(term, env, SIZE_MAX, b);
    bindings.emplace_back(name, b.take());
  }
  return Substitution(std::move(bindings));
}

bool spans_equal(Term a, Term b) {
  // both views point into the same formula, so code spans compare directly
  std::size_t ea = a.end();
  std::size_t eb = b.end();
  if (ea - a.pos != eb - b.pos) return false;
  return std::equal(a.f->codes().begin() + static_cast<std::ptrdiff_t>(a.pos),
                    a.f->codes().begin() + static_cast<std::ptrdiff_t>(ea),
                    b.f->codes().begin() + static_cast<std::ptrdiff_t>(b.pos));
}

bool match_terms(Term g, Term s, Env& env) {
  if (g.is_var()) {
    NameId n = g.name();
    auto it = env.find(n);
    if (it != env.end()) return spans_equal(it->second, s);
    env.emplace(n, s);
    return true;
  }
  if (g.code() != s.code()) return false;
  int n = code_arity(g.code());
  std::size_t pg = g.pos + 1;
  std::size_t ps = s.pos + 1;
  for (int i = 0; i < n; ++i) {
    Term cg{g.f, pg};
    Term cs{s.f, ps};
    if (!match_terms(cg, cs, env)) return false;
    pg = cg.end();
    ps = cs.end();
  }
  return true;
}

// Canonical / renamed-apart name prefixes, grown on demand.
std::span<const NameId> canonical_prefix(std::size_t n) {
  thread_local std::vector<NameId> cache;
  while (cache.size() < n) cache.push_back(Names::canonical(cache.size()));
  return {cache.data(), n};
}

std::span<const NameId> apart_prefix(std::size_t n) {
  thread_local std::vector<NameId> cache;
  while (cache.size() < n)
    cache.push_back(Names::renamed_apart(cache.size()));
  return {cache.data(), n};
}

}  // namespace

Substitution::Substitution(std::vector<std::pair<NameId, Formula>> bindings)
    : bindings_(std::move(bindings)) {
  std::erase_if(bindings_, [](const auto& b) {
    return b.second.is_variable() && b.second.var_name() == b.first;
  });
  std::sort(bindings_.begin(), bindings_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

const Formula* Substitution::lookup(NameId var) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), var,
      [](const auto& b, NameId v) { return b.first < v; });
  if (it == bindings_.end() || it->first != var) return nullptr;
  return &it->second;
}

Formula apply(const Substitution& sub, const Formula& f) {
  if (sub.empty()) return f;
  FormulaBuilder b;
  for (std::size_t p = 0; p < f.codes().size(); ++p) {
    std::int32_t c = f.codes()[p];
    if (c < 0) {
      b.push_symbol(-1 - c);
      continue;
    }
    NameId n = f.var_names()[static_cast<std::size_t>(c)];
    if (const Formula* image = sub.lookup(n))
      b.push_formula(*image);
    else
      b.push_var(n);
  }
  return b.take();
}

std::optional<Substitution> mgu(const Formula& a, const Formula& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("unifying an empty formula");
  Env env;
  if (!unify_terms(Term{&a, 0}, Term{&b, 0}, env)) return std::nullopt;
  return resolve(env);
}

std::optional<Substitution> match_onto(const Formula& general,
                                       const Formula& specific) {
  if (general.empty() || specific.empty())
    throw std::invalid_argument("matching an empty formula");
  if (general.symbol_count() > specific.symbol_count()) return std::nullopt;
  Env env;
  if (!match_terms(Term{&general, 0}, Term{&specific, 0}, env))
    return std::nullopt;
  std::vector<std::pair<NameId, Formula>> bindings;
  bindings.reserve(env.size());
  for (const auto& [name, term] : env)
    bindings.emplace_back(name, extract_subterm(term));
  return Substitution(std::move(bindings));
}

namespace detail {

CdStatus condensed_detach_capped(const Formula& major, const Formula& minor,
                                 std::size_t cap, Formula& out) {
  if (!major.is_compound() || major.head() != Symbols::equiv)
    throw MajorNotConditional();
  if (minor.empty()) throw std::invalid_argument("empty minor premiss");

  // already-canonical majors (the common case in searches) need no copy
  auto canon = canonical_prefix(major.distinct_var_count());
  const Formula* maj = &major;
  thread_local Formula maj_buf;
  if (!std::equal(major.var_names().begin(), major.var_names().end(),
                  canon.begin())) {
    maj_buf.assign_renamed(major, canon);
    maj = &maj_buf;
  }
  thread_local Formula min_buf;
  min_buf.assign_renamed(minor, apart_prefix(minor.distinct_var_count()));

  thread_local Env env;
  env.clear();
  if (!unify_terms(Term{maj, 1}, Term{&min_buf, 0}, env))
    return CdStatus::not_unifiable;

  std::size_t consequent = subterm_end(maj->codes(), 1);
  thread_local FormulaBuilder b;
  b.reset();
  if (!materialize(Term{maj, consequent}, env, cap, b))
    return CdStatus::over_cap;
  out = canonical_rename(b.take());
  return CdStatus::ok;
}

}  // namespace detail

std::optional<Formula> condensed_detach(const Formula& major,
                                        const Formula& minor) {
  Formula out;
  switch (detail::condensed_detach_capped(major, minor, SIZE_MAX, out)) {
    case detail::CdStatus::ok:
      return out;
    default:
      return std::nullopt;
  }
}

std::optional<std::size_t> common_instance_size(const Formula& major,
                                                const Formula& minor) {
  if (!major.is_compound() || major.head() != Symbols::equiv)
    throw MajorNotConditional();
  Formula maj =
      rename_with(major, canonical_prefix(major.distinct_var_count()));
  Formula min =
      rename_with(minor, apart_prefix(minor.distinct_var_count()));
  Env env;
  if (!unify_terms(Term{&maj, 1}, Term{&min, 0}, env)) return std::nullopt;
  FormulaBuilder b;
  materialize(Term{&maj, 1}, env, SIZE_MAX, b);
  return b.take().symbol_count();
}

}  // namespace cdp

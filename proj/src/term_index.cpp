#include "cdp/term_index.hpp"

#include <algorithm>

namespace cdp {

void TermIndex::insert(const Formula& f, std::uint32_t id) {
  Node* n = &root_;
  for (std::int32_t c : f.codes()) n = &n->kids[c];
  n->ids.push_back(id);
  ++size_;
}

void TermIndex::erase(const Formula& f, std::uint32_t id) {
  Node* n = &root_;
  for (std::int32_t c : f.codes()) {
    auto it = n->kids.find(c);
    if (it == n->kids.end()) return;
    n = &it->second;
  }
  auto it = std::find(n->ids.begin(), n->ids.end(), id);
  if (it == n->ids.end()) return;
  n->ids.erase(it);
  --size_;
}

namespace {

struct Span {
  std::size_t begin, end;
};

}  // namespace

// Walks stored terms against the concrete query; a stored variable binds to
// the query subterm at the current position, repeated variables compare
// spans for equality.
std::optional<std::uint32_t> TermIndex::find_generalization(
    const Formula& query,
    const std::function<bool(std::uint32_t)>& viable) const {
  const auto& q = query.codes();
  std::vector<Span> binds;

  auto spans_equal = [&](Span a, Span b) {
    return a.end - a.begin == b.end - b.begin &&
           std::equal(q.begin() + static_cast<std::ptrdiff_t>(a.begin),
                      q.begin() + static_cast<std::ptrdiff_t>(a.end),
                      q.begin() + static_cast<std::ptrdiff_t>(b.begin));
  };

  std::uint32_t found = 0;
  auto rec = [&](auto&& self, const Node& n, std::size_t qpos) -> bool {
    if (!n.ids.empty()) {
      if (qpos != q.size()) return false;
      for (std::uint32_t id : n.ids)
        if (viable(id)) {
          found = id;
          return true;
        }
      return false;
    }
    if (qpos >= q.size()) return false;
    for (const auto& [code, child] : n.kids) {
      if (code < 0) {
        if (q[qpos] == code && self(self, child, qpos + 1)) return true;
        continue;
      }
      // stored variable: binds to the query subterm starting here
      Span span{qpos, subterm_end(q, qpos)};
      std::size_t vi = static_cast<std::size_t>(code);
      if (vi < binds.size()) {
        if (spans_equal(binds[vi], span) && self(self, child, span.end))
          return true;
      } else {
        binds.push_back(span);
        bool hit = self(self, child, span.end);
        binds.pop_back();
        if (hit) return true;
      }
    }
    return false;
  };

  if (rec(rec, root_, 0)) return found;
  return std::nullopt;
}

void TermIndex::collect_instances(
    const Formula& query, const std::function<bool(std::uint32_t)>& viable,
    std::vector<std::uint32_t>& out) const {
  const auto& q = query.codes();
  std::vector<std::vector<std::int32_t>> binds(query.distinct_var_count());
  std::vector<bool> bound(query.distinct_var_count(), false);

  auto rec = [&](auto&& self, const Node& n, std::size_t qpos) -> void {
    if (qpos == q.size()) {
      for (std::uint32_t id : n.ids)
        if (viable(id)) out.push_back(id);
      return;
    }
    std::int32_t c = q[qpos];
    if (c < 0) {
      auto it = n.kids.find(c);
      if (it != n.kids.end()) self(self, it->second, qpos + 1);
      return;
    }
    std::size_t vi = static_cast<std::size_t>(c);
    if (bound[vi]) {
      // follow the exact stored path the variable is bound to
      const Node* cur = &n;
      for (std::int32_t pc : binds[vi]) {
        auto it = cur->kids.find(pc);
        if (it == cur->kids.end()) return;
        cur = &it->second;
      }
      self(self, *cur, qpos + 1);
      return;
    }
    // enumerate every complete stored subterm starting at this node
    std::vector<std::int32_t>& path = binds[vi];
    path.clear();
    auto dfs = [&](auto&& dself, const Node& m, std::size_t need) -> void {
      for (const auto& [code, child] : m.kids) {
        std::size_t need2 = need + static_cast<std::size_t>(code_arity(code));
        --need2;
        path.push_back(code);
        if (need2 == 0) {
          bound[vi] = true;
          self(self, child, qpos + 1);
          bound[vi] = false;
        } else {
          dself(dself, child, need2);
        }
        path.pop_back();
      }
    };
    dfs(dfs, n, 1);
    return;
  };

  rec(rec, root_, 0);
}

}  // namespace cdp

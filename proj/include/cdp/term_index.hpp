#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "cdp/formula.hpp"

namespace cdp {

/// Perfect discrimination tree over preorder codes. Stored terms are kept
/// in first-occurrence variable numbering, so retrieval works on variant
/// classes; callers key entries by clause id.
class TermIndex {
 public:
  void insert(const Formula& f, std::uint32_t id);
  void erase(const Formula& f, std::uint32_t id);
  std::size_t size() const { return size_; }

  /// Id of some stored term that subsumes `query` (match_onto(stored,
  /// query) succeeds) and is accepted by `viable`.
  std::optional<std::uint32_t> find_generalization(
      const Formula& query,
      const std::function<bool(std::uint32_t)>& viable) const;

  /// Ids of stored terms that are instances of `query` (match_onto(query,
  /// stored) succeeds), filtered by `viable`.
  void collect_instances(const Formula& query,
                         const std::function<bool(std::uint32_t)>& viable,
                         std::vector<std::uint32_t>& out) const;

 private:
  struct Node {
    std::map<std::int32_t, Node> kids;
    std::vector<std::uint32_t> ids;
  };

  Node root_;
  std::size_t size_ = 0;
};

}  // namespace cdp

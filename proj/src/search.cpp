#include "cdp/search.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "cdp/unify.hpp"

namespace cdp {

std::vector<std::pair<std::string, Formula>> TargetSet::all_goals() const {
  std::vector<std::pair<std::string, Formula>> out = units;
  for (const Conjunction& c : conjunctions)
    out.insert(out.end(), c.members.begin(), c.members.end());
  return out;
}

TargetSet TargetSet::single(std::string name, Formula f) {
  TargetSet t;
  t.units.emplace_back(std::move(name), std::move(f));
  return t;
}

void GivenSelector::add(std::uint32_t id, std::int32_t weight) {
  by_weight_.emplace(weight, id);
  by_id_.insert(id);
  weights_.emplace(id, weight);
}

void GivenSelector::remove(std::uint32_t id, std::int32_t weight) {
  by_weight_.erase({weight, id});
  by_id_.erase(id);
  weights_.erase(id);
}

std::optional<std::uint32_t> GivenSelector::pop() {
  if (by_id_.empty()) return std::nullopt;
  bool by_weight = false;
  if (mode_ == SearchConfig::Mode::ratio) {
    by_weight = counter_ % (ratio_ + 1) < ratio_;
    ++counter_;
  }
  std::uint32_t id =
      by_weight ? by_weight_.begin()->second : *by_id_.begin();
  remove(id, weights_.at(id));
  return id;
}

Saturation::Saturation(const SearchConfig& config, const TargetSet& targets)
    : cfg_(config),
      selector_(config.mode, std::max(1, config.pick_given_ratio)) {
  for (auto& [f, v] : cfg_.hints)
    if (v < 1) throw std::invalid_argument("hint values are positive");
  if (cfg_.max_weight < 3)
    throw std::invalid_argument("max_weight must be at least 3");
  for (Formula& b : cfg_.blocked) b = canonical_rename(b);
  for (auto& [h, v] : cfg_.hints) h = canonical_rename(h);

  for (const auto& [name, f] : targets.units) {
    goals_.push_back({name, canonical_rename(f), -1, std::nullopt});
    ++open_goals_;
  }
  for (const auto& conj : targets.conjunctions) {
    int ci = static_cast<int>(conjunction_names_.size());
    conjunction_names_.push_back(conj.name);
    conjunction_open_.push_back(conj.members.size());
    for (const auto& [name, f] : conj.members) {
      goals_.push_back({name, canonical_rename(f), ci, std::nullopt});
      ++open_goals_;
    }
  }

  // conclusions are abandoned during construction once they cannot pass the
  // weight stage; only valid while no earlier pipeline stage is enabled
  bool exact = cfg_.term_avoidance || cfg_.max_distinct_vars.has_value() ||
               !cfg_.blocked.empty();
  if (exact) {
    conclusion_cap_ = SIZE_MAX;
  } else {
    std::size_t cap = static_cast<std::size_t>(cfg_.max_weight);
    for (const auto& [h, v] : cfg_.hints)
      cap = std::max(cap, h.symbol_count());
    conclusion_cap_ = cap;
  }
}

bool Saturation::has_proper_subtautology(const Formula& f) const {
  const auto& codes = f.codes();
  const std::int32_t ehead = -1 - Symbols::equiv;
  for (std::size_t p = 1; p < codes.size(); ++p) {
    if (codes[p] != ehead) continue;
    std::size_t left = p + 1;
    std::size_t mid = subterm_end(codes, left);
    std::size_t end = subterm_end(codes, mid);
    if (mid - left == end - mid &&
        std::equal(codes.begin() + static_cast<std::ptrdiff_t>(left),
                   codes.begin() + static_cast<std::ptrdiff_t>(mid),
                   codes.begin() + static_cast<std::ptrdiff_t>(mid)))
      return true;
  }
  return false;
}

std::optional<std::int32_t> Saturation::match_hint(const Formula& f) const {
  for (std::size_t i = 0; i < cfg_.hints.size(); ++i) {
    const Formula& h = cfg_.hints[i].first;
    if (f.symbol_count() > h.symbol_count()) continue;
    if (is_variant(f, h) || match_onto(f, h))
      return static_cast<std::int32_t>(i);
  }
  return std::nullopt;
}

std::uint32_t Saturation::find_active_variant(const Formula& f) const {
  auto it = variants_.find(f.variant_hash());
  if (it == variants_.end()) return 0;
  for (std::uint32_t id : it->second)
    if (records_[id - 1].formula.codes() == f.codes()) return id;
  return 0;
}

std::uint32_t Saturation::count_deduced_ancestors(std::uint32_t a,
                                                  std::uint32_t b,
                                                  std::uint32_t watch,
                                                  bool& saw_watch) {
  ++epoch_;
  saw_watch = false;
  std::uint32_t count = 0;
  std::vector<std::uint32_t> stack{a, b};
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    if (mark_[id - 1] == epoch_) continue;
    mark_[id - 1] = epoch_;
    if (id == watch) saw_watch = true;
    const ClauseRecord& rec = records_[id - 1];
    if (!rec.parents) continue;
    ++count;
    stack.push_back(rec.parents->first);
    stack.push_back(rec.parents->second);
  }
  return count;
}

void Saturation::retain(
    Formula f, std::optional<std::pair<std::uint32_t, std::uint32_t>> parents,
    std::int32_t weight, std::optional<std::int32_t> hint) {
  ClauseRecord rec;
  rec.id = static_cast<std::uint32_t>(records_.size() + 1);
  rec.formula = std::move(f);
  rec.weight = weight;
  rec.hint_matched = hint;
  if (parents) {
    rec.parents = parents;
    rec.level = 1 + std::max(records_[parents->first - 1].level,
                             records_[parents->second - 1].level);
    bool saw = false;
    rec.derivation_length =
        count_deduced_ancestors(parents->first, parents->second, 0, saw) + 1;
  }
  records_.push_back(std::move(rec));
  mark_.push_back(0);

  const ClauseRecord& r = records_.back();
  variants_[r.formula.variant_hash()].push_back(r.id);
  index_.insert(r.formula, r.id);
  selector_.add(r.id, r.weight);
  if (out_.per_level_census.size() <= static_cast<std::size_t>(r.level))
    out_.per_level_census.resize(static_cast<std::size_t>(r.level) + 1, 0);
  ++out_.per_level_census[static_cast<std::size_t>(r.level)];
  if (parents)
    ++out_.kept;
  else
    ++out_.input_count;

  // back subsumption: drop active clauses this one properly subsumes
  std::vector<std::uint32_t> hits;
  index_.collect_instances(
      r.formula,
      [&](std::uint32_t cid) {
        return cid != r.id && records_[cid - 1].active;
      },
      hits);
  for (std::uint32_t cid : hits) {
    const ClauseRecord& c = records_[cid - 1];
    if (is_variant(r.formula, c.formula)) continue;
    if (!match_onto(r.formula, c.formula)) continue;
    deactivate(cid);
  }

  check_goals(r);
}

void Saturation::deactivate(std::uint32_t id) {
  ClauseRecord& rec = records_[id - 1];
  if (!rec.active) return;
  rec.active = false;
  if (!rec.given) selector_.remove(id, rec.weight);
  auto it = variants_.find(rec.formula.variant_hash());
  if (it != variants_.end()) {
    auto& v = it->second;
    v.erase(std::remove(v.begin(), v.end(), id), v.end());
  }
  index_.erase(rec.formula, id);
}

void Saturation::check_goals(const ClauseRecord& rec) {
  for (Goal& g : goals_) {
    if (g.closed_by) continue;
    bool hit = is_variant(rec.formula, g.formula) ||
               match_onto(rec.formula, g.formula).has_value();
    if (!hit) continue;
    g.closed_by = rec.id;
    --open_goals_;
    if (g.conjunction >= 0)
      --conjunction_open_[static_cast<std::size_t>(g.conjunction)];
  }
}

void Saturation::process_conclusion(Formula f, std::uint32_t maj,
                                    std::uint32_t min) {
  ++out_.generated;
  for (const Formula& b : cfg_.blocked)
    if (is_variant(f, b)) {
      ++out_.discarded_blocked;
      return;
    }
  if (cfg_.term_avoidance && has_proper_subtautology(f)) {
    ++out_.discarded_by_term_avoidance;
    return;
  }
  if (cfg_.max_distinct_vars &&
      f.distinct_var_count() >
          static_cast<std::size_t>(*cfg_.max_distinct_vars)) {
    ++out_.discarded_by_var_cap;
    return;
  }
  std::optional<std::int32_t> hint = match_hint(f);
  std::int32_t eff = hint ? cfg_.hints[static_cast<std::size_t>(*hint)].second
                          : static_cast<std::int32_t>(f.symbol_count());
  if (eff > cfg_.max_weight) {
    ++out_.discarded_by_weight;
    return;
  }
  if (std::uint32_t gid = find_active_variant(f)) {
    if (cfg_.ancestor_subsumption) {
      ClauseRecord& g = records_[gid - 1];
      bool saw = false;
      std::uint32_t count = count_deduced_ancestors(maj, min, gid, saw);
      if (!saw && count + 1 < g.derivation_length) {
        g.parents = {maj, min};
        g.derivation_length = count + 1;
        g.level = 1 + std::max(records_[maj - 1].level,
                               records_[min - 1].level);
      }
    }
    ++out_.subsumed;
    return;
  }
  if (index_.find_generalization(f, [&](std::uint32_t id) {
        return records_[id - 1].active;
      })) {
    ++out_.subsumed;
    return;
  }
  retain(std::move(f), std::make_pair(maj, min), eff, hint);
}

void Saturation::process_input(const Formula& f) {
  Formula cf = canonical_rename(f);
  if (find_active_variant(cf)) return;  // duplicate input
  std::optional<std::int32_t> hint = match_hint(cf);
  std::int32_t eff = hint ? cfg_.hints[static_cast<std::size_t>(*hint)].second
                          : static_cast<std::int32_t>(cf.symbol_count());
  retain(std::move(cf), std::nullopt, eff, hint);
}

void Saturation::pair(std::uint32_t major_id, std::uint32_t minor_id) {
  const Formula& maj = records_[major_id - 1].formula;
  if (!maj.is_compound() || maj.head() != Symbols::equiv) return;
  Formula out;
  switch (detail::condensed_detach_capped(
      maj, records_[minor_id - 1].formula, conclusion_cap_, out)) {
    case detail::CdStatus::ok:
      process_conclusion(std::move(out), major_id, minor_id);
      break;
    case detail::CdStatus::over_cap:
      ++out_.generated;
      ++out_.discarded_by_weight;
      break;
    case detail::CdStatus::not_unifiable:
      break;
  }
}

bool Saturation::out_of_time() {
  if (timed_out_) return true;
  if (cfg_.limits.wall_clock_secs <= 0.0) return false;
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
  timed_out_ = elapsed > cfg_.limits.wall_clock_secs;
  return timed_out_;
}

SearchOutcome Saturation::finish(StopReason stop) {
  out_.stop = stop;
  out_.wall_secs = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
  std::vector<std::pair<std::string, std::uint32_t>> all_closed;
  for (const Goal& g : goals_) {
    if (!g.closed_by) continue;
    out_.closed_steps[g.name] = *g.closed_by;
    all_closed.emplace_back(g.name, *g.closed_by);
    out_.proofs.emplace(g.name,
                        extract_proof(records_, {{g.name, *g.closed_by}}));
  }
  for (std::size_t ci = 0; ci < conjunction_names_.size(); ++ci) {
    if (conjunction_open_[ci] != 0) continue;
    std::vector<std::pair<std::string, std::uint32_t>> members;
    for (const Goal& g : goals_)
      if (g.conjunction == static_cast<int>(ci))
        members.emplace_back(g.name, *g.closed_by);
    out_.proofs.emplace(conjunction_names_[ci],
                        extract_proof(records_, members));
  }
  if (!goals_.empty() && open_goals_ == 0)
    out_.joint_proof = extract_proof(records_, all_closed);
  return std::move(out_);
}

SearchOutcome Saturation::run(std::span<const Formula> sos) {
  start_ = std::chrono::steady_clock::now();
  if (sos.empty()) throw std::invalid_argument("empty set of support");
  for (const Formula& f : sos) process_input(f);

  while (true) {
    if (!goals_.empty() && open_goals_ == 0)
      return finish(StopReason::all_targets_closed);
    if (cfg_.limits.max_given && out_.given_count >= cfg_.limits.max_given)
      return finish(StopReason::given_limit);
    if (out_of_time()) return finish(StopReason::time_limit);

    std::optional<std::uint32_t> g = selector_.pop();
    if (!g) return finish(StopReason::saturated);
    records_[*g - 1].given = true;
    used_.push_back(*g);
    ++out_.given_count;

    // the given clause fills the minor slot against every earlier given,
    // newest first, then the major slot (including one self-pairing)
    std::size_t n = used_.size();
    for (int phase = 0; phase < 2; ++phase) {
      for (std::size_t k = 0; k < n; ++k) {
        std::uint32_t u = used_[n - 1 - k];
        if (!records_[u - 1].active) continue;
        if (!records_[*g - 1].active) break;
        if (phase == 0) {
          if (u != *g) pair(u, *g);
        } else {
          pair(*g, u);
        }
        if (!goals_.empty() && open_goals_ == 0)
          return finish(StopReason::all_targets_closed);
        if (cfg_.limits.max_kept && out_.kept >= cfg_.limits.max_kept)
          return finish(StopReason::kept_limit);
        if ((++tick_ & 1023) == 0 && out_of_time())
          return finish(StopReason::time_limit);
      }
    }
  }
}

Proof extract_proof(
    const std::vector<ClauseRecord>& records,
    const std::vector<std::pair<std::string, std::uint32_t>>& targets) {
  std::vector<std::uint32_t> closure;
  std::vector<bool> seen(records.size() + 1, false);
  std::vector<std::uint32_t> stack;
  for (const auto& [name, id] : targets) stack.push_back(id);
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    if (id == 0 || id > records.size())
      throw std::logic_error("dangling step reference in proof extraction");
    if (seen[id]) continue;
    seen[id] = true;
    closure.push_back(id);
    if (records[id - 1].parents) {
      stack.push_back(records[id - 1].parents->first);
      stack.push_back(records[id - 1].parents->second);
    }
  }
  std::sort(closure.begin(), closure.end());

  bool consistent = true;
  for (std::uint32_t id : closure) {
    const auto& p = records[id - 1].parents;
    if (p && (p->first >= id || p->second >= id)) {
      consistent = false;
      break;
    }
  }

  std::vector<std::uint32_t> order;
  if (consistent) {
    order = closure;
  } else {
    // ancestor-subsumption re-pointing broke id order; place steps
    // topologically, smallest id first among the ready ones
    std::vector<bool> placed(records.size() + 1, false);
    while (order.size() < closure.size()) {
      bool progressed = false;
      for (std::uint32_t id : closure) {
        if (placed[id]) continue;
        const auto& p = records[id - 1].parents;
        if (p && (!placed[p->first] || !placed[p->second])) continue;
        placed[id] = true;
        order.push_back(id);
        progressed = true;
        break;
      }
      if (!progressed)
        throw std::logic_error("cycle detected in proof extraction");
    }
  }

  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  Proof proof;
  proof.steps.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ClauseRecord& rec = records[order[i] - 1];
    ProofStep step;
    step.id = consistent ? rec.id : static_cast<std::uint32_t>(i + 1);
    remap[rec.id] = step.id;
    if (rec.parents)
      step.parents = {remap.at(rec.parents->first),
                      remap.at(rec.parents->second)};
    step.formula = rec.formula;
    proof.steps.push_back(std::move(step));
  }
  for (const auto& [name, id] : targets) proof.targets[name] = remap.at(id);
  return proof;
}

std::uint64_t CensusResult::cumulative_through(std::size_t k) const {
  std::uint64_t total = 0;
  for (std::size_t i = 1; i <= k; ++i) total += new_at(i);
  return total;
}

namespace {

struct CensusSet {
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;

  bool contains(const std::vector<Formula>& store, const Formula& f) const {
    auto it = buckets.find(f.variant_hash());
    if (it == buckets.end()) return false;
    for (std::uint32_t idx : it->second)
      if (store[idx].codes() == f.codes()) return true;
    return false;
  }

  void add(const std::vector<Formula>& store, std::uint32_t idx) {
    buckets[store[idx].variant_hash()].push_back(idx);
  }
};

}  // namespace

CensusResult level_census(const Formula& seed, int levels,
                          const Formula* variant_pattern, int jobs,
                          CensusDedup dedup) {
  if (levels < 1) throw std::invalid_argument("levels must be positive");
  if (!is_ec_theorem(seed))
    throw std::invalid_argument("census seed must be an EC theorem");

  CensusResult res;
  res.store.push_back(canonical_rename(seed));
  res.level_begin = {0, 1};
  res.exceptions.emplace_back();  // level 0 placeholder

  CensusSet global;
  global.add(res.store, 0);

  TermIndex subindex;
  if (dedup == CensusDedup::forward_subsumption)
    subindex.insert(res.store[0], 0);
  auto always = [](std::uint32_t) { return true; };

  std::optional<Formula> pattern;
  if (variant_pattern) pattern = canonical_rename(*variant_pattern);

  int workers = std::max(1, jobs);

  for (int k = 1; k <= levels; ++k) {
    const std::size_t ls = res.level_begin[static_cast<std::size_t>(k - 1)];
    const std::size_t total = res.store.size();
    const std::size_t n_last = total - ls;
    const std::uint64_t pair_count =
        static_cast<std::uint64_t>(n_last) * total +
        static_cast<std::uint64_t>(ls) * n_last;

    std::vector<std::vector<Formula>> found(
        static_cast<std::size_t>(workers));
    std::atomic<std::uint64_t> next{0};
    const std::uint64_t chunk =
        std::max<std::uint64_t>(1024, pair_count / (workers * 16ull) + 1);

    auto work = [&](std::size_t w) {
      CensusSet local;
      std::vector<Formula> store_local;  // parallel store for local dedup
      Formula out;
      while (true) {
        std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= pair_count) break;
        std::uint64_t end = std::min(begin + chunk, pair_count);
        for (std::uint64_t r = begin; r < end; ++r) {
          std::size_t i, j;
          if (r < static_cast<std::uint64_t>(n_last) * total) {
            i = ls + static_cast<std::size_t>(r / total);
            j = static_cast<std::size_t>(r % total);
          } else {
            std::uint64_t r2 = r - static_cast<std::uint64_t>(n_last) * total;
            i = static_cast<std::size_t>(r2 / n_last);
            j = ls + static_cast<std::size_t>(r2 % n_last);
          }
          if (detail::condensed_detach_capped(res.store[i], res.store[j],
                                              SIZE_MAX, out) !=
              detail::CdStatus::ok)
            continue;
          if (global.contains(res.store, out)) continue;
          if (local.contains(store_local, out)) continue;
          store_local.push_back(out);
          local.add(store_local,
                    static_cast<std::uint32_t>(store_local.size() - 1));
        }
      }
      found[w] = std::move(store_local);
    };

    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < static_cast<std::size_t>(workers); ++w)
        pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }

    // merge worker results, dedup across workers, order deterministically
    std::vector<Formula> merged;
    CensusSet level_set;
    for (auto& part : found)
      for (Formula& f : part) {
        if (level_set.contains(merged, f)) continue;
        merged.push_back(std::move(f));
        level_set.add(merged, static_cast<std::uint32_t>(merged.size() - 1));
      }
    std::sort(merged.begin(), merged.end(),
              [](const Formula& a, const Formula& b) {
                if (a.symbol_count() != b.symbol_count())
                  return a.symbol_count() < b.symbol_count();
                return a.codes() < b.codes();
              });

    res.exceptions.emplace_back();
    for (Formula& f : merged) {
      if (dedup == CensusDedup::forward_subsumption &&
          subindex.find_generalization(f, always))
        continue;
      if (pattern && !contains_variant_subformula(f, *pattern))
        res.exceptions.back().push_back(f);
      res.store.push_back(std::move(f));
      global.add(res.store, static_cast<std::uint32_t>(res.store.size() - 1));
      if (dedup == CensusDedup::forward_subsumption)
        subindex.insert(res.store.back(),
                        static_cast<std::uint32_t>(res.store.size() - 1));
    }
    res.level_begin.push_back(res.store.size());
  }
  return res;
}

}  // namespace cdp

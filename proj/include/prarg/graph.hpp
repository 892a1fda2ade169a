#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prarg/argset.hpp"
#include "prarg/errors.hpp"

namespace prarg {

inline bool is_valid_argument_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

struct Attack {
  std::string from;
  std::string to;
};

// Finite argument graph (A, R). Arguments are stored in lexicographic id
// order; the dense index of an argument is its rank in that order. Immutable
// after construction.
class ArgumentGraph {
 public:
  ArgumentGraph() = default;

  ArgumentGraph(std::vector<std::string> ids, const std::vector<Attack>& attacks) {
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!is_valid_argument_id(ids[i])) throw PreconditionError("invalid argument id '" + ids[i] + "'");
      if (i > 0 && ids[i] == ids[i - 1]) throw PreconditionError("duplicate argument '" + ids[i] + "'");
    }
    ids_ = std::move(ids);
    build_index();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(attacks.size());
    for (const auto& a : attacks) edges.emplace_back(index_of(a.from), index_of(a.to));
    build_edges(std::move(edges));
  }

  // Ids must already be sorted and unique; edges are dense index pairs.
  static ArgumentGraph from_indices(std::vector<std::string> sorted_ids,
                                    std::vector<std::pair<std::size_t, std::size_t>> edges) {
    ArgumentGraph g;
    for (std::size_t i = 1; i < sorted_ids.size(); ++i)
      if (!(sorted_ids[i - 1] < sorted_ids[i])) throw PreconditionError("ids must be sorted and unique");
    g.ids_ = std::move(sorted_ids);
    g.build_index();
    for (const auto& [f, t] : edges)
      if (f >= g.size() || t >= g.size()) throw PreconditionError("attack endpoint out of range");
    g.build_edges(std::move(edges));
    return g;
  }

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t attack_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }

  bool contains(std::string_view id) const { return index_.find(std::string(id)) != index_.end(); }

  std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw UnknownArgumentError(std::string(id));
    return it->second;
  }

  // (from, to) pairs sorted by (from, to).
  std::span<const std::pair<std::size_t, std::size_t>> attacks() const noexcept { return edges_; }

  bool attacks(std::size_t from, std::size_t to) const { return targets_[from].test(to); }

  // Attackers of argument i, as a set over the whole graph.
  const ArgSet& attackers(std::size_t i) const { return attackers_.at(i); }
  const ArgSet& targets(std::size_t i) const { return targets_.at(i); }

  std::span<const ArgSet> attacker_rows() const noexcept { return attackers_; }
  std::span<const ArgSet> target_rows() const noexcept { return targets_; }

  ArgSet empty_set() const { return ArgSet(size()); }
  ArgSet all() const { return ArgSet::full(size()); }

  ArgSet make_set(std::initializer_list<std::string_view> names) const {
    ArgSet s(size());
    for (auto n : names) s.set(index_of(n));
    return s;
  }
  template <class Range>
  ArgSet make_set_from(const Range& names) const {
    ArgSet s(size());
    for (const auto& n : names) s.set(index_of(n));
    return s;
  }

  std::vector<std::string> names_of(const ArgSet& s) const {
    std::vector<std::string> out;
    s.for_each([&](std::size_t i) { out.push_back(ids_[i]); });
    return out;
  }

  friend bool operator==(const ArgumentGraph& a, const ArgumentGraph& b) {
    return a.ids_ == b.ids_ && a.edges_ == b.edges_;
  }

 private:
  void build_index() {
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
  }

  void build_edges(std::vector<std::pair<std::size_t, std::size_t>> edges) {
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw PreconditionError("duplicate attack");
    edges_ = std::move(edges);
    attackers_.assign(size(), ArgSet(size()));
    targets_.assign(size(), ArgSet(size()));
    for (const auto& [f, t] : edges_) {
      targets_[f].set(t);
      attackers_[t].set(f);
    }
  }

  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<ArgSet> attackers_;
  std::vector<ArgSet> targets_;
};

namespace detail {
inline void check_member_of(const ArgumentGraph& g, const ArgSet& s) {
  if (s.universe() != g.size()) throw UnknownArgumentError("set does not belong to this graph");
}
inline void check_index(const ArgumentGraph& g, std::size_t a) {
  if (a >= g.size()) throw UnknownArgumentError("#" + std::to_string(a));
}
}  // namespace detail

inline ArgSet attackers_of(const ArgumentGraph& g, std::size_t a) {
  detail::check_index(g, a);
  return g.attackers(a);
}
inline ArgSet attackers_of(const ArgumentGraph& g, std::string_view a) { return g.attackers(g.index_of(a)); }

// E^-: every argument attacking some member of e.
inline ArgSet set_attackers(const ArgumentGraph& g, const ArgSet& e) {
  detail::check_member_of(g, e);
  ArgSet out(g.size());
  e.for_each([&](std::size_t a) { out |= g.attackers(a); });
  return out;
}

// E^+: every argument attacked by some member of e.
inline ArgSet set_attacked(const ArgumentGraph& g, const ArgSet& e) {
  detail::check_member_of(g, e);
  ArgSet out(g.size());
  e.for_each([&](std::size_t a) { out |= g.targets(a); });
  return out;
}

inline ArgumentGraph induced_subgraph(const ArgumentGraph& g, const ArgSet& keep) {
  detail::check_member_of(g, keep);
  std::vector<std::size_t> old_of_new = keep.members();
  std::vector<std::size_t> new_of_old(g.size(), g.size());
  std::vector<std::string> ids;
  ids.reserve(old_of_new.size());
  for (std::size_t k = 0; k < old_of_new.size(); ++k) {
    new_of_old[old_of_new[k]] = k;
    ids.push_back(g.id(old_of_new[k]));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [f, t] : g.attacks())
    if (keep.test(f) && keep.test(t)) edges.emplace_back(new_of_old[f], new_of_old[t]);
  return ArgumentGraph::from_indices(std::move(ids), std::move(edges));
}

inline bool is_conflict_free(const ArgumentGraph& g, const ArgSet& e) {
  detail::check_member_of(g, e);
  bool ok = true;
  e.for_each([&](std::size_t a) {
    if (ok && g.targets(a).intersects(e)) ok = false;
  });
  return ok;
}

// Every attacker of a is attacked by e.
inline bool is_acceptable(const ArgumentGraph& g, const ArgSet& e, std::size_t a) {
  detail::check_member_of(g, e);
  detail::check_index(g, a);
  return g.attackers(a).subset_of(set_attacked(g, e));
}

// Partition of A relative to a conflict-free query set e:
// e, E^- \ E^+, E^+, and the remaining arguments I; E^+ is further split
// into E^+ \ E^- and E^+ ∩ E^-.
struct Decomposition {
  ArgSet e;
  ArgSet attackers_only;
  ArgSet attacked;
  ArgSet remaining;
  ArgSet attacked_only;
  ArgSet attacked_and_attacking;
};

inline Decomposition decompose(const ArgumentGraph& g, const ArgSet& e) {
  detail::check_member_of(g, e);
  if (!is_conflict_free(g, e)) throw NotConflictFreeError();
  ArgSet minus = set_attackers(g, e);
  ArgSet plus = set_attacked(g, e);
  Decomposition d;
  d.e = e;
  d.attackers_only = minus - plus;
  d.attacked = plus;
  d.remaining = ((g.all() - e) - plus) - minus;
  d.attacked_only = plus - minus;
  d.attacked_and_attacking = plus & minus;
  return d;
}

}  // namespace prarg

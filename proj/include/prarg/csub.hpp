#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "prarg/argset.hpp"
#include "prarg/errors.hpp"
#include "prarg/graph.hpp"
#include "prarg/prag.hpp"
#include "prarg/semantics.hpp"

// Characterized-subgraph engine. For a conflict-free query set E the graph
// splits into E, E^- \ E^+, E^+ and the remaining arguments I; each semantics
// fixes which parts must appear, which must not, and which are unconstrained,
// so p(E^σ) factors into closed-form products plus (for co/pr/gr) a sum over
// subsets of I or of E^+ ∩ E^-.

namespace prarg {

// Optional counters for the subset enumerations.
struct CsubStats {
  std::size_t remaining_size = 0;             // |I|
  std::uint64_t candidates = 0;               // B' ⊆ I visited
  std::uint64_t qualifying = 0;               // B' kept
  std::uint64_t grounded_candidates = 0;      // B''_2 ⊆ E^+ ∩ E^- visited
  std::size_t max_bprime = 0;                 // largest |B'| visited
  double sum_bprime_enumerated = 0.0;
  double sum_bprime_qualifying = 0.0;

  double avg_bprime_enumerated() const {
    return candidates ? sum_bprime_enumerated / static_cast<double>(candidates) : 0.0;
  }
  double avg_bprime_qualifying() const {
    return qualifying ? sum_bprime_qualifying / static_cast<double>(qualifying) : 0.0;
  }
};

namespace detail {

inline constexpr std::size_t kMaxEnumeratedPart = 62;

// Product of p over `present` and 1-p over `absent`.
inline double factor(const PrAG& pg, const ArgSet& present, const ArgSet& absent) {
  double v = 1.0;
  present.for_each([&](std::size_t i) { v *= pg.p(i); });
  absent.for_each([&](std::size_t i) { v *= pg.p_absent(i); });
  return v;
}

// Σ over masks m of `qualifies(m)` of Π_{i∈m} p × Π_{i∉m} (1-p), over the
// listed arguments, in increasing mask order.
template <class Qualifies>
double subset_mass(const PrAG& pg, const std::vector<std::size_t>& members, const Deadline& deadline,
                   Qualifies&& qualifies) {
  if (members.size() > kMaxEnumeratedPart)
    throw GraphTooLargeError("subset enumeration over more than 62 arguments");
  const std::uint64_t total = std::uint64_t{1} << members.size();
  double sum = 0.0;
  for (std::uint64_t m = 0; m < total; ++m) {
    deadline.check();
    if (!qualifies(m)) continue;
    double x = 1.0;
    for (std::size_t k = 0; k < members.size(); ++k)
      x *= ((m >> k) & 1u) ? pg.p(members[k]) : pg.p_absent(members[k]);
    sum += x;
  }
  return sum;
}

// The graph induced on I, re-indexed 0..|I|-1 in the same (lexicographic)
// order, with single-word rows.
struct RemainingView {
  std::vector<std::size_t> members;  // local -> global index
  ArgumentGraph local;
  std::optional<SmallRows> rows;

  RemainingView(const ArgumentGraph& g, const ArgSet& remaining)
      : members(remaining.members()), local(induced_subgraph(g, remaining)) {
    if (members.size() > kMaxEnumeratedPart)
      throw GraphTooLargeError("remaining set too large to enumerate");
    rows.emplace(local);
  }

  // Every member of m has an attacker inside m.
  bool self_attacked(std::uint64_t m) const {
    auto f = rows->frame(SmallSet(m));
    bool ok = true;
    SmallSet(m).for_each([&](std::size_t a) {
      if (ok && f.attackers_in(a).none()) ok = false;
    });
    return ok;
  }

  bool has_nonempty_admissible(std::uint64_t m) const { return nonempty_admissible(rows->frame(SmallSet(m))); }
};

inline void record(CsubStats* stats, std::uint64_t m, bool kept) {
  if (!stats) return;
  const auto size = static_cast<std::size_t>(std::popcount(m));
  ++stats->candidates;
  stats->max_bprime = std::max(stats->max_bprime, size);
  stats->sum_bprime_enumerated += static_cast<double>(size);
  if (kept) {
    ++stats->qualifying;
    stats->sum_bprime_qualifying += static_cast<double>(size);
  }
}

inline std::optional<Decomposition> try_decompose(const ArgumentGraph& g, const ArgSet& e) {
  check_member_of(g, e);
  if (!is_conflict_free(g, e)) return std::nullopt;
  return decompose(g, e);
}

// P_E: E present, E^- \ E^+ absent.
inline double forced_mass(const PrAG& pg, const Decomposition& d) { return factor(pg, d.e, d.attackers_only); }

inline double remaining_complete_mass(const PrAG& pg, const Decomposition& d, const Deadline& deadline,
                                      CsubStats* stats) {
  RemainingView view(pg.graph(), d.remaining);
  if (stats) stats->remaining_size = view.members.size();
  double mass = subset_mass(pg, view.members, deadline, [&](std::uint64_t m) {
    bool kept = view.self_attacked(m);
    record(stats, m, kept);
    return kept;
  });
  return mass;
}

}  // namespace detail

inline Probability p_admissible(const PrAG& pg, const ArgSet& e) {
  auto d = detail::try_decompose(pg.graph(), e);
  if (!d) return 0.0;
  return clamp_probability(detail::forced_mass(pg, *d));
}

inline Probability p_stable(const PrAG& pg, const ArgSet& e) {
  auto d = detail::try_decompose(pg.graph(), e);
  if (!d) return 0.0;
  return clamp_probability(detail::factor(pg, d->e, d->remaining | d->attackers_only));
}

inline Probability p_complete(const PrAG& pg, const ArgSet& e, const Deadline& deadline = {},
                              CsubStats* stats = nullptr) {
  auto d = detail::try_decompose(pg.graph(), e);
  if (!d) return 0.0;
  double pe = detail::forced_mass(pg, *d);
  if (pe == 0.0) return 0.0;
  return clamp_probability(pe * detail::remaining_complete_mass(pg, *d, deadline, stats));
}

// P_E × P_I_PR. Qualifying B' ⊆ I are first collected (every member attacked
// inside B', and G↓B' without a non-empty admissible set), then their masses
// are folded in.
inline Probability p_preferred(const PrAG& pg, const ArgSet& e, const Deadline& deadline = {},
                               CsubStats* stats = nullptr) {
  auto d = detail::try_decompose(pg.graph(), e);
  if (!d) return 0.0;
  const double pe = detail::forced_mass(pg, *d);
  if (pe == 0.0) return 0.0;

  detail::RemainingView view(pg.graph(), d->remaining);
  if (stats) stats->remaining_size = view.members.size();
  const std::uint64_t total = std::uint64_t{1} << view.members.size();
  std::vector<std::uint64_t> sub;
  for (std::uint64_t m = 0; m < total; ++m) {
    deadline.check();
    bool kept = m == 0 || (view.self_attacked(m) && !view.has_nonempty_admissible(m));
    detail::record(stats, m, kept);
    if (kept) sub.push_back(m);
  }

  double result = 0.0;
  for (auto m : sub) {
    double x = 1.0;
    for (std::size_t k = 0; k < view.members.size(); ++k)
      x *= ((m >> k) & 1u) ? pg.p(view.members[k]) : pg.p_absent(view.members[k]);
    result += pe * x;
  }
  return clamp_probability(result);
}

// p(E^co) × P_GR, where P_GR sums over B''_2 ⊆ E^+ ∩ E^- such that E is the
// grounded extension of G↓(E ∪ B''_2).
inline Probability p_grounded(const PrAG& pg, const ArgSet& e, const Deadline& deadline = {},
                              CsubStats* stats = nullptr) {
  auto d = detail::try_decompose(pg.graph(), e);
  if (!d) return 0.0;
  const double pe = detail::forced_mass(pg, *d);
  if (pe == 0.0) return 0.0;
  const double co = pe * detail::remaining_complete_mass(pg, *d, deadline, stats);
  if (co == 0.0) return 0.0;

  const auto& g = pg.graph();
  std::vector<std::size_t> both = d->attacked_and_attacking.members();
  double gr_mass = detail::with_frame(g, g.all(), [&](const auto& full, auto conv, auto) {
    auto frame = full;
    auto target = conv(e);
    return detail::subset_mass(pg, both, deadline, [&](std::uint64_t m) {
      if (stats) ++stats->grounded_candidates;
      ArgSet present = e;
      for (std::size_t k = 0; k < both.size(); ++k)
        if ((m >> k) & 1u) present.set(both[k]);
      frame.domain = conv(present);
      return detail::grounded(frame) == target;
    });
  });
  return clamp_probability(co * gr_mass);
}

inline Probability csub_probability(const PrAG& pg, const ArgSet& e, Semantics s, const Deadline& deadline = {},
                                    CsubStats* stats = nullptr) {
  switch (s) {
    case Semantics::Admissible: return p_admissible(pg, e);
    case Semantics::Stable: return p_stable(pg, e);
    case Semantics::Complete: return p_complete(pg, e, deadline, stats);
    case Semantics::Preferred: return p_preferred(pg, e, deadline, stats);
    case Semantics::Grounded: return p_grounded(pg, e, deadline, stats);
  }
  return 0.0;
}

// ---- explicit characterized families ------------------------------------

// A part of the graph whose present subset must satisfy `accepts`.
struct ConstrainedPart {
  ArgSet domain;
  std::function<bool(const ArgSet&)> accepts;
};

// The σ-subgraphs w.r.t. E are exactly G↓(base ∪ F ∪ C1 ∪ ... ∪ Ck) for
// F ⊆ free and each Ci ⊆ constrained[i].domain accepted by its predicate.
struct CharacterizedFamily {
  ArgSet base;
  ArgSet excluded;
  ArgSet free;
  std::vector<ConstrainedPart> constrained;
};

// Empty when e is not conflict-free (no σ-subgraph exists).
inline std::optional<CharacterizedFamily> characterize(const ArgumentGraph& g, const ArgSet& e, Semantics s) {
  auto d = detail::try_decompose(g, e);
  if (!d) return std::nullopt;

  auto complete_part = [&g](const ArgSet& bprime) {
    bool ok = true;
    bprime.for_each([&](std::size_t a) {
      if (ok && !g.attackers(a).intersects(bprime)) ok = false;
    });
    return ok;
  };

  CharacterizedFamily fam{d->e, d->attackers_only, g.empty_set(), {}};
  switch (s) {
    case Semantics::Admissible:
      fam.free = d->remaining | d->attacked;
      break;
    case Semantics::Stable:
      fam.excluded |= d->remaining;
      fam.free = d->attacked;
      break;
    case Semantics::Complete:
      fam.free = d->attacked;
      fam.constrained.push_back({d->remaining, complete_part});
      break;
    case Semantics::Preferred:
      fam.free = d->attacked;
      fam.constrained.push_back({d->remaining, [&g, complete_part](const ArgSet& bprime) {
                                   if (!complete_part(bprime)) return false;
                                   return !detail::with_frame(g, bprime, [](const auto& f, auto, auto) {
                                     return detail::nonempty_admissible(f);
                                   });
                                 }});
      break;
    case Semantics::Grounded:
      fam.free = d->attacked_only;
      fam.constrained.push_back({d->remaining, complete_part});
      fam.constrained.push_back({d->attacked_and_attacking, [&g, e](const ArgSet& b2) {
                                   return detail::with_frame(g, e | b2, [&](const auto& f, auto conv, auto) {
                                     return detail::grounded(f) == conv(e);
                                   });
                                 }});
      break;
  }
  return fam;
}

namespace detail {
inline std::vector<ArgSet> all_subsets(const ArgSet& domain) {
  std::vector<std::size_t> members = domain.members();
  if (members.size() > kMaxEnumeratedPart) throw GraphTooLargeError("family part too large to enumerate");
  std::vector<ArgSet> out;
  const std::uint64_t total = std::uint64_t{1} << members.size();
  out.reserve(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    ArgSet s(domain.universe());
    for (std::size_t k = 0; k < members.size(); ++k)
      if ((m >> k) & 1u) s.set(members[k]);
    out.push_back(std::move(s));
  }
  return out;
}
}  // namespace detail

// Streams the argument set of every σ-subgraph w.r.t. e to `yield`. The
// family captures g by reference; g must outlive the call.
template <class Yield>
void visit_rho(const PrAG& pg, const ArgSet& e, Semantics s, Yield&& yield) {
  auto fam = characterize(pg.graph(), e, s);
  if (!fam) return;
  std::vector<std::vector<ArgSet>> parts;
  for (const auto& c : fam->constrained) {
    std::vector<ArgSet> ok;
    for (auto& sub : detail::all_subsets(c.domain))
      if (c.accepts(sub)) ok.push_back(std::move(sub));
    if (ok.empty()) return;
    parts.push_back(std::move(ok));
  }
  const std::vector<ArgSet> frees = detail::all_subsets(fam->free);
  std::vector<std::size_t> pick(parts.size(), 0);
  for (;;) {
    ArgSet fixed = fam->base;
    for (std::size_t i = 0; i < parts.size(); ++i) fixed |= parts[i][pick[i]];
    for (const auto& f : frees) yield(fixed | f);
    std::size_t i = 0;
    while (i < parts.size() && ++pick[i] == parts[i].size()) pick[i++] = 0;
    if (i == parts.size()) break;
  }
}

inline std::vector<ArgSet> rho(const PrAG& pg, const ArgSet& e, Semantics s) {
  std::vector<ArgSet> out;
  visit_rho(pg, e, s, [&](ArgSet a) { out.push_back(std::move(a)); });
  return out;
}

}  // namespace prarg

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prarg/argset.hpp"
#include "prarg/errors.hpp"
#include "prarg/graph.hpp"

namespace prarg {

enum class Semantics { Admissible, Complete, Preferred, Grounded, Stable };

inline constexpr Semantics kAllSemantics[] = {Semantics::Admissible, Semantics::Complete,
                                              Semantics::Preferred, Semantics::Grounded,
                                              Semantics::Stable};

inline std::string_view to_string(Semantics s) {
  switch (s) {
    case Semantics::Admissible: return "ad";
    case Semantics::Complete: return "co";
    case Semantics::Preferred: return "pr";
    case Semantics::Grounded: return "gr";
    case Semantics::Stable: return "st";
  }
  return "?";
}

inline std::optional<Semantics> parse_semantics(std::string_view s) {
  for (auto sem : kAllSemantics)
    if (to_string(sem) == s) return sem;
  return std::nullopt;
}

enum class Label { In, Out, Undec };
enum class Legality { Legal, Illegal };

namespace detail {

inline ArgSet blank_like(const ArgSet& s) { return ArgSet(s.universe()); }
inline SmallSet blank_like(SmallSet) { return SmallSet{}; }

// Adjacency rows plus the set of arguments present: the frame stands for
// the induced subgraph on `domain` without materializing it.
template <class Set>
struct Frame {
  std::span<const Set> attackers;
  std::span<const Set> targets;
  Set domain;

  Set attackers_in(std::size_t a) const { return attackers[a] & domain; }
  Set targets_in(std::size_t a) const { return targets[a] & domain; }
  Set blank() const { return blank_like(domain); }

  Set attacked_by(const Set& s) const {
    Set out = blank();
    s.for_each([&](std::size_t a) { out |= targets[a]; });
    return out & domain;
  }
  Set attackers_of_set(const Set& s) const {
    Set out = blank();
    s.for_each([&](std::size_t a) { out |= attackers[a]; });
    return out & domain;
  }
};

// Single-word copies of a graph's rows, for graphs with at most 64 arguments.
class SmallRows {
 public:
  explicit SmallRows(const ArgumentGraph& g) {
    if (g.size() > 64) throw GraphTooLargeError("small-set kernel needs at most 64 arguments");
    attackers_.reserve(g.size());
    targets_.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      attackers_.emplace_back(g.attackers(i).low_word());
      targets_.emplace_back(g.targets(i).low_word());
    }
    universe_ = g.size();
  }

  Frame<SmallSet> frame(SmallSet domain) const { return {attackers_, targets_, domain}; }
  Frame<SmallSet> full_frame() const {
    return frame(SmallSet(universe_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe_) - 1));
  }
  std::size_t universe() const noexcept { return universe_; }

 private:
  std::vector<SmallSet> attackers_;
  std::vector<SmallSet> targets_;
  std::size_t universe_ = 0;
};

inline Frame<ArgSet> big_frame(const ArgumentGraph& g, ArgSet domain) {
  return {g.attacker_rows(), g.target_rows(), std::move(domain)};
}

// Runs f on a frame for (g, domain), using the single-word kernel when the
// graph fits. Set arguments are passed through `conv`, which maps an ArgSet
// onto the frame's set type.
template <class F>
decltype(auto) with_frame(const ArgumentGraph& g, const ArgSet& domain, F&& f) {
  if (g.size() <= 64) {
    SmallRows rows(g);
    auto conv = [](const ArgSet& s) { return SmallSet(s.low_word()); };
    auto back = [n = g.size()](SmallSet s) { return ArgSet::from_mask(n, s.mask()); };
    return f(rows.frame(conv(domain)), conv, back);
  }
  auto conv = [](const ArgSet& s) { return s; };
  auto back = [](const ArgSet& s) { return s; };
  return f(big_frame(g, domain), conv, back);
}

// ---- Def 3 checks on a frame -------------------------------------------

template <class Set>
bool conflict_free(const Frame<Set>& f, const Set& e) {
  bool ok = true;
  e.for_each([&](std::size_t a) {
    if (ok && f.targets[a].intersects(e)) ok = false;
  });
  return ok;
}

template <class Set>
bool admissible(const Frame<Set>& f, const Set& e) {
  if (!conflict_free(f, e)) return false;
  Set plus = f.attacked_by(e);
  bool ok = true;
  e.for_each([&](std::size_t a) {
    if (ok && !f.attackers_in(a).subset_of(plus)) ok = false;
  });
  return ok;
}

// Arguments of the frame acceptable with respect to s.
template <class Set>
Set acceptable_set(const Frame<Set>& f, const Set& s) {
  Set plus = f.attacked_by(s);
  Set out = f.blank();
  f.domain.for_each([&](std::size_t a) {
    if (f.attackers_in(a).subset_of(plus)) out.set(a);
  });
  return out;
}

template <class Set>
bool complete(const Frame<Set>& f, const Set& e) {
  return admissible(f, e) && acceptable_set(f, e).subset_of(e);
}

template <class Set>
bool stable(const Frame<Set>& f, const Set& e) {
  return conflict_free(f, e) && (f.domain - e).subset_of(f.attacked_by(e));
}

// Least fixpoint of the defense operator, iterated from the empty set.
template <class Set>
Set grounded(const Frame<Set>& f) {
  Set cur = f.blank();
  for (;;) {
    Set next = acceptable_set(f, cur);
    if (next == cur) return cur;
    cur = next;
  }
}

// Admissible and no admissible strict superset. A superset e ∪ t is only
// conflict-free when t avoids e, E^+ and E^-, so only those t are tried.
template <class Set>
bool preferred_by_definition(const Frame<Set>& f, const Set& e) {
  if (!admissible(f, e)) return false;
  Set candidates = f.domain - e - f.attacked_by(e) - f.attackers_of_set(e);
  std::vector<std::size_t> cand;
  candidates.for_each([&](std::size_t a) { cand.push_back(a); });
  if (cand.size() > 40) throw GraphTooLargeError("too many candidates for preferred check");
  const std::uint64_t total = std::uint64_t{1} << cand.size();
  for (std::uint64_t m = 1; m < total; ++m) {
    Set t = e;
    for (std::size_t k = 0; k < cand.size(); ++k)
      if ((m >> k) & 1u) t.set(cand[k]);
    if (admissible(f, t)) return false;
  }
  return true;
}

template <class Set>
bool is_extension_on(const Frame<Set>& f, const Set& e, Semantics s) {
  if (!e.subset_of(f.domain)) return false;
  switch (s) {
    case Semantics::Admissible: return admissible(f, e);
    case Semantics::Complete: return complete(f, e);
    case Semantics::Preferred: return preferred_by_definition(f, e);
    case Semantics::Grounded: return conflict_free(f, e) && grounded(f) == e;
    case Semantics::Stable: return stable(f, e);
  }
  return false;
}

// ---- labelling kernel ---------------------------------------------------

// undec = domain \ (in ∪ out)
template <class Set>
struct LabelState {
  Set in;
  Set out;
};

template <class Set>
Set undec_of(const Frame<Set>& f, const LabelState<Set>& l) {
  return f.domain - l.in - l.out;
}

template <class Set>
bool legally_in(const Frame<Set>& f, const LabelState<Set>& l, std::size_t a) {
  return l.in.test(a) && f.attackers_in(a).subset_of(l.out);
}

template <class Set>
bool legally_out(const Frame<Set>& f, const LabelState<Set>& l, std::size_t a) {
  return l.out.test(a) && f.attackers[a].intersects(l.in);
}

template <class Set>
bool legally_undec(const Frame<Set>& f, const LabelState<Set>& l, std::size_t a) {
  if (l.in.test(a) || l.out.test(a) || !f.domain.test(a)) return false;
  Set att = f.attackers_in(a);
  return !att.subset_of(l.out) && !att.intersects(l.in);
}

template <class Set>
Set illegally_in(const Frame<Set>& f, const LabelState<Set>& l) {
  Set out = f.blank();
  l.in.for_each([&](std::size_t a) {
    if (!f.attackers_in(a).subset_of(l.out)) out.set(a);
  });
  return out;
}

// Illegally IN and attacked by an argument that is legally IN or UNDEC.
template <class Set>
Set super_illegally_in(const Frame<Set>& f, const LabelState<Set>& l, const Set& illegal) {
  Set guards = (l.in - illegal) | undec_of(f, l);
  Set out = f.blank();
  illegal.for_each([&](std::size_t a) {
    if (f.attackers[a].intersects(guards)) out.set(a);
  });
  return out;
}

// a: IN -> OUT; then each of {a} ∪ a^+ that is illegally OUT becomes UNDEC.
template <class Set>
LabelState<Set> transition(const Frame<Set>& f, LabelState<Set> l, std::size_t a) {
  l.in.reset(a);
  l.out.set(a);
  Set touched = f.targets_in(a);
  touched.set(a);
  touched.for_each([&](std::size_t b) {
    if (l.out.test(b) && !f.attackers[b].intersects(l.in)) l.out.reset(b);
  });
  return l;
}

// Outcome of the preferred-verification search.
struct PreferredSearch {
  bool witnessed = false;  // a terminal labelling has in = e
  bool refuted = false;    // a terminal labelling has in ⊋ e
};

template <class Set>
void verify_preferred_rec(const Frame<Set>& f, const LabelState<Set>& l, const Set& e, PreferredSearch& out) {
  if (out.refuted) return;
  Set illegal = illegally_in(f, l);
  Set super = super_illegally_in(f, l, illegal);
  if (super.intersects(e)) return;
  if (illegal.none()) {
    if (e.proper_subset_of(l.in)) out.refuted = true;
    else if (e == l.in) out.witnessed = true;
    return;
  }
  if (super.any()) {
    verify_preferred_rec(f, transition(f, l, super.lowest()), e, out);
    return;
  }
  while (illegal.any() && !out.refuted) {
    std::size_t a = illegal.lowest();
    illegal.reset(a);
    verify_preferred_rec(f, transition(f, l, a), e, out);
  }
}

// Starts from the all-IN labelling of the frame.
template <class Set>
bool verify_preferred(const Frame<Set>& f, const Set& e) {
  if (!e.subset_of(f.domain)) return false;
  PreferredSearch out;
  verify_preferred_rec(f, LabelState<Set>{f.domain, f.blank()}, e, out);
  return out.witnessed && !out.refuted;
}

template <class Set>
bool nonempty_admissible_rec(const Frame<Set>& f, const LabelState<Set>& l) {
  Set illegal = illegally_in(f, l);
  if (illegal.none()) return l.in.any();
  Set super = super_illegally_in(f, l, illegal);
  if (super.any()) return nonempty_admissible_rec(f, transition(f, l, super.lowest()));
  while (illegal.any()) {
    std::size_t a = illegal.lowest();
    illegal.reset(a);
    if (nonempty_admissible_rec(f, transition(f, l, a))) return true;
  }
  return false;
}

template <class Set>
bool nonempty_admissible(const Frame<Set>& f) {
  return nonempty_admissible_rec(f, LabelState<Set>{f.domain, f.blank()});
}

}  // namespace detail

// Total labelling of a graph's arguments; undec is whatever is neither in
// nor out. Holds a reference to the graph, which must outlive it.
class Labelling {
 public:
  Labelling(const ArgumentGraph& g, ArgSet in, ArgSet out) : g_(&g), in_(std::move(in)), out_(std::move(out)) {
    detail::check_member_of(g, in_);
    detail::check_member_of(g, out_);
    if (in_.intersects(out_)) throw PreconditionError("in and out labels overlap");
  }

  static Labelling all_in(const ArgumentGraph& g) { return Labelling(g, g.all(), g.empty_set()); }

  const ArgumentGraph& graph() const noexcept { return *g_; }
  const ArgSet& in() const noexcept { return in_; }
  const ArgSet& out() const noexcept { return out_; }
  ArgSet undec() const { return g_->all() - in_ - out_; }

  Label label(std::size_t a) const {
    detail::check_index(*g_, a);
    if (in_.test(a)) return Label::In;
    if (out_.test(a)) return Label::Out;
    return Label::Undec;
  }
  Label label(std::string_view a) const { return label(g_->index_of(a)); }

  bool is_all_in() const { return out_.none() && in_ == g_->all(); }

  friend bool operator==(const Labelling& a, const Labelling& b) {
    return a.g_ == b.g_ && a.in_ == b.in_ && a.out_ == b.out_;
  }

 private:
  const ArgumentGraph* g_;
  ArgSet in_;
  ArgSet out_;
};

namespace detail {
inline LabelState<ArgSet> state_of(const Labelling& l) { return {l.in(), l.out()}; }
}  // namespace detail

inline Legality label_legality(const Labelling& l, std::size_t a) {
  const auto& g = l.graph();
  detail::check_index(g, a);
  auto f = detail::big_frame(g, g.all());
  auto st = detail::state_of(l);
  bool legal = false;
  switch (l.label(a)) {
    case Label::In: legal = detail::legally_in(f, st, a); break;
    case Label::Out: legal = detail::legally_out(f, st, a); break;
    case Label::Undec: legal = detail::legally_undec(f, st, a); break;
  }
  return legal ? Legality::Legal : Legality::Illegal;
}
inline Legality label_legality(const Labelling& l, std::string_view a) {
  return label_legality(l, l.graph().index_of(a));
}

inline ArgSet illegally_in(const Labelling& l) {
  return detail::illegally_in(detail::big_frame(l.graph(), l.graph().all()), detail::state_of(l));
}

inline ArgSet super_illegally_in(const Labelling& l) {
  auto f = detail::big_frame(l.graph(), l.graph().all());
  auto st = detail::state_of(l);
  return detail::super_illegally_in(f, st, detail::illegally_in(f, st));
}

inline Labelling transition_step(const Labelling& l, std::size_t a) {
  const auto& g = l.graph();
  detail::check_index(g, a);
  auto f = detail::big_frame(g, g.all());
  auto st = detail::state_of(l);
  if (!st.in.test(a) || detail::legally_in(f, st, a))
    throw PreconditionError("transition step on '" + g.id(a) + "', which is not illegally IN");
  auto next = detail::transition(f, st, a);
  return Labelling(g, std::move(next.in), std::move(next.out));
}
inline Labelling transition_step(const Labelling& l, std::string_view a) {
  return transition_step(l, l.graph().index_of(a));
}

// Decides whether e is a preferred extension of l's graph by the recursive
// labelling search: branches on the smallest super-illegally-IN argument when
// one exists, otherwise on every illegally-IN argument. A branch in which a
// member of e is super-illegally IN is abandoned. Rejects when a labelling
// with no illegal IN has an in-set strictly containing e; accepts only if
// some such terminal labelling has in-set exactly e.
inline bool verify_preferred_labelling(const Labelling& l, const ArgSet& e) {
  const auto& g = l.graph();
  if (!l.is_all_in()) throw PreconditionError("verify_preferred_labelling expects the all-IN labelling");
  detail::check_member_of(g, e);
  return detail::with_frame(g, g.all(), [&](const auto& f, auto conv, auto) {
    return detail::verify_preferred(f, conv(e));
  });
}

inline bool has_nonempty_admissible(const ArgumentGraph& g) {
  return detail::with_frame(g, g.all(), [&](const auto& f, auto, auto) {
    return detail::nonempty_admissible(f);
  });
}

inline ArgSet grounded_extension(const ArgumentGraph& g) {
  return detail::with_frame(g, g.all(), [&](const auto& f, auto, auto back) {
    return back(detail::grounded(f));
  });
}

inline bool is_extension(const ArgumentGraph& g, const ArgSet& e, Semantics s) {
  detail::check_member_of(g, e);
  return detail::with_frame(g, g.all(), [&](const auto& f, auto conv, auto) {
    return detail::is_extension_on(f, conv(e), s);
  });
}

inline constexpr std::size_t kMaxEnumerationSize = 25;

// All σ-extensions by checking every subset against the definitions.
// Preferred = ⊆-maximal admissible sets; grounded = ⊆-minimal complete sets.
// Sorted by ArgSet order.
inline std::vector<ArgSet> enumerate_extensions(const ArgumentGraph& g, Semantics s) {
  const std::size_t n = g.size();
  if (n > kMaxEnumerationSize)
    throw GraphTooLargeError("enumerate_extensions refuses graphs with more than 25 arguments");
  detail::SmallRows rows(g);
  auto f = rows.full_frame();
  std::vector<SmallSet> hits;
  Semantics base = s == Semantics::Preferred ? Semantics::Admissible
                   : s == Semantics::Grounded ? Semantics::Complete
                                              : s;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    SmallSet e(m);
    bool ok = false;
    switch (base) {
      case Semantics::Admissible: ok = detail::admissible(f, e); break;
      case Semantics::Complete: ok = detail::complete(f, e); break;
      case Semantics::Stable: ok = detail::stable(f, e); break;
      default: break;
    }
    if (ok) hits.push_back(e);
  }
  std::vector<SmallSet> kept;
  for (const auto& h : hits) {
    bool keep = true;
    for (const auto& o : hits) {
      if (s == Semantics::Preferred && h.proper_subset_of(o)) keep = false;
      if (s == Semantics::Grounded && o.proper_subset_of(h)) keep = false;
      if (!keep) break;
    }
    if (keep) kept.push_back(h);
  }
  std::vector<ArgSet> out;
  out.reserve(kept.size());
  for (auto k : kept) out.push_back(ArgSet::from_mask(n, k.mask()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prarg

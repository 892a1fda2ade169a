#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prarg/argset.hpp"
#include "prarg/errors.hpp"
#include "prarg/graph.hpp"
#include "prarg/prag.hpp"
#include "prarg/semantics.hpp"

// Possible-worlds baseline: every induced subgraph is enumerated and checked.

namespace prarg {

inline constexpr std::size_t kMaxPossibleWorldsSize = 40;

namespace detail {

// Visits every A' (as a mask, increasing binary order) with e ⊆ A',
// e a σ-extension of G↓A'. Preferred uses the labelling
// verifier; the other semantics use the definitional checks.
template <class Visit>
void visit_possible_worlds(const PrAG& pg, const ArgSet& e, Semantics s, const Deadline& deadline,
                           bool skip_zero, Visit&& visit) {
  const auto& g = pg.graph();
  check_member_of(g, e);
  const std::size_t n = g.size();
  if (n > kMaxPossibleWorldsSize)
    throw GraphTooLargeError("possible-worlds enumeration refuses more than 40 arguments");
  SmallRows rows(g);
  const std::uint64_t need = e.low_word();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    deadline.check();
    if ((m & need) != need) continue;
    double pr = 1.0;
    for (std::size_t i = 0; i < n; ++i) pr *= ((m >> i) & 1u) ? pg.p(i) : pg.p_absent(i);
    if (skip_zero && pr == 0.0) continue;
    auto f = rows.frame(SmallSet(m));
    bool hit = s == Semantics::Preferred ? verify_preferred(f, SmallSet(need))
                                         : is_extension_on(f, SmallSet(need), s);
    if (hit) visit(m, pr);
  }
}

}  // namespace detail

// p(E^σ) as the sum of p(G') over every subgraph having e as a σ-extension.
inline Probability pw_probability(const PrAG& pg, const ArgSet& e, Semantics s,
                                  const Deadline& deadline = {}) {
  double sum = 0.0;
  detail::visit_possible_worlds(pg, e, s, deadline, true, [&](std::uint64_t, double p) { sum += p; });
  return clamp_probability(sum);
}

// Every A' with e a σ-extension of G↓A' (zero-probability worlds included),
// in enumeration order.
inline std::vector<ArgSet> pw_family(const PrAG& pg, const ArgSet& e, Semantics s,
                                     const Deadline& deadline = {}) {
  std::vector<ArgSet> out;
  const std::size_t n = pg.size();
  detail::visit_possible_worlds(pg, e, s, deadline, false,
                                [&](std::uint64_t m, double) { out.push_back(ArgSet::from_mask(n, m)); });
  return out;
}

}  // namespace prarg

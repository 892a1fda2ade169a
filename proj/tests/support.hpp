#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "prarg/prarg.hpp"

namespace fixtures {

// a <-> b, b -> c, c <-> d, d -> d.
inline prarg::ArgumentGraph g1() {
  return prarg::ArgumentGraph({"a", "b", "c", "d"},
                              {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "d"}, {"d", "c"}, {"d", "d"}});
}

inline prarg::PrAG g1p() { return prarg::PrAG(g1(), {0.5, 0.8, 0.4, 0.5}); }

// Argument sets of the sixteen subgraphs of G1 in table order: the first
// eight contain a, then b splits each half, and so on.
inline std::vector<std::string> table_rows() {
  std::vector<std::string> rows;
  for (unsigned k = 0; k < 16; ++k) {
    std::string s;
    for (unsigned bit = 0; bit < 4; ++bit)
      if (!((k >> (3 - bit)) & 1u)) s += static_cast<char>('a' + bit);
    rows.push_back(s);
  }
  return rows;
}

inline prarg::ArgSet set_of(const prarg::ArgumentGraph& g, const std::string& letters) {
  prarg::ArgSet s = g.empty_set();
  for (char c : letters) s.set(g.index_of(std::string(1, c)));
  return s;
}

// Independent brute-force oracle over an attacker bitmask table. Every check
// works inside a domain mask D standing for the induced subgraph on D.
struct Oracle {
  std::size_t n = 0;
  std::vector<std::uint64_t> attackers;  // attackers[i]: bitmask of j with j -> i

  explicit Oracle(const prarg::ArgumentGraph& g) : n(g.size()), attackers(g.size(), 0) {
    for (const auto& [f, t] : g.attacks()) attackers[t] |= std::uint64_t{1} << f;
  }

  bool in(std::uint64_t s, std::size_t i) const { return (s >> i) & 1u; }

  bool conflict_free(std::uint64_t s) const {
    for (std::size_t i = 0; i < n; ++i)
      if (in(s, i) && (attackers[i] & s)) return false;
    return true;
  }
  std::uint64_t hit_by(std::uint64_t s, std::uint64_t d) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (in(d, i) && (attackers[i] & s)) out |= std::uint64_t{1} << i;
    return out;
  }
  bool defends(std::uint64_t s, std::size_t a, std::uint64_t d) const {
    std::uint64_t att = attackers[a] & d;
    return (att & ~hit_by(s, d)) == 0;
  }
  bool admissible(std::uint64_t s, std::uint64_t d) const {
    if ((s & ~d) || !conflict_free(s)) return false;
    for (std::size_t i = 0; i < n; ++i)
      if (in(s, i) && !defends(s, i, d)) return false;
    return true;
  }
  bool complete(std::uint64_t s, std::uint64_t d) const {
    if (!admissible(s, d)) return false;
    for (std::size_t i = 0; i < n; ++i)
      if (in(d, i) && !in(s, i) && defends(s, i, d)) return false;
    return true;
  }
  bool stable(std::uint64_t s, std::uint64_t d) const {
    if ((s & ~d) || !conflict_free(s)) return false;
    return ((d & ~s) & ~hit_by(s, d)) == 0;
  }
  bool preferred(std::uint64_t s, std::uint64_t d) const {
    if (!admissible(s, d)) return false;
    std::uint64_t rest = d & ~s;
    for (std::uint64_t t = rest; t; t = (t - 1) & rest)
      if (admissible(s | t, d)) return false;
    return true;
  }
  std::uint64_t grounded_of(std::uint64_t d) const {
    std::uint64_t s = 0;
    for (;;) {
      std::uint64_t next = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (in(d, i) && defends(s, i, d)) next |= std::uint64_t{1} << i;
      if (next == s) return s;
      s = next;
    }
  }
  bool extension(std::uint64_t s, std::uint64_t d, prarg::Semantics sem) const {
    switch (sem) {
      case prarg::Semantics::Admissible: return admissible(s, d);
      case prarg::Semantics::Complete: return complete(s, d);
      case prarg::Semantics::Preferred: return preferred(s, d);
      case prarg::Semantics::Grounded: return (s & ~d) == 0 && grounded_of(d) == s;
      case prarg::Semantics::Stable: return stable(s, d);
    }
    return false;
  }
  std::uint64_t full() const { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }
};

inline double oracle_probability(const prarg::PrAG& pg, std::uint64_t e, prarg::Semantics s) {
  Oracle o(pg.graph());
  double sum = 0.0;
  for (std::uint64_t d = 0; d <= o.full(); ++d) {
    if ((e & ~d) || !o.extension(e, d, s)) continue;
    double p = 1.0;
    for (std::size_t i = 0; i < o.n; ++i) p *= o.in(d, i) ? pg.p(i) : 1.0 - pg.p(i);
    sum += p;
  }
  return sum;
}

// Random graph on n arguments named v0.., each ordered pair (self-loops
// included) an attack with probability density; probabilities drawn from a
// small grid that includes 0 and 1.
inline prarg::PrAG random_graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  std::bernoulli_distribution edge(density);
  std::vector<prarg::Attack> att;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (edge(rng)) att.push_back({ids[i], ids[j]});
  prarg::ArgumentGraph g(ids, att);
  static constexpr double grid[] = {0.0, 0.1, 0.25, 0.3, 0.5, 0.65, 0.8, 0.95, 1.0};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(grid) - 1);
  std::vector<double> p(n);
  for (auto& v : p) v = grid[pick(rng)];
  return prarg::PrAG(std::move(g), std::move(p));
}

inline std::uint64_t random_mask(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) return 0;
  return rng() & ((n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

// Random conflict-free subset of a random size in [0, max_size]; falls back
// to the empty set when the sampled size admits none quickly.
inline std::uint64_t random_conflict_free(std::mt19937_64& rng, const Oracle& o, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size(0, std::min(max_size, o.n));
  const std::size_t k = size(rng);
  std::vector<std::size_t> idx(o.n);
  for (std::size_t i = 0; i < o.n; ++i) idx[i] = i;
  for (int tries = 0; tries < 200; ++tries) {
    std::shuffle(idx.begin(), idx.end(), rng);
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < k; ++i) m |= std::uint64_t{1} << idx[i];
    if (o.conflict_free(m)) return m;
  }
  return 0;
}

}  // namespace fixtures

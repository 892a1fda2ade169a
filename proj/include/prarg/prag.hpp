#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prarg/errors.hpp"
#include "prarg/graph.hpp"

namespace prarg {

using Probability = double;

// Enumeration sums may drift a few ulp past 1.
inline Probability clamp_probability(double v) { return std::clamp(v, 0.0, 1.0); }

// Argument graph with an independent appearance probability per argument.
class PrAG {
 public:
  PrAG() = default;
  PrAG(ArgumentGraph g, std::vector<double> prob) : graph_(std::move(g)), prob_(std::move(prob)) {
    if (prob_.size() != graph_.size()) throw PreconditionError("probability map must cover every argument");
    for (std::size_t i = 0; i < prob_.size(); ++i)
      if (!(prob_[i] >= 0.0 && prob_[i] <= 1.0))
        throw PreconditionError("probability of '" + graph_.id(i) + "' outside [0,1]");
  }

  const ArgumentGraph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return graph_.size(); }

  double p(std::size_t i) const { return prob_.at(i); }
  double p(std::string_view id) const { return prob_.at(graph_.index_of(id)); }
  double p_absent(std::size_t i) const { return 1.0 - prob_.at(i); }
  const std::vector<double>& probabilities() const noexcept { return prob_; }

  friend bool operator==(const PrAG&, const PrAG&) = default;

 private:
  ArgumentGraph graph_;
  std::vector<double> prob_;
};

// Cooperative deadline; an empty Deadline never expires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  template <class Rep, class Period>
  explicit Deadline(std::chrono::duration<Rep, Period> budget)
      : at_(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget)) {}
  template <class Rep, class Period>
  explicit Deadline(std::optional<std::chrono::duration<Rep, Period>> budget) {
    if (budget) at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(*budget);
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw TimeoutError();
  }

 private:
  std::optional<Clock::time_point> at_;
};

// Product of p over present arguments and 1-p over absent ones.
inline Probability subgraph_probability(const PrAG& pg, const ArgSet& keep) {
  detail::check_member_of(pg.graph(), keep);
  double v = 1.0;
  for (std::size_t i = 0; i < pg.size(); ++i) v *= keep.test(i) ? pg.p(i) : pg.p_absent(i);
  return v;
}

}  // namespace prarg

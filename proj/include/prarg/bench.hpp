#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "prarg/argset.hpp"
#include "prarg/csub.hpp"
#include "prarg/errors.hpp"
#include "prarg/graph.hpp"
#include "prarg/io.hpp"
#include "prarg/prag.hpp"
#include "prarg/pw.hpp"
#include "prarg/semantics.hpp"

// Random instances and the PW / C-Sub timing harness.

namespace prarg {

// Edge-to-node ratio, written "2:1".
struct Ratio {
  std::uint32_t num = 1;
  std::uint32_t den = 1;

  std::size_t edges_for(std::size_t nodes) const {
    return static_cast<std::size_t>(std::llround(static_cast<double>(num) * static_cast<double>(nodes) / den));
  }
  std::string to_string() const { return std::to_string(num) + ":" + std::to_string(den); }

  friend auto operator<=>(const Ratio& a, const Ratio& b) {
    return std::uint64_t{a.num} * b.den <=> std::uint64_t{b.num} * a.den;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }
};

inline Ratio parse_ratio(std::string_view text) {
  auto colon = text.find(':');
  auto read = [&](std::string_view part) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw PreconditionError("malformed ratio '" + std::string(text) + "'");
    return v;
  };
  Ratio r;
  if (colon == std::string_view::npos) {
    r.num = read(text);
  } else {
    r.num = read(text.substr(0, colon));
    r.den = read(text.substr(colon + 1));
  }
  if (r.num == 0 || r.den == 0) throw PreconditionError("ratio must be positive");
  return r;
}

enum class Method { PW, CSub };

inline std::string to_string(Method m) { return m == Method::PW ? "pw" : "csub"; }

inline Method parse_method(std::string_view s) {
  if (s == "pw") return Method::PW;
  if (s == "csub") return Method::CSub;
  throw PreconditionError("unknown method '" + std::string(s) + "'");
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-sensitive fold of splitmix64 over the parts.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t nodes, Ratio ratio, std::size_t ext_size,
                                std::size_t trial) {
  return mix_seed({seed, nodes, ratio.num, ratio.den, ext_size, trial});
}

// n arguments a0..a(n-1), m distinct ordered pairs (self-loops allowed),
// probabilities in (0,1) at three decimals.
inline PrAG random_prag(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0) throw InvalidSizeError("random graph needs at least one argument");
  const std::uint64_t pairs = std::uint64_t{n} * n;
  if (m > pairs) throw InvalidSizeError("more edges requested than ordered pairs");
  std::mt19937_64 rng(seed);

  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto at = [&](std::uint64_t k) {
    auto it = swapped.find(k);
    return it == swapped.end() ? k : it->second;
  };
  std::vector<std::uint64_t> chosen;
  chosen.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::uint64_t> pick(i, pairs - 1);
    std::uint64_t j = pick(rng);
    std::uint64_t vi = at(i), vj = at(j);
    swapped[j] = vi;
    swapped[i] = vj;
    chosen.push_back(vj);
  }

  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "a" + std::to_string(i);
  std::vector<double> by_name(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& p : by_name) {
    do p = std::round(unit(rng) * 1000.0) / 1000.0;
    while (p <= 0.0 || p >= 1.0);
  }

  std::vector<Attack> attacks;
  attacks.reserve(m);
  for (auto k : chosen) attacks.push_back({names[k / n], names[k % n]});
  ArgumentGraph g(names, attacks);
  std::vector<double> prob(n);
  for (std::size_t i = 0; i < n; ++i) prob[g.index_of(names[i])] = by_name[i];
  return PrAG(std::move(g), std::move(prob));
}

inline constexpr int kConflictFreeRetries = 10000;

// Uniform j-subsets drawn until one is conflict-free.
inline ArgSet random_conflict_free_set(const ArgumentGraph& g, std::size_t j, std::uint64_t seed) {
  if (j == 0) return g.empty_set();
  if (j > g.size()) throw NotFoundError("no subset of the requested size");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(g.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (int attempt = 0; attempt < kConflictFreeRetries; ++attempt) {
    ArgSet s = g.empty_set();
    for (std::size_t k = 0; k < j; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, idx.size() - 1);
      std::swap(idx[k], idx[pick(rng)]);
      s.set(idx[k]);
    }
    if (is_conflict_free(g, s)) return s;
  }
  throw NotFoundError("no conflict-free set of size " + std::to_string(j) + " found");
}

struct BenchConfig {
  std::vector<std::size_t> node_counts{10};
  std::vector<Ratio> edge_ratios{{2, 1}};
  std::vector<std::size_t> ext_sizes{3};
  std::size_t trials_per_cell = 20;
  std::chrono::nanoseconds timeout = std::chrono::seconds(180);
  std::uint64_t seed = 0;
  std::vector<Method> methods{Method::PW, Method::CSub};
  Semantics semantics = Semantics::Preferred;
  std::size_t jobs = 1;
  bool exclusive_timing = false;  // forces jobs = 1

  void validate() const {
    if (trials_per_cell < 1) throw PreconditionError("trials must be at least 1");
    if (timeout <= std::chrono::nanoseconds::zero()) throw PreconditionError("timeout must be positive");
    if (methods.empty()) throw PreconditionError("no methods selected");
    for (auto n : node_counts)
      for (auto e : ext_sizes)
        if (e > n) throw PreconditionError("extension size exceeds node count");
  }
};

struct BenchRecord {
  std::size_t nodes = 0;
  Ratio ratio;
  std::size_t ext_size = 0;
  std::size_t trial_index = 0;
  std::uint64_t trial_seed = 0;
  Method method = Method::PW;
  std::chrono::nanoseconds elapsed{0};
  bool timed_out = false;
  std::optional<Probability> probability;
  std::optional<std::size_t> max_bprime;
  std::optional<double> avg_bprime_qualifying;
  std::optional<double> avg_bprime_enumerated;

  auto key() const { return std::tuple(nodes, ratio, ext_size, trial_index, method); }
};

struct BenchInstance {
  PrAG prag;
  ArgSet query;
};

inline constexpr int kGraphRegenerations = 100;

inline BenchInstance make_instance(std::size_t nodes, Ratio ratio, std::size_t ext_size, std::uint64_t seed) {
  for (int attempt = 0;; ++attempt) {
    PrAG pg = random_prag(nodes, ratio.edges_for(nodes), mix_seed({seed, std::uint64_t(attempt), 0}));
    try {
      ArgSet e = random_conflict_free_set(pg.graph(), ext_size, mix_seed({seed, std::uint64_t(attempt), 1}));
      return {std::move(pg), std::move(e)};
    } catch (const NotFoundError&) {
      if (attempt + 1 >= kGraphRegenerations) throw;
    }
  }
}

// Times one method on one instance.
// Calls shorter than this are repeated until the total reaches it, and the
// mean per call is reported. A single cold call of a few microseconds
// measures cache state more than the method.
inline constexpr std::chrono::nanoseconds kMinSample = std::chrono::milliseconds(1);

inline BenchRecord time_method(const BenchInstance& inst, Method method, Semantics s,
                               std::chrono::nanoseconds timeout) {
  BenchRecord r;
  r.method = method;
  CsubStats stats;
  auto call = [&](CsubStats* st) {
    Deadline deadline(timeout);
    return method == Method::PW ? pw_probability(inst.prag, inst.query, s, deadline)
                                : csub_probability(inst.prag, inst.query, s, deadline, st);
  };
  const auto start = std::chrono::steady_clock::now();
  try {
    Probability p = call(&stats);
    auto total = std::chrono::steady_clock::now() - start;
    std::int64_t calls = 1;
    if (total < kMinSample && timeout >= kMinSample) {
      const auto resumed = std::chrono::steady_clock::now();
      calls = 0;
      do {
        call(nullptr);
        ++calls;
        total = std::chrono::steady_clock::now() - resumed;
      } while (total < kMinSample);
    }
    r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(total) / calls;
    r.probability = p;
  } catch (const TimeoutError&) {
    r.elapsed = timeout;
    r.timed_out = true;
  }
  if (method == Method::CSub) {
    r.max_bprime = stats.max_bprime;
    r.avg_bprime_qualifying = stats.avg_bprime_qualifying();
    r.avg_bprime_enumerated = stats.avg_bprime_enumerated();
  }
  return r;
}

inline std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  struct Task {
    std::size_t nodes;
    Ratio ratio;
    std::size_t ext_size;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (auto n : cfg.node_counts)
    for (auto r : cfg.edge_ratios)
      for (auto e : cfg.ext_sizes)
        for (std::size_t t = 0; t < cfg.trials_per_cell; ++t) tasks.push_back({n, r, e, t});

  std::vector<std::vector<BenchRecord>> slots(tasks.size());
  auto run_task = [&](std::size_t i) {
    const Task& t = tasks[i];
    const std::uint64_t seed = trial_seed(cfg.seed, t.nodes, t.ratio, t.ext_size, t.trial);
    BenchInstance inst = make_instance(t.nodes, t.ratio, t.ext_size, seed);
    for (auto m : cfg.methods) {
      BenchRecord r = time_method(inst, m, cfg.semantics, cfg.timeout);
      r.nodes = t.nodes;
      r.ratio = t.ratio;
      r.ext_size = t.ext_size;
      r.trial_index = t.trial;
      r.trial_seed = seed;
      slots[i].push_back(std::move(r));
    }
  };

  const std::size_t jobs = cfg.exclusive_timing ? 1 : std::max<std::size_t>(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
          try {
            run_task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<BenchRecord> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  return out;
}

struct BenchSummary {
  std::size_t nodes = 0;
  Ratio ratio;
  std::size_t ext_size = 0;
  Method method = Method::PW;
  std::size_t trials = 0;
  double mean_secs = 0.0;
  std::size_t timeouts = 0;
  std::optional<double> mean_max_bprime;
};

inline std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records) {
  using Key = std::tuple<std::size_t, Ratio, std::size_t, Method>;
  struct Acc {
    std::size_t n = 0, timeouts = 0, bprime_n = 0;
    double secs = 0.0, bprime = 0.0;
  };
  std::map<Key, Acc> cells;
  for (const auto& r : records) {
    auto& a = cells[Key(r.nodes, r.ratio, r.ext_size, r.method)];
    ++a.n;
    a.secs += std::chrono::duration<double>(r.elapsed).count();
    if (r.timed_out) ++a.timeouts;
    if (r.max_bprime) {
      ++a.bprime_n;
      a.bprime += static_cast<double>(*r.max_bprime);
    }
  }
  std::vector<BenchSummary> out;
  for (const auto& [k, a] : cells) {
    BenchSummary s;
    std::tie(s.nodes, s.ratio, s.ext_size, s.method) = k;
    s.trials = a.n;
    s.mean_secs = a.secs / static_cast<double>(a.n);
    s.timeouts = a.timeouts;
    if (a.bprime_n) s.mean_max_bprime = a.bprime / static_cast<double>(a.bprime_n);
    out.push_back(s);
  }
  return out;
}

inline constexpr std::string_view kCsvHeader =
    "nodes,ratio,ext_size,trial,seed,method,time_ms,timed_out,probability,max_bprime,avg_bprime_qualifying,"
    "avg_bprime_enumerated";

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  char ms[64];
  for (const auto& r : records) {
    std::snprintf(ms, sizeof ms, "%.3f", std::chrono::duration<double, std::milli>(r.elapsed).count());
    out << r.nodes << ',' << r.ratio.to_string() << ',' << r.ext_size << ',' << r.trial_index << ','
        << r.trial_seed << ',' << to_string(r.method) << ',' << ms << ',' << (r.timed_out ? 1 : 0) << ',';
    if (r.probability) out << format_probability(*r.probability, 17);
    out << ',';
    if (r.max_bprime) out << *r.max_bprime;
    out << ',';
    if (r.avg_bprime_qualifying) out << shortest_decimal(*r.avg_bprime_qualifying);
    out << ',';
    if (r.avg_bprime_enumerated) out << shortest_decimal(*r.avg_bprime_enumerated);
    out << '\n';
  }
}

inline void write_summary(std::ostream& out, const std::vector<BenchSummary>& rows) {
  out << "nodes,ratio,ext_size,method,trials,mean_secs,timeouts,mean_max_bprime\n";
  char secs[64];
  for (const auto& s : rows) {
    std::snprintf(secs, sizeof secs, "%.6f", s.mean_secs);
    out << s.nodes << ',' << s.ratio.to_string() << ',' << s.ext_size << ',' << to_string(s.method) << ','
        << s.trials << ',' << secs << ',' << s.timeouts << ',';
    if (s.mean_max_bprime) out << shortest_decimal(*s.mean_max_bprime);
    out << '\n';
  }
}

}  // namespace prarg

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prarg/prarg.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitTimeout = 3;

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string part(text.substr(start, comma - start));
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    if (!part.empty()) out.push_back(part);
    start = comma + 1;
  }
  return out;
}

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw prarg::PreconditionError("malformed integer '" + std::string(s) + "'");
  return v;
}

// "10..25" or "10,12,14".
std::vector<std::size_t> parse_counts(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& part : split_commas(text)) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_count(part));
      continue;
    }
    std::size_t lo = parse_count(std::string_view(part).substr(0, dots));
    std::size_t hi = parse_count(std::string_view(part).substr(dots + 2));
    if (lo > hi) throw prarg::PreconditionError("empty range '" + part + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw prarg::PreconditionError("empty list");
  return out;
}

prarg::Semantics semantics_flag(std::string_view text) {
  auto s = prarg::parse_semantics(text);
  if (!s) throw prarg::PreconditionError("unknown semantics '" + std::string(text) + "'");
  return *s;
}

struct ProbArgs {
  std::string graph;
  std::string set;
  std::string semantics;
  std::string method;
  std::optional<double> timeout_secs;
};

int cmd_prob(const ProbArgs& a) {
  std::optional<prarg::GraphDocument> doc;
  prarg::ArgSet e;
  prarg::Semantics s{};
  try {
    doc = prarg::load_graph(a.graph);
    e = doc->graph().make_set_from(split_commas(a.set));
    s = semantics_flag(a.semantics);
  } catch (const prarg::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  }
  try {
    std::optional<std::chrono::duration<double>> budget;
    if (a.timeout_secs) budget = std::chrono::duration<double>(*a.timeout_secs);
    prarg::Deadline deadline(budget);
    prarg::Probability p = a.method == "pw" ? prarg::pw_probability(doc->prag, e, s, deadline)
                                            : prarg::csub_probability(doc->prag, e, s, deadline);
    std::cout << prarg::format_probability(p) << '\n';
    return 0;
  } catch (const prarg::TimeoutError&) {
    std::cout << "timeout\n";
    return kExitTimeout;
  } catch (const prarg::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  }
}

int cmd_extensions(const std::string& path, const std::string& semantics) {
  try {
    auto doc = prarg::load_graph(path);
    auto s = semantics_flag(semantics);
    std::vector<std::string> lines;
    for (const auto& ext : prarg::enumerate_extensions(doc.graph(), s))
      lines.push_back(prarg::format_set(doc.graph(), ext));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) std::cout << l << '\n';
    return 0;
  } catch (const prarg::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  }
}

struct BenchArgs {
  std::string nodes = "10";
  std::string ratios = "2:1";
  std::string ext_sizes = "3";
  std::size_t trials = 20;
  double timeout_secs = 180;
  std::uint64_t seed = 0;
  std::string methods = "pw,csub";
  std::string semantics = "pr";
  std::string out;
  std::size_t jobs = 1;
};

int cmd_bench(const BenchArgs& a) {
  prarg::BenchConfig cfg;
  try {
    cfg.node_counts = parse_counts(a.nodes);
    cfg.edge_ratios.clear();
    for (const auto& r : split_commas(a.ratios)) cfg.edge_ratios.push_back(prarg::parse_ratio(r));
    cfg.ext_sizes = parse_counts(a.ext_sizes);
    cfg.trials_per_cell = a.trials;
    cfg.timeout = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double>(a.timeout_secs));
    cfg.seed = a.seed;
    cfg.methods.clear();
    for (const auto& m : split_commas(a.methods)) cfg.methods.push_back(prarg::parse_method(m));
    cfg.semantics = semantics_flag(a.semantics);
    cfg.jobs = a.jobs;
    cfg.validate();
  } catch (const prarg::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  }
  std::ofstream out(a.out);
  if (!out) {
    std::cerr << "error: cannot write '" << a.out << "'\n";
    return kExitInput;
  }
  auto records = prarg::run_benchmark(cfg);
  prarg::write_csv(out, records);
  prarg::write_summary(std::cout, prarg::summarize(records));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic argumentation: extension probabilities and benchmarks"};
  app.require_subcommand(1);

  ProbArgs prob;
  auto* p = app.add_subcommand("prob", "Probability that a set is a sigma-extension");
  p->add_option("--graph", prob.graph, "Graph file")->required();
  p->add_option("--set", prob.set, "Comma-separated argument ids")->required();
  p->add_option("--semantics", prob.semantics, "ad|co|pr|gr|st")->required();
  p->add_option("--method", prob.method, "pw|csub")->required()->check(CLI::IsMember({"pw", "csub"}));
  p->add_option("--timeout-secs", prob.timeout_secs, "Give up after this many seconds")
      ->check(CLI::PositiveNumber);

  std::string ext_graph, ext_semantics;
  auto* x = app.add_subcommand("extensions", "List the extensions of the classical graph");
  x->add_option("--graph", ext_graph, "Graph file")->required();
  x->add_option("--semantics", ext_semantics, "ad|co|pr|gr|st")->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time PW against C-Sub on random instances");
  b->add_option("--nodes", bench.nodes, "Node counts: 10..25 or 10,12")->capture_default_str();
  b->add_option("--ratio", bench.ratios, "Edge ratios: 2:1,3:1")->capture_default_str();
  b->add_option("--ext-size", bench.ext_sizes, "Query set sizes: 3,5")->capture_default_str();
  b->add_option("--trials", bench.trials, "Trials per cell")->capture_default_str()->check(CLI::PositiveNumber);
  b->add_option("--timeout-secs", bench.timeout_secs, "Per-call timeout")->capture_default_str()
      ->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  b->add_option("--methods", bench.methods, "pw,csub")->capture_default_str();
  b->add_option("--semantics", bench.semantics, "ad|co|pr|gr|st")->capture_default_str();
  b->add_option("--out", bench.out, "CSV output file")->required();
  b->add_option("--jobs", bench.jobs, "Parallel workers")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (p->parsed()) return cmd_prob(prob);
  if (x->parsed()) return cmd_extensions(ext_graph, ext_semantics);
  return cmd_bench(bench);
}

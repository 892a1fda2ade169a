#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace prarg;

namespace {

std::set<std::string> family(const ArgumentGraph& g, Semantics s) {
  std::set<std::string> out;
  for (const auto& e : enumerate_extensions(g, s)) {
    std::string letters;
    for (const auto& n : g.names_of(e)) letters += n;
    out.insert(letters);
  }
  return out;
}

std::vector<std::uint64_t> oracle_family(const fixtures::Oracle& o, Semantics s) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m <= o.full(); ++m)
    if (o.extension(m, o.full(), s)) out.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("semantics names round-trip") {
  for (auto s : kAllSemantics) CHECK(parse_semantics(to_string(s)) == s);
  CHECK_FALSE(parse_semantics("xx").has_value());
}

TEST_CASE("classical extensions of the example graph") {
  auto g = fixtures::g1();
  CHECK(family(g, Semantics::Admissible) == std::set<std::string>{"", "a", "b", "ac"});
  // {a} defends only itself (d's attack on c goes unanswered), so it is complete too.
  CHECK(family(g, Semantics::Complete) == std::set<std::string>{"", "a", "b", "ac"});
  CHECK(family(g, Semantics::Preferred) == std::set<std::string>{"b", "ac"});
  CHECK(family(g, Semantics::Stable) == std::set<std::string>{"ac"});
  CHECK(family(g, Semantics::Grounded) == std::set<std::string>{""});
  CHECK(grounded_extension(g).none());
}

TEST_CASE("the empty graph has only the empty extension") {
  ArgumentGraph g;
  for (auto s : kAllSemantics) {
    auto f = enumerate_extensions(g, s);
    REQUIRE(f.size() == 1);
    CHECK(f[0].none());
    CHECK(is_extension(g, g.empty_set(), s));
  }
}

TEST_CASE("preferred extensions listed for each subgraph of the example") {
  // Expected preferred extensions per row of the subgraph table.
  const std::vector<std::set<std::string>> expected = {
      {"b", "ac"}, {"b", "ac"}, {"a", "b"}, {"a", "b"}, {"ac"}, {"ac"}, {"a"}, {"a"},
      {"b"},       {"b"},       {"b"},      {"b"},      {"c"},  {"c"},  {""},  {""}};
  auto g = fixtures::g1();
  auto rows = fixtures::table_rows();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto sub = induced_subgraph(g, fixtures::set_of(g, rows[k]));
    INFO("row " << k + 1);
    CHECK(family(sub, Semantics::Preferred) == expected[k]);
  }
}

TEST_CASE("enumeration and membership agree with the definitional oracle") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = rng() % 9;
    auto pg = fixtures::random_graph(rng, n, 0.1 + 0.3 * (round % 3));
    const auto& g = pg.graph();
    fixtures::Oracle o(g);
    for (auto s : kAllSemantics) {
      auto expect = oracle_family(o, s);
      std::vector<std::uint64_t> got;
      for (const auto& e : enumerate_extensions(g, s)) got.push_back(e.low_word());
      std::sort(got.begin(), got.end());
      INFO("n=" << n << " semantics=" << to_string(s));
      CHECK(got == expect);
      for (std::uint64_t m = 0; m <= o.full(); ++m)
        CHECK(is_extension(g, ArgSet::from_mask(n, m), s) == o.extension(m, o.full(), s));
    }
  }
}

TEST_CASE("structural relations between semantics") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 100; ++round) {
    auto pg = fixtures::random_graph(rng, 1 + rng() % 8, 0.25);
    const auto& g = pg.graph();
    auto ad = enumerate_extensions(g, Semantics::Admissible);
    auto co = enumerate_extensions(g, Semantics::Complete);
    auto pr = enumerate_extensions(g, Semantics::Preferred);
    auto st = enumerate_extensions(g, Semantics::Stable);
    auto gr = enumerate_extensions(g, Semantics::Grounded);
    auto contains = [](const std::vector<ArgSet>& v, const ArgSet& x) {
      return std::find(v.begin(), v.end(), x) != v.end();
    };
    REQUIRE(gr.size() == 1);
    CHECK(gr[0] == grounded_extension(g));
    CHECK(contains(co, gr[0]));
    CHECK_FALSE(pr.empty());
    for (const auto& e : st) CHECK(contains(pr, e));
    for (const auto& e : pr) CHECK(contains(co, e));
    for (const auto& e : co) {
      CHECK(contains(ad, e));
      CHECK(gr[0].subset_of(e));
    }
    CHECK(has_nonempty_admissible(g) == (ad.size() > 1));
  }
}

TEST_CASE("enumeration refuses oversized graphs") {
  std::vector<std::string> ids;
  for (int i = 0; i < 26; ++i) ids.push_back("x" + std::to_string(i));
  ArgumentGraph g(ids, {});
  CHECK_THROWS_AS(enumerate_extensions(g, Semantics::Admissible), GraphTooLargeError);
}

TEST_CASE("semantics checks work past one machine word") {
  std::vector<std::string> ids;
  std::vector<Attack> att;
  for (int i = 0; i < 100; ++i) ids.push_back("x" + std::to_string(1000 + i));
  for (int i = 0; i + 1 < 100; ++i) att.push_back({ids[i], ids[i + 1]});
  ArgumentGraph g(ids, att);
  ArgSet even = g.empty_set();
  for (int i = 0; i < 100; i += 2) even.set(g.index_of(ids[i]));
  CHECK(grounded_extension(g) == even);
  CHECK(is_extension(g, even, Semantics::Stable));
  CHECK(is_extension(g, even, Semantics::Preferred));
  CHECK(is_extension(g, even, Semantics::Grounded));
  CHECK_FALSE(is_extension(g, g.empty_set(), Semantics::Complete));
}

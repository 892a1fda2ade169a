#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace prarg;
using Catch::Matchers::WithinAbs;

TEST_CASE("characterized preferred probabilities of the example") {
  auto pg = fixtures::g1p();
  const auto& g = pg.graph();
  CHECK_THAT(p_preferred(pg, g.empty_set()), WithinAbs(0.06, 1e-9));
  CHECK_THAT(p_preferred(pg, g.make_set({"a"})), WithinAbs(0.3, 1e-9));
  CHECK_THAT(p_preferred(pg, g.make_set({"b"})), WithinAbs(0.8, 1e-9));
  CHECK_THAT(p_preferred(pg, g.make_set({"c"})), WithinAbs(0.04, 1e-9));
  CHECK_THAT(p_preferred(pg, g.make_set({"a", "c"})), WithinAbs(0.2, 1e-9));
}

TEST_CASE("closed forms on the example for the set {a}") {
  auto pg = fixtures::g1p();
  auto a = pg.graph().make_set({"a"});
  // Admissible: a present, nothing else constrained.
  CHECK_THAT(p_admissible(pg, a), WithinAbs(0.5, 1e-12));
  // Stable: a present, c and d absent.
  CHECK_THAT(p_stable(pg, a), WithinAbs(0.5 * 0.6 * 0.5, 1e-12));
  CHECK_THAT(p_complete(pg, a), WithinAbs(0.40, 1e-12));
  CHECK_THAT(p_grounded(pg, a), WithinAbs(0.08, 1e-12));
}

TEST_CASE("non-conflict-free sets have probability zero") {
  auto pg = fixtures::g1p();
  const auto& g = pg.graph();
  for (auto s : kAllSemantics) {
    CHECK(csub_probability(pg, g.make_set({"a", "b"}), s) == 0.0);
    CHECK(csub_probability(pg, g.make_set({"d"}), s) == 0.0);
    CHECK(rho(pg, g.make_set({"a", "b"}), s).empty());
  }
}

TEST_CASE("subgraph classification for {a}") {
  // Columns in order ad, co, st, pr, gr; rows in subgraph table order.
  const char* yes[] = {"YYNNN", "YNNNN", "YYNYN", "YYYYN", "YYNNY", "YNNNN", "YYNYY", "YYYYY",
                       "NNNNN", "NNNNN", "NNNNN", "NNNNN", "NNNNN", "NNNNN", "NNNNN", "NNNNN"};
  const Semantics cols[] = {Semantics::Admissible, Semantics::Complete, Semantics::Stable, Semantics::Preferred,
                            Semantics::Grounded};
  auto pg = fixtures::g1p();
  const auto& g = pg.graph();
  auto rows = fixtures::table_rows();
  for (std::size_t c = 0; c < 5; ++c) {
    auto fam = rho(pg, g.make_set({"a"}), cols[c]);
    for (std::size_t k = 0; k < 16; ++k) {
      bool listed = std::find(fam.begin(), fam.end(), fixtures::set_of(g, rows[k])) != fam.end();
      INFO("row " << k + 1 << " semantics " << to_string(cols[c]));
      CHECK(listed == (yes[k][c] == 'Y'));
    }
  }
}

TEST_CASE("characterized and possible-worlds probabilities agree") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 10;
    auto pg = fixtures::random_graph(rng, n, 0.08 + 0.12 * (round % 3));
    fixtures::Oracle o(pg.graph());
    auto e = ArgSet::from_mask(n, fixtures::random_conflict_free(rng, o, 3));
    for (auto s : kAllSemantics) {
      INFO("n=" << n << " e=" << e.low_word() << " semantics=" << to_string(s));
      CHECK_THAT(csub_probability(pg, e, s), WithinAbs(pw_probability(pg, e, s), 1e-9));
      auto fam = rho(pg, e, s);
      std::sort(fam.begin(), fam.end());
      auto expect = pw_family(pg, e, s);
      std::sort(expect.begin(), expect.end());
      CHECK(fam == expect);
    }
  }
}

TEST_CASE("probabilities respect the semantics hierarchy") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 10;
    auto pg = fixtures::random_graph(rng, n, 0.2);
    fixtures::Oracle o(pg.graph());
    auto e = ArgSet::from_mask(n, fixtures::random_conflict_free(rng, o, 3));
    const double ad = p_admissible(pg, e), co = p_complete(pg, e), pr = p_preferred(pg, e);
    const double st = p_stable(pg, e), gr = p_grounded(pg, e);
    CHECK(st <= pr + 1e-12);
    CHECK(pr <= co + 1e-12);
    CHECK(gr <= co + 1e-12);
    CHECK(co <= ad + 1e-12);
    CHECK(ad <= 1.0);
  }
}

TEST_CASE("candidate counter covers every subset of the remaining set") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 12;
    auto shape = fixtures::random_graph(rng, n, 0.05 + 0.1 * (round % 3));
    std::uniform_real_distribution<double> inner(0.05, 0.95);
    std::vector<double> probs(n);
    for (auto& p : probs) p = inner(rng);
    PrAG pg(shape.graph(), probs);
    fixtures::Oracle o(pg.graph());
    auto e = ArgSet::from_mask(n, fixtures::random_conflict_free(rng, o, 3));
    auto d = decompose(pg.graph(), e);
    const std::size_t remaining = d.remaining.count();
    CsubStats stats;
    p_preferred(pg, e, {}, &stats);
    CHECK(stats.remaining_size == remaining);
    CHECK(stats.candidates == (std::uint64_t{1} << remaining));
    CHECK(stats.max_bprime <= remaining);
    CHECK(stats.qualifying >= 1);
    CHECK(stats.avg_bprime_qualifying() <= stats.max_bprime);
  }
}

TEST_CASE("closed forms on a long chain") {
  std::vector<std::string> ids;
  for (int i = 0; i < 200; ++i) ids.push_back("n" + std::to_string(i));
  std::vector<Attack> att;
  for (int i = 0; i + 1 < 200; ++i) att.push_back({ids[i], ids[i + 1]});
  PrAG pg(ArgumentGraph(ids, att), std::vector<double>(200, 0.5));
  auto e = pg.graph().make_set({"n0", "n2"});
  // n0 and n2 present; n1 and n3 are attacked; no attackers outside E.
  CHECK_THAT(p_admissible(pg, e), WithinAbs(0.25, 1e-12));
  CHECK_THAT(p_stable(pg, e), Catch::Matchers::WithinRel(0.25 * std::pow(0.5, 196), 1e-9));
}

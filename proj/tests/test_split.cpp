#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "common.hpp"
#include "generators.hpp"
#include "lpsplit/parser.hpp"
#include "lpsplit/split.hpp"
#include "oracles.hpp"

using namespace lpsplit;

namespace {

SearchState state_of(const SuperDepGraph& sg, const AtomSet& atoms) {
  SearchState s;
  s.scc_ids = lpsplit::detail::Bitset(sg.sccs.size());
  for (AtomId a : atoms) s.scc_ids.set(sg.scc_index[a]);
  s.atom_count = static_cast<std::uint32_t>(atoms.size());
  return s;
}

}  // namespace

TEST_CASE("splitting set predicate") {
  Program p = parse_program(common::kExample1);
  CHECK(is_splitting_set(p, common::atoms(p, {"a", "b", "e", "h"})));
  CHECK_FALSE(is_splitting_set(p, common::atoms(p, {"a", "b"})));
  CHECK(is_splitting_set(p, {}));
  CHECK_FALSE(is_splitting_set(p, common::atoms(p, {"c", "d", "g"})));

  AtomId bogus = p.symbols.intern("zz");
  CHECK_THROWS_AS(is_splitting_set(p, AtomSet{bogus}), std::invalid_argument);
}

TEST_CASE("g-splitting set predicate") {
  Program p = parse_program(common::kExample3);
  CHECK(is_g_splitting_set(p, common::atoms(p, {"a", "b"})));
  CHECK_FALSE(is_g_splitting_set(p, common::atoms(p, {"a"})));
  CHECK_FALSE(is_splitting_set(p, common::atoms(p, {"a", "b"})));

  SECTION("every splitting set is a g-splitting set") {
    std::mt19937_64 rng(424242);
    generators::Options opt;
    opt.allow_empty_head = true;
    for (int i = 0; i < 80; ++i) {
      Program q = generators::random_program(rng, opt);
      for (const AtomSet& u : oracles::all_nontrivial_splitting_sets(q))
        REQUIRE(is_g_splitting_set(q, u));
    }
  }
}

TEST_CASE("bottom keeps exactly the rules inside u") {
  Program p = parse_program(common::kExample1);
  std::vector<std::size_t> kept;
  Program bot = bottom(p, common::atoms(p, {"a", "b", "e", "h"}), &kept);
  CHECK(kept == std::vector<std::size_t>{1, 2, 6, 7, 8});
  CHECK(bot.rules.size() == 5);

  CHECK(bottom(p, {}).rules.empty());

  Program q = parse_program(common::kExample3);
  kept.clear();
  bottom(q, common::atoms(q, {"a", "b"}), &kept);
  CHECK(kept == std::vector<std::size_t>{1, 2});
}

TEST_CASE("successor follows the lowest violated rule") {
  Program p = parse_program(common::kExample1);
  SuperDepGraph sg = build_super_graph(build_dep_graph(p));

  auto step = successor(p, sg, state_of(sg, common::atoms(p, {"c", "d"})));
  REQUIRE(step);
  CHECK(step->rule_index == 4);
  CHECK(step->action_cost == 1);
  CHECK(atoms_of_scc_bits(sg, step->state.scc_ids) ==
        common::atoms(p, {"c", "d", "g"}));

  step = successor(p, sg, state_of(sg, common::atoms(p, {"a", "b"})));
  REQUIRE(step);
  CHECK(step->rule_index == 2);
  CHECK(step->action_cost == 2);
  CHECK(step->state.atom_count == 4);  // path cost 4
  CHECK(atoms_of_scc_bits(sg, step->state.scc_ids) ==
        common::atoms(p, {"a", "b", "e", "h"}));

  step = successor(p, sg, state_of(sg, common::atoms(p, {"c", "d", "g"})));
  REQUIRE(step);
  CHECK(step->rule_index == 5);
  CHECK(step->state.atom_count == 6);  // path cost 6
  CHECK(atoms_of_scc_bits(sg, step->state.scc_ids) ==
        common::atoms(p, {"a", "b", "c", "d", "f", "g"}));

  // a splitting set is a goal: no successor
  CHECK_FALSE(successor(p, sg, state_of(sg, common::atoms(p, {"a", "b", "e", "h"}))));
}

TEST_CASE("minimum splitting set search on the running example") {
  Program p = parse_program(common::kExample1);
  SuperDepGraph sg = build_super_graph(build_dep_graph(p));
  SplitSearchResult result = find_min_splitting_set(p, sg);

  REQUIRE(result.splitting_set);
  CHECK(*result.splitting_set == common::atoms(p, {"a", "b", "e", "h"}));
  CHECK(result.splitting_set->size() == 4);

  REQUIRE(result.trace.size() == 5);
  const auto& t = result.trace;
  CHECK(t[0].atoms.empty());
  REQUIRE(t[0].children.size() == 2);
  CHECK(t[0].children[0].atoms == common::atoms(p, {"c", "d"}));
  CHECK(t[0].children[1].atoms == common::atoms(p, {"a", "b"}));
  CHECK(t[1].atoms == common::atoms(p, {"c", "d"}));
  CHECK(t[1].via_rule == 4);
  CHECK(t[2].atoms == common::atoms(p, {"a", "b"}));
  CHECK(t[2].via_rule == 2);
  CHECK(t[3].atoms == common::atoms(p, {"c", "d", "g"}));
  CHECK(t[3].via_rule == 5);
  CHECK(t[3].children[0].cost == 6);
  CHECK(t[4].atoms == common::atoms(p, {"a", "b", "e", "h"}));
  CHECK(t[4].outcome == ExpandOutcome::kGoal);

  CHECK(format_trace(result, p.symbols) ==
        "expand {} cost=0 -> {c, d} cost=2, {a, b} cost=2\n"
        "expand {c, d} cost=2 via rule 4 -> {c, d, g} cost=3\n"
        "expand {a, b} cost=2 via rule 2 -> {a, b, e, h} cost=4\n"
        "expand {c, d, g} cost=3 via rule 5 -> {a, b, c, d, f, g} cost=6\n"
        "expand {a, b, e, h} cost=4 goal\n");
}

TEST_CASE("minimum splitting set corner cases") {
  SECTION("single fact") {
    Program p = parse_program("a.");
    CHECK(min_splitting_set(p) == common::atoms(p, {"a"}));
  }

  SECTION("only trivial splitting sets means Lett(P) is the answer") {
    Program p = parse_program(common::kExample3);
    CHECK(min_splitting_set(p) == common::atoms(p, {"a", "b", "c", "d"}));
  }

  SECTION("empty program has none") {
    CHECK_FALSE(min_splitting_set(Program{}));
  }
}

TEST_CASE("search goals") {
  Program p = parse_program(common::kExample1);
  SuperDepGraph sg = build_super_graph(build_dep_graph(p));

  SECTION("must contain g") {
    auto result =
        find_min_splitting_set(p, sg, SplitGoal::must_contain(common::atoms(p, {"g"})));
    REQUIRE(result.splitting_set);
    // tree(g) = {c,d,g} closes through rules 5 and 2 to all eight atoms
    CHECK(*result.splitting_set ==
          common::atoms(p, {"a", "b", "c", "d", "e", "f", "g", "h"}));
    CHECK(result.trace[0].children.size() == 1);
    CHECK(result.trace[0].children[0].atoms == common::atoms(p, {"c", "d", "g"}));
  }

  SECTION("must contain e stops at tree(e)") {
    auto result =
        find_min_splitting_set(p, sg, SplitGoal::must_contain(common::atoms(p, {"e"})));
    REQUIRE(result.splitting_set);
    CHECK(*result.splitting_set == common::atoms(p, {"a", "b", "e", "h"}));
  }

  SECTION("bottom-is-hcf accepts the running example's minimum") {
    auto result = find_min_splitting_set(p, sg, SplitGoal::bottom_is_hcf());
    REQUIRE(result.splitting_set);
    CHECK(*result.splitting_set == common::atoms(p, {"a", "b", "e", "h"}));
  }

  SECTION("bottom-is-hcf rejects a head-cycle bottom and moves on") {
    Program q = parse_program(
        "a | b. a :- b. b :- a. c :- d. d :- c. c :- e. e :- c.");
    SuperDepGraph qg = build_super_graph(build_dep_graph(q));
    auto result = find_min_splitting_set(q, qg, SplitGoal::bottom_is_hcf());
    REQUIRE(result.splitting_set);
    CHECK(*result.splitting_set == common::atoms(q, {"c", "d", "e"}));
    bool saw_rejection = false;
    for (const Expansion& ex : result.trace)
      if (ex.outcome == ExpandOutcome::kRejected) {
        saw_rejection = true;
        CHECK(ex.atoms == common::atoms(q, {"a", "b"}));
      }
    CHECK(saw_rejection);
  }

  SECTION("custom predicate can fail everywhere") {
    auto result = find_min_splitting_set(
        p, sg, SplitGoal::custom([](const Program&, const AtomSet&) { return false; }));
    CHECK_FALSE(result.splitting_set);
  }
}

TEST_CASE("minimum g-splitting set") {
  Program p3 = parse_program(common::kExample3);
  SuperDepGraph sg3 = build_super_graph(build_dep_graph(p3));
  CHECK(min_g_splitting_set(p3, sg3) == common::atoms(p3, {"a", "b"}));

  Program p1 = parse_program(common::kExample1);
  SuperDepGraph sg1 = build_super_graph(build_dep_graph(p1));
  auto got = min_g_splitting_set(p1, sg1);
  REQUIRE(got);
  CHECK(got->size() == 2);
  CHECK(*got == common::atoms(p1, {"c", "d"}));  // deterministic tie-break

  Program fact = parse_program("a.");
  SuperDepGraph sgf = build_super_graph(build_dep_graph(fact));
  CHECK(min_g_splitting_set(fact, sgf) == common::atoms(fact, {"a"}));

  SuperDepGraph empty = build_super_graph(build_dep_graph(Program{}));
  CHECK_FALSE(min_g_splitting_set(Program{}, empty));
}

TEST_CASE("search optimality and closure structure on random programs") {
  std::mt19937_64 rng(90210);
  generators::Options opt;
  opt.allow_empty_head = true;
  for (int i = 0; i < 150; ++i) {
    Program p = generators::random_program(rng, opt);
    SuperDepGraph sg = build_super_graph(build_dep_graph(p));
    SplitSearchResult result = find_min_splitting_set(p, sg);
    REQUIRE(result.splitting_set);
    const AtomSet& u = *result.splitting_set;

    CHECK(is_splitting_set(p, u));
    CHECK(u.size() == oracles::min_splitting_size(p).value());

    // scc-closure: each atom brings its whole SCC; the set is a union of trees
    for (AtomId q : u) REQUIRE(subset_of(scc_of(sg, q), u));
    CHECK(tree_of(sg, u) == u);

    // g-splitting minimum agrees with its brute-force oracle
    auto g = min_g_splitting_set(p, sg);
    REQUIRE(g);
    CHECK(is_g_splitting_set(p, *g));
    CHECK(g->size() == oracles::min_gsplitting_size(p).value());
    CHECK(tree_of(sg, *g) == *g);

    // monotone growth along the trace, rules fire once per path, and the
    // expansion count stays within the safe global bound
    std::size_t expansions = result.trace.size();
    REQUIRE(expansions <= 1 + sg.source_ids.size() * (1 + p.rules.size()));
    std::map<AtomSet, std::pair<AtomSet, std::size_t>> parent;  // child -> (parent, rule)
    for (const Expansion& ex : result.trace) {
      for (const auto& child : ex.children) {
        REQUIRE(ex.atoms.size() < child.atoms.size());
        REQUIRE(subset_of(ex.atoms, child.atoms));
        if (!child.duplicate) parent[child.atoms] = {ex.atoms, ex.via_rule};
      }
    }
    for (const auto& [child, link] : parent) {
      std::set<std::size_t> rules_on_path;
      AtomSet cur = child;
      while (parent.count(cur)) {
        std::size_t rule = parent[cur].second;
        if (rule != 0) REQUIRE(rules_on_path.insert(rule).second);
        cur = parent[cur].first;
      }
    }
  }
}

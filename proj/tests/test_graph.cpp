#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <utility>

#include "common.hpp"
#include "generators.hpp"
#include "lpsplit/graph.hpp"
#include "lpsplit/parser.hpp"
#include "oracles.hpp"

using namespace lpsplit;

namespace {

std::set<std::pair<std::string, std::string>> arc_names(const DepGraph& g,
                                                        const SymbolTable& sym) {
  std::set<std::pair<std::string, std::string>> arcs;
  for (AtomId a : g.nodes)
    for (AtomId b : g.out[a]) arcs.insert({sym.name(a), sym.name(b)});
  return arcs;
}

}  // namespace

TEST_CASE("dependency graph arcs follow body -> head") {
  SECTION("running example") {
    Program p = parse_program(common::kExample1);
    DepGraph g = build_dep_graph(p);
    CHECK(g.nodes.size() == 8);
    std::set<std::pair<std::string, std::string>> expected = {
        {"b", "a"}, {"a", "e"}, {"a", "b"}, {"b", "f"}, {"c", "g"}, {"c", "d"},
        {"d", "c"}, {"d", "f"}, {"e", "h"}, {"h", "e"}, {"a", "h"}};
    CHECK(arc_names(g, p.symbols) == expected);
  }

  SECTION("fact-only program has no arcs") {
    Program p = parse_program("a.");
    DepGraph g = build_dep_graph(p);
    CHECK(g.nodes == common::atoms(p, {"a"}));
    CHECK(g.out[0].empty());
  }

  SECTION("self loop") {
    Program p = parse_program("a :- a.");
    DepGraph g = build_dep_graph(p);
    CHECK(g.out[0] == common::atoms(p, {"a"}));
  }
}

TEST_CASE("super-dependency graph of the running example") {
  Program p = parse_program(common::kExample1);
  SuperDepGraph sg = build_super_graph(build_dep_graph(p));

  std::vector<AtomSet> comps = sg.sccs;
  std::sort(comps.begin(), comps.end());
  std::vector<AtomSet> expected = {
      common::atoms(p, {"a", "b"}), common::atoms(p, {"c", "d"}),
      common::atoms(p, {"e", "h"}), common::atoms(p, {"f"}),
      common::atoms(p, {"g"})};
  std::sort(expected.begin(), expected.end());
  CHECK(comps == expected);

  // deterministic source order: {c, d} before {a, b}
  std::vector<AtomSet> src = sources(sg);
  REQUIRE(src.size() == 2);
  CHECK(src[0] == common::atoms(p, {"c", "d"}));
  CHECK(src[1] == common::atoms(p, {"a", "b"}));
}

TEST_CASE("super graph basics") {
  SECTION("acyclic program gives singleton SCCs") {
    Program p = parse_program("a :- b. b :- c.");
    SuperDepGraph sg = build_super_graph(build_dep_graph(p));
    CHECK(sg.sccs.size() == 3);
    std::vector<AtomSet> src = sources(sg);
    REQUIRE(src.size() == 1);
    CHECK(src[0] == common::atoms(p, {"c"}));
  }

  SECTION("two-cycle makes one SCC") {
    Program p = parse_program("a :- b. b :- a.");
    SuperDepGraph sg = build_super_graph(build_dep_graph(p));
    REQUIRE(sg.sccs.size() == 1);
    CHECK(sg.sccs[0] == common::atoms(p, {"a", "b"}));
  }

  SECTION("empty program has no sources") {
    SuperDepGraph sg = build_super_graph(build_dep_graph(Program{}));
    CHECK(sources(sg).empty());
  }
}

TEST_CASE("scc_of and tree_of queries") {
  Program p = parse_program(common::kExample1);
  SuperDepGraph sg = build_super_graph(build_dep_graph(p));
  auto id = [&](const char* n) { return *p.symbols.find(n); };

  CHECK(scc_of(sg, id("e")) == common::atoms(p, {"e", "h"}));
  CHECK(scc_of(sg, id("g")) == common::atoms(p, {"g"}));

  CHECK(tree_of(sg, id("e")) == common::atoms(p, {"a", "b", "e", "h"}));
  CHECK(tree_of(sg, common::atoms(p, {"f", "g"})) ==
        common::atoms(p, {"a", "b", "c", "d", "f", "g"}));
  CHECK(tree_of(sg, atoms_of_rule(p.rules[4])) ==
        common::atoms(p, {"a", "b", "c", "d", "f"}));

  SECTION("unknown atoms are rejected") {
    Program q = parse_program("a :- b.");
    AtomId unused = q.symbols.intern("z");
    SuperDepGraph qg = build_super_graph(build_dep_graph(q));
    CHECK_THROWS_AS(scc_of(qg, unused), std::invalid_argument);
    CHECK_THROWS_AS(tree_of(qg, unused), std::invalid_argument);
  }
}

TEST_CASE("head-cycle-free test") {
  Program p1 = parse_program(common::kExample1);
  CHECK(is_hcf(p1));

  Program p2 = parse_program("a | b. a :- b. b :- a.");
  CHECK_FALSE(is_hcf(p2));

  Program p3 = parse_program("a :- b. b :- c. c.");
  CHECK(is_hcf(p3));
}

TEST_CASE("condensation properties on random programs") {
  std::mt19937_64 rng(777001);
  generators::Options opt;
  opt.allow_empty_head = true;
  for (int i = 0; i < 120; ++i) {
    Program p = generators::random_program(rng, opt);
    SuperDepGraph sg = build_super_graph(build_dep_graph(p));

    // topological numbering: every DAG arc goes from lower to higher id
    for (SccId c = 0; c < sg.sccs.size(); ++c)
      for (SccId d : sg.dag_out[c]) REQUIRE(c < d);

    // brute-force SCC oracle agreement
    std::vector<AtomSet> got = sg.sccs;
    std::sort(got.begin(), got.end());
    CHECK(got == oracles::sccs(p));

    for (AtomId v : lett(p)) {
      AtomSet tree = tree_of(sg, v);
      CHECK(subset_of(scc_of(sg, v), tree));
      CHECK(tree_of(sg, tree) == tree);  // idempotent closure
    }
  }
}

TEST_CASE("DOT export") {
  Program p = parse_program("a :- b.");
  std::string dep = to_dot(build_dep_graph(p), p.symbols);
  CHECK(dep.find("\"b\" -> \"a\";") != std::string::npos);

  SuperDepGraph sg = build_super_graph(build_dep_graph(p));
  std::string super = to_dot(sg, p.symbols);
  CHECK(super.find("label=\"{b}\"") != std::string::npos);
  CHECK(super.find("->") != std::string::npos);

  CHECK(to_dot(build_dep_graph(Program{}), SymbolTable{}) ==
        "digraph dependencies {\n  rankdir=LR;\n}\n");
}

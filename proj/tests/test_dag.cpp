#include <random>

#include "doctest.h"
#include "interdag/dag.hpp"
#include "test_support.hpp"

using namespace interdag;
using testsupport::brute_force_d_separated;
using testsupport::fig1;
using testsupport::fig2;
using testsupport::random_dag;

TEST_CASE("build_dag validates structure") {
  Dag dag = fig1();
  CHECK(dag.node_count() == 3);
  CHECK(dag.edge_count() == 3);
  CHECK(dag.has_edge("C", "A"));
  CHECK_FALSE(dag.has_edge("A", "C"));

  // single node, no edges
  Dag lone = build_dag({{"A", NodeKind::Observed}}, {});
  CHECK(lone.node_count() == 1);

  CHECK_THROWS_WITH_AS(build_dag({{"A", NodeKind::Observed}, {"Y", NodeKind::Observed}},
                                 {{"A", "Y"}, {"Y", "A"}}),
                       doctest::Contains("cycle"), Error);
  CHECK_THROWS_AS(build_dag({{"A", NodeKind::Observed}, {"A", NodeKind::Observed}}, {}), Error);
  CHECK_THROWS_AS(build_dag({{"A", NodeKind::Observed}}, {{"A", "B"}}), Error);
  // deterministic node needs a parent
  CHECK_THROWS_AS(build_dag({{"Z", NodeKind::Deterministic}}, {}), Error);
}

TEST_CASE("cycle error names a cycle") {
  try {
    build_dag({{"A", NodeKind::Observed}, {"B", NodeKind::Observed}, {"C", NodeKind::Observed}},
              {{"A", "B"}, {"B", "C"}, {"C", "A"}});
    FAIL("expected CycleDetected");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CycleDetected);
    CHECK(std::string(e.what()).find("->") != std::string::npos);
  }
}

TEST_CASE("relatives") {
  Dag dag = fig1();
  CHECK(relatives(dag, {"Y"}, Relation::Ancestors) == NodeSet{"C", "A"});
  CHECK(relatives(dag, {}, Relation::Descendants) == NodeSet{});
  CHECK(relatives(fig2(), {"Y"}, Relation::Parents) == NodeSet{"C", "M", "A"});
  CHECK(relatives(dag, {"C"}, Relation::Descendants) == NodeSet{"A", "Y"});
  CHECK_THROWS_AS(relatives(dag, {"Q"}, Relation::Parents), Error);
}

TEST_CASE("ancestor/descendant duality on random dags") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Dag dag = random_dag(rng, 7, 0.35);
    for (const auto& x : dag.node_names()) {
      NodeSet desc = relatives(dag, {x}, Relation::Descendants);
      for (const auto& y : dag.node_names()) {
        bool forward = desc.count(y) > 0;
        bool backward = relatives(dag, {y}, Relation::Ancestors).count(x) > 0;
        CHECK(forward == backward);
      }
    }
  }
}

TEST_CASE("enumerate_paths") {
  Dag dag = fig1();
  auto paths = enumerate_paths(dag, "A", "Y");
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<std::string>{"A", "C", "Y"});
  CHECK(paths[0].steps == std::vector<Step>{Step::Backward, Step::Forward});
  CHECK(paths[1].nodes == std::vector<std::string>{"A", "Y"});

  auto paths2 = enumerate_paths(fig2(), "A", "Y");
  REQUIRE(paths2.size() == 3);
  CHECK(format_path(paths2[0]) == "A <- C -> Y");
  CHECK(format_path(paths2[1]) == "A -> M -> Y");
  CHECK(format_path(paths2[2]) == "A -> Y");

  Dag split = build_dag({{"X", NodeKind::Observed}, {"Y", NodeKind::Observed}}, {});
  CHECK(enumerate_paths(split, "X", "Y").empty());

  std::mt19937_64 rng(1);
  Dag big = random_dag(rng, 17, 0.2);
  CHECK_THROWS_AS(enumerate_paths(big, "N0", "N1"), Error);
  CHECK_NOTHROW(enumerate_paths(big, "N0", "N1", 17));
}

TEST_CASE("path_blocked") {
  Dag dag = fig1();
  Path collider{{"C", "Y", "A"}, {Step::Forward, Step::Backward}};
  CHECK(path_blocked(dag, collider, {}));        // Y is an unconditioned collider
  CHECK_FALSE(path_blocked(dag, collider, {"Y"}));

  Path fork{{"A", "C", "Y"}, {Step::Backward, Step::Forward}};
  CHECK(path_blocked(fig2(), fork, {"C"}));

  Path bogus{{"A", "Y"}, {Step::Backward}};
  CHECK_THROWS_AS(path_blocked(dag, bogus, {}), Error);
}

TEST_CASE("collider descendants open paths") {
  // C -> Y <- A with Y -> D: conditioning on D opens the collider.
  Dag dag = build_dag({{"C", NodeKind::Observed},
                       {"A", NodeKind::Observed},
                       {"Y", NodeKind::Observed},
                       {"D", NodeKind::Observed}},
                      {{"C", "Y"}, {"A", "Y"}, {"Y", "D"}});
  Path path{{"C", "Y", "A"}, {Step::Forward, Step::Backward}};
  CHECK(path_blocked(dag, path, {}));
  CHECK_FALSE(path_blocked(dag, path, {"D"}));
  CHECK(d_separated(dag, {"C"}, {"A"}, {}));
  CHECK_FALSE(d_separated(dag, {"C"}, {"A"}, {"D"}));
}

TEST_CASE("d_separated basics") {
  CHECK(d_separated(fig2(), {"M"}, {"C"}, {"A"}));
  CHECK_FALSE(d_separated(fig2(), {"M"}, {"C"}, {}));
  Dag split = build_dag({{"X", NodeKind::Observed}, {"Y", NodeKind::Observed}}, {});
  CHECK(d_separated(split, {"X"}, {"Y"}, {}));
  CHECK_THROWS_AS(d_separated(fig1(), {"A"}, {"Y"}, {"A"}), Error);
  CHECK_THROWS_AS(d_separated(fig1(), {"A"}, {"A"}, {}), Error);
}

TEST_CASE("d_separated agrees with path enumeration on random dags") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    Dag dag = random_dag(rng, 6, 0.4);
    const auto& names = dag.node_names();
    for (const auto& x : names) {
      for (const auto& y : names) {
        if (x >= y) continue;
        // z over empty set and all singletons
        CHECK(d_separated(dag, {x}, {y}, {}) == brute_force_d_separated(dag, {x}, {y}, {}));
        for (const auto& z : names) {
          if (z == x || z == y) continue;
          CHECK(d_separated(dag, {x}, {y}, {z}) == brute_force_d_separated(dag, {x}, {y}, {z}));
        }
      }
    }
  }
}

TEST_CASE("blocking monotonicity: conditioning a non-collider blocks the path") {
  std::mt19937_64 rng(23);
  int exercised = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Dag dag = random_dag(rng, 6, 0.45);
    const auto& names = dag.node_names();
    for (const auto& x : names) {
      for (const auto& y : names) {
        if (x >= y) continue;
        for (const auto& path : enumerate_paths(dag, x, y)) {
          if (path_blocked(dag, path, {})) continue;
          for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
            bool collider = path.steps[i - 1] == Step::Forward && path.steps[i] == Step::Backward;
            if (!collider) {
              CHECK(path_blocked(dag, path, {path.nodes[i]}));
              ++exercised;
            }
          }
        }
      }
    }
  }
  CHECK(exercised > 100);
}

TEST_CASE("backdoor_paths") {
  auto paths = backdoor_paths(fig1(), "A", "Y");
  REQUIRE(paths.size() == 1);
  CHECK(format_path(paths[0]) == "A <- C -> Y");

  // A root node has no backdoor paths.
  Dag rooted = build_dag({{"A", NodeKind::Observed}, {"Y", NodeKind::Observed}}, {{"A", "Y"}});
  CHECK(backdoor_paths(rooted, "A", "Y").empty());

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Dag dag = random_dag(rng, 6, 0.4);
    auto all = enumerate_paths(dag, "N0", "N1");
    auto back = backdoor_paths(dag, "N0", "N1");
    for (const auto& p : back) {
      CHECK(p.steps.front() == Step::Backward);
      CHECK(std::find(all.begin(), all.end(), p) != all.end());
    }
  }
}

TEST_CASE("DOT parse and serialize") {
  Dag dag = parse_dot("digraph{C->A;C->Y;A->Y;}");
  CHECK(dag == fig1());

  Dag latent = parse_dot("digraph{U[kind=latent];U->Y1;U->Y2;}");
  CHECK(latent.node_count() == 3);
  CHECK(latent.kind("U") == NodeKind::Latent);
  CHECK(latent.kind("Y1") == NodeKind::Observed);

  CHECK_THROWS_AS(parse_dot("digraph{A->B B->A}"), Error);

  CHECK(to_dot(build_dag({}, {})) == "digraph {\n}\n");
  CHECK(parse_dot("digraph {}").node_count() == 0);

  // newline separators and graph name
  Dag nl = parse_dot("digraph g {\n A -> B\n B -> C\n}");
  CHECK(nl.edge_count() == 2);

  // quoted ids
  Dag quoted = parse_dot("digraph { \"h(C)\" [kind=deterministic]; C1 -> \"h(C)\"; }");
  CHECK(quoted.kind("h(C)") == NodeKind::Deterministic);
  CHECK(parse_dot(to_dot(quoted)) == quoted);

  try {
    parse_dot("digraph { A -> ; }");
    FAIL("expected syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DotSyntax);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("DOT round-trip identity on random dags") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    Dag dag = random_dag(rng, 8, 0.3);
    CHECK(parse_dot(to_dot(dag)) == dag);
  }
}

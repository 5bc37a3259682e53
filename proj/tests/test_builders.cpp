#include "doctest.h"
#include "interdag/builders.hpp"
#include "interdag/identify.hpp"
#include "test_support.hpp"

using namespace interdag;

TEST_CASE("block scenario graphs") {
  Dag fig4 = build_block_dag(CovariateScenario::IndependentC, 2);
  CHECK(fig4.node_count() == 6);
  CHECK(fig4.has_edge("C1", "A1"));
  CHECK(fig4.has_edge("A1", "Y2"));
  CHECK(fig4.has_edge("A2", "Y1"));

  Dag fig3 = build_block_dag(CovariateScenario::NoInterference, 2);
  CHECK_FALSE(fig3.has_edge("A1", "Y2"));
  CHECK_FALSE(fig3.has_edge("A2", "Y1"));

  Dag fig5g = build_block_dag(CovariateScenario::CovariateInterferenceOnly, 2);
  CHECK_FALSE(fig5g.has_edge("A1", "Y2"));
  CHECK(fig5g.has_edge("C1", "A2"));
  CHECK(fig5g.has_edge("C1", "Y2"));
  // no directed path from a treatment to the other unit's outcome
  CHECK_FALSE(relatives(fig5g, {"A1"}, Relation::Descendants).count("Y2"));

  Dag fig5c = build_block_dag(CovariateScenario::HOfC_toY, 2);
  CHECK(fig5c.kind("hC") == NodeKind::Deterministic);
  CHECK(fig5c.has_edge("C1", "hC"));
  CHECK(fig5c.has_edge("hC", "Y1"));
  CHECK_FALSE(fig5c.has_edge("hC", "A1"));

  CHECK_THROWS_AS(build_block_dag(CovariateScenario::IndependentC, 1), Error);
  CHECK_NOTHROW(build_block_dag(CovariateScenario::NoInterference, 1));

  // m = 3 keeps the complete cross pattern
  Dag fig4x3 = build_block_dag(CovariateScenario::IndependentC, 3);
  CHECK(fig4x3.has_edge("A3", "Y1"));
  CHECK(fig4x3.has_edge("A1", "Y3"));
}

TEST_CASE("contagion graphs") {
  Dag fig6 = build_contagion_dag({2, 3, ContagionObservation::FullPanel, false});
  CHECK(fig6.has_edge("A1", "Y1_1"));
  CHECK(fig6.has_edge("A1", "Y1_T"));
  CHECK(fig6.has_edge("Y1_2", "Y1_T"));
  CHECK(fig6.has_edge("Y1_2", "Y2_T"));
  CHECK_FALSE(fig6.has_edge("A1", "Y2_T"));
  CHECK_FALSE(d_separated(fig6, {"Y1_T"}, {"Y2_T"}, {"A1", "A2"}));

  Dag fig7 = build_contagion_dag({2, 3, ContagionObservation::EndpointOnly, false});
  CHECK(fig7.kind("U") == NodeKind::Latent);
  CHECK_FALSE(d_separated(fig7, {"Y1_T"}, {"Y2_T"}, {"A1", "A2"}));

  Dag fig8 = build_contagion_dag({2, 3, ContagionObservation::FirstCase, false});
  CHECK_FALSE(d_separated(fig8, {"Y1_T0"}, {"Y2_T0"}, {"A1", "A2"}));
  CHECK(d_separated(fig8, {"Y1_T0"}, {"Y2_T0"}, {"A1", "A2", "T0"}));
  CHECK_FALSE(d_separated(fig8, {"Y1_T"}, {"Y2_T"}, {"Y1_T0", "Y2_T0", "A1", "A2", "T0"}));

  Dag fig9 = build_contagion_dag({2, 3, ContagionObservation::CountOutcome, false});
  CHECK(fig9.has_edge("A1", "Y2_T0"));
  CHECK(fig9.has_edge("A1", "Y2_T"));

  Dag fig10 = build_contagion_dag({2, 3, ContagionObservation::FullPanel, true});
  CHECK(fig10.has_edge("C1", "A1"));
  CHECK(fig10.has_edge("C1", "Y1_1"));
  CHECK(fig10.has_edge("C1", "Y1_T"));
  CHECK_FALSE(fig10.has_edge("C1", "Y2_T"));
  // own covariate restores exchangeability
  CHECK(satisfies_backdoor(fig10, {"A1", "A2"}, "Y1_T", {"C1"}));

  CHECK_THROWS_AS(build_contagion_dag({1, 3, ContagionObservation::FullPanel, false}), Error);
  CHECK_THROWS_AS(build_contagion_dag({2, 1, ContagionObservation::FullPanel, false}), Error);
}

TEST_CASE("endpoint-only independencies are implied by the full panel") {
  // Every d-separation over the four observed endpoint variables claimed by
  // the projected graph must also hold in the underlying panel graph.
  Dag panel = build_contagion_dag({2, 4, ContagionObservation::FullPanel, false});
  Dag endpoint = build_contagion_dag({2, 4, ContagionObservation::EndpointOnly, false});
  std::vector<std::string> observed{"A1", "A2", "Y1_T", "Y2_T"};
  for (const auto& x : observed) {
    for (const auto& y : observed) {
      if (x >= y) continue;
      for (int mask = 0; mask < 16; ++mask) {
        NodeSet z;
        bool skip = false;
        for (int b = 0; b < 4; ++b) {
          if (mask & (1 << b)) {
            if (observed[b] == x || observed[b] == y) skip = true;
            z.insert(observed[b]);
          }
        }
        if (skip) continue;
        if (d_separated(endpoint, {x}, {y}, z)) CHECK(d_separated(panel, {x}, {y}, z));
      }
    }
  }
}

TEST_CASE("vaccine trial graphs") {
  Dag fig11 = build_figure("fig11");
  CHECK(fig11.kind("U") == NodeKind::Latent);
  CHECK(fig11.has_edge("A1", "U"));
  CHECK(fig11.has_edge("U", "Y2_T"));
  // U mediates but does not confound: the spillover effect stays identified
  CHECK(satisfies_backdoor(fig11, {"A1"}, "Y2_T", {}));

  Dag fig12 = build_figure("fig12");
  CHECK(fig12.node_count() == 3);
  CHECK(fig12.has_edge("Y1_T0", "Y2_T"));

  Dag fig13 = build_figure("fig13");
  CHECK(fig13.has_edge("T0", "Y2_T"));
  Dag fig13s = build_figure("fig13s");
  CHECK_FALSE(fig13s.has_edge("T0", "Y2_T"));
  CHECK(fig13s.has_edge("T0", "Y1_T0"));

  VaccineTrialSpec both;
  both.partner_only_source = false;
  both.both_randomized = true;
  Dag dag_both = build_vaccine_dag(both);
  CHECK(dag_both.has_edge("A2", "Y2_T"));
  CHECK(dag_both.has_edge("A2", "Y1_T0"));

  VaccineTrialSpec bad;
  bad.partner_only_source = false;
  bad.followup = FollowUp::TruncatedT0PlusS;
  bad.s = 0;
  CHECK_THROWS_AS(build_vaccine_dag(bad), Error);
}

TEST_CASE("allocation graphs") {
  Dag fig14 = build_allocation_dag({3, 2, GroupProperties::None, true});
  CHECK(fig14.kind("Zstar1") == NodeKind::Deterministic);
  CHECK(fig14.has_edge("Z2", "Zstar1"));
  CHECK(fig14.has_edge("A2", "Zstar1"));
  CHECK(fig14.has_edge("A1", "Zstar1"));
  CHECK_FALSE(fig14.has_edge("Z1", "Zstar1"));
  CHECK(fig14.has_edge("Zstar1", "Y1"));
  CHECK_FALSE(fig14.has_edge("Z1", "A1"));

  Dag nonrandom = build_allocation_dag({3, 2, GroupProperties::None, false});
  CHECK(nonrandom.has_edge("Z1", "A1"));
  CHECK(nonrandom.has_edge("Z2", "A1"));

  Dag fig15 = build_allocation_dag({3, 2, GroupProperties::Preallocation, true});
  CHECK(fig15.has_edge("A1", "T1"));
  CHECK(fig15.has_edge("T1", "Y1"));
  CHECK_FALSE(fig15.has_edge("A2", "T1"));

  Dag fig15d = build_allocation_dag({3, 2, GroupProperties::CompositionDependent, true});
  CHECK(fig15d.has_edge("A2", "T1"));
  CHECK_FALSE(fig15d.has_edge("Z2", "T1"));

  Dag fig16 = build_allocation_dag({3, 2, GroupProperties::ZDependent, true});
  CHECK(fig16.has_edge("Z2", "T1"));
  CHECK(fig16.has_edge("Z1", "T1"));
  CHECK(fig16.has_edge("A2", "T1"));

  CHECK_THROWS_AS(build_allocation_dag({3, 4, GroupProperties::None, true}), Error);
  CHECK_THROWS_AS(build_allocation_dag({1, 2, GroupProperties::None, true}), Error);
}

TEST_CASE("social contagion graphs") {
  Dag fig17 = build_social_contagion_dag({SocialContagionStructure::LatentBeliefBackdoor, 3});
  CHECK(fig17.kind("B1_1") == NodeKind::Latent);
  CHECK(fig17.has_edge("B1_1", "O1_2"));
  CHECK(fig17.has_edge("B1_1", "B2_2"));
  CHECK(fig17.has_edge("B1_1", "B1_2"));
  // apparent contagion with no directed observed-to-observed pathway
  NodeSet desc = relatives(fig17, {"O1_2"}, Relation::Descendants);
  for (const auto& n : desc) CHECK(n.find("O2") == std::string::npos);
  // the backdoor route between behaviors exists
  CHECK_FALSE(d_separated(fig17, {"O1_2"}, {"O2_T"}, {}));

  Dag fig18 = build_social_contagion_dag({SocialContagionStructure::BeliefMediated, 3});
  CHECK(fig18.has_edge("O1_1", "B2_1"));
  NodeSet desc18 = relatives(fig18, {"O1_1"}, Relation::Descendants);
  CHECK(desc18.count("O2_2"));

  // minimal two-layer instances stay valid
  CHECK_NOTHROW(build_social_contagion_dag({SocialContagionStructure::LatentBeliefBackdoor, 2}));
  CHECK_NOTHROW(build_social_contagion_dag({SocialContagionStructure::BeliefMediated, 2}));
  CHECK_THROWS_AS(build_social_contagion_dag({SocialContagionStructure::BeliefMediated, 1}), Error);
}

TEST_CASE("figure catalog is deterministic and round-trips through DOT") {
  for (const auto& alias : figure_aliases()) {
    Dag first = build_figure(alias);
    Dag second = build_figure(alias);
    CHECK(first == second);
    CHECK(parse_dot(to_dot(first)) == first);
  }
  CHECK_THROWS_AS(build_figure("fig99"), Error);
}

TEST_CASE("scenario table reproduces the covariate-control verdicts") {
  const NodeSet both{"A1", "A2"};

  CHECK(satisfies_backdoor(build_figure("fig3"), both, "Y1", {"C1"}));
  CHECK(satisfies_backdoor(build_figure("fig4"), both, "Y1", {"C1"}));

  Dag fig5a = build_figure("fig5a");
  CHECK_FALSE(satisfies_backdoor(fig5a, both, "Y1", {"C1"}));
  CHECK(satisfies_backdoor(fig5a, both, "Y1", {"C1", "C2"}));

  CHECK(satisfies_backdoor(build_figure("fig5b"), both, "Y1", {"C1"}));

  Dag fig5c = build_figure("fig5c");
  CHECK_FALSE(satisfies_backdoor(fig5c, both, "Y1", {"C1"}));
  CHECK(satisfies_backdoor(fig5c, both, "Y1", {"C1", "hC"}));
  CHECK(satisfies_backdoor(fig5c, both, "Y1", {"C1", "C2"}));
  CHECK(satisfies_backdoor(fig5c, {"A2"}, "Y1", {"C2"}));

  CHECK(satisfies_backdoor(build_figure("fig5d"), both, "Y1", {"C1"}));

  Dag fig5e = build_figure("fig5e");
  CHECK(satisfies_backdoor(fig5e, both, "Y1", {"C1", "D"}));
  CHECK(satisfies_backdoor(fig5e, {"A2"}, "Y1", {"D"}));

  CHECK(satisfies_backdoor(build_figure("fig5f"), both, "Y1", {"C1"}));

  Dag fig5g = build_figure("fig5g");
  CHECK_FALSE(satisfies_backdoor(fig5g, {"A1"}, "Y1", {"C1"}));
  CHECK(satisfies_backdoor(fig5g, {"A1"}, "Y1", {"C1", "C2"}));
}

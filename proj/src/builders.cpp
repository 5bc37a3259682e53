#include "interdag/builders.hpp"

#include <algorithm>

namespace interdag {

namespace {

std::string unit(const std::string& base, int i) { return base + std::to_string(i); }

std::string timed(const std::string& base, int i, int t, int horizon) {
  // The last layer is written "T" so endpoint names read Y1_T.
  return base + std::to_string(i) + (t == horizon ? "_T" : "_" + std::to_string(t));
}

}  // namespace

Dag build_block_dag(CovariateScenario scenario, int m) {
  if (m < 1 || (m < 2 && scenario != CovariateScenario::NoInterference))
    throw Error(Errc::InvalidSize, "block scenarios need m >= 2 (m >= 1 for NoInterference)");

  std::vector<std::pair<std::string, NodeKind>> nodes;
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) {
    nodes.emplace_back(unit("C", i), NodeKind::Observed);
    nodes.emplace_back(unit("A", i), NodeKind::Observed);
    nodes.emplace_back(unit("Y", i), NodeKind::Observed);
    edges.emplace_back(unit("C", i), unit("A", i));
    edges.emplace_back(unit("C", i), unit("Y", i));
    edges.emplace_back(unit("A", i), unit("Y", i));
  }

  bool cross_treatment = scenario != CovariateScenario::NoInterference &&
                         scenario != CovariateScenario::CovariateInterferenceOnly;
  if (cross_treatment) {
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j)
        if (i != j) edges.emplace_back(unit("A", i), unit("Y", j));
  }

  switch (scenario) {
    case CovariateScenario::NoInterference:
    case CovariateScenario::IndependentC:
      break;
    case CovariateScenario::CjToYi:
      for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
          if (i != j) edges.emplace_back(unit("C", i), unit("Y", j));
      break;
    case CovariateScenario::CjToAi:
      for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
          if (i != j) edges.emplace_back(unit("C", i), unit("A", j));
      break;
    case CovariateScenario::HOfC_toY:
      nodes.emplace_back("hC", NodeKind::Deterministic);
      for (int i = 1; i <= m; ++i) {
        edges.emplace_back(unit("C", i), "hC");
        edges.emplace_back("hC", unit("Y", i));
      }
      break;
    case CovariateScenario::HOfC_toA:
      nodes.emplace_back("hC", NodeKind::Deterministic);
      for (int i = 1; i <= m; ++i) {
        edges.emplace_back(unit("C", i), "hC");
        edges.emplace_back("hC", unit("A", i));
      }
      break;
    case CovariateScenario::BlockLevelD:
      nodes.emplace_back("D", NodeKind::Observed);
      for (int i = 1; i <= m; ++i) {
        edges.emplace_back("D", unit("A", i));
        edges.emplace_back("D", unit("Y", i));
      }
      break;
    case CovariateScenario::CommonCauseOfC:
      nodes.emplace_back("F", NodeKind::Latent);
      for (int i = 1; i <= m; ++i) edges.emplace_back("F", unit("C", i));
      break;
    case CovariateScenario::CovariateInterferenceOnly:
      for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
          if (i != j) {
            edges.emplace_back(unit("C", i), unit("A", j));
            edges.emplace_back(unit("C", i), unit("Y", j));
          }
      break;
  }
  return build_dag(nodes, edges);
}

Dag build_contagion_dag(const ContagionSpec& spec) {
  if (spec.m < 2) throw Error(Errc::InvalidSpec, "contagion graphs need m >= 2");
  if (spec.horizon < 2) throw Error(Errc::InvalidSpec, "contagion graphs need horizon >= 2");
  const int m = spec.m;
  const int T = spec.horizon;

  std::vector<std::pair<std::string, NodeKind>> nodes;
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) nodes.emplace_back(unit("A", i), NodeKind::Observed);

  switch (spec.observation) {
    case ContagionObservation::FullPanel: {
      for (int i = 1; i <= m; ++i)
        for (int t = 1; t <= T; ++t) nodes.emplace_back(timed("Y", i, t, T), NodeKind::Observed);
      for (int i = 1; i <= m; ++i) {
        for (int t = 1; t <= T; ++t) edges.emplace_back(unit("A", i), timed("Y", i, t, T));
        for (int t = 1; t < T; ++t) {
          edges.emplace_back(timed("Y", i, t, T), timed("Y", i, t + 1, T));
          for (int j = 1; j <= m; ++j)
            if (j != i) edges.emplace_back(timed("Y", i, t, T), timed("Y", j, t + 1, T));
        }
      }
      break;
    }
    case ContagionObservation::EndpointOnly: {
      nodes.emplace_back("U", NodeKind::Latent);
      for (int i = 1; i <= m; ++i) nodes.emplace_back(unit("Y", i) + "_T", NodeKind::Observed);
      for (int i = 1; i <= m; ++i) {
        edges.emplace_back(unit("A", i), "U");
        edges.emplace_back("U", unit("Y", i) + "_T");
        edges.emplace_back(unit("A", i), unit("Y", i) + "_T");
      }
      break;
    }
    case ContagionObservation::FirstCase:
    case ContagionObservation::CountOutcome: {
      nodes.emplace_back("T0", NodeKind::Observed);
      nodes.emplace_back("U", NodeKind::Latent);
      for (int i = 1; i <= m; ++i) {
        nodes.emplace_back(unit("Y", i) + "_T0", NodeKind::Observed);
        nodes.emplace_back(unit("Y", i) + "_T", NodeKind::Observed);
      }
      // T0, the time of the first case, couples the first-case indicators;
      // U carries the unobserved post-T0 evolution into the endpoints.
      edges.emplace_back("T0", "U");
      for (int i = 1; i <= m; ++i) {
        const std::string first = unit("Y", i) + "_T0";
        const std::string endpoint = unit("Y", i) + "_T";
        edges.emplace_back(unit("A", i), "T0");
        edges.emplace_back("T0", first);
        edges.emplace_back(unit("A", i), first);
        edges.emplace_back(first, "U");
        edges.emplace_back("U", endpoint);
        edges.emplace_back(unit("A", i), endpoint);
        edges.emplace_back(first, endpoint);
      }
      if (spec.observation == ContagionObservation::CountOutcome) {
        for (int i = 1; i <= m; ++i)
          for (int j = 1; j <= m; ++j)
            if (i != j) {
              edges.emplace_back(unit("A", i), unit("Y", j) + "_T0");
              edges.emplace_back(unit("A", i), unit("Y", j) + "_T");
            }
      }
      break;
    }
  }

  if (spec.with_confounders) {
    std::vector<std::string> outcome_names;
    for (const auto& [name, kind] : nodes) {
      (void)kind;
      if (name[0] == 'Y') outcome_names.push_back(name);
    }
    for (int i = 1; i <= m; ++i) {
      nodes.emplace_back(unit("C", i), NodeKind::Observed);
      edges.emplace_back(unit("C", i), unit("A", i));
      const std::string prefix = unit("Y", i) + "_";
      for (const auto& name : outcome_names)
        if (name.rfind(prefix, 0) == 0) edges.emplace_back(unit("C", i), name);
    }
  }
  return build_dag(nodes, edges);
}

Dag build_vaccine_dag(const VaccineTrialSpec& spec) {
  if (spec.followup == FollowUp::TruncatedT0PlusS && spec.s < 1)
    throw Error(Errc::InvalidSpec, "truncated follow-up needs s >= 1");

  std::vector<std::pair<std::string, NodeKind>> nodes;
  std::vector<Edge> edges;

  if (!spec.one_event_only) {
    // Endpoint-only projection: latent U carries everything between the
    // randomized vaccine and the two season-end outcomes.
    nodes = {{"A1", NodeKind::Observed},
             {"U", NodeKind::Latent},
             {"Y1_T", NodeKind::Observed},
             {"Y2_T", NodeKind::Observed}};
    edges = {{"A1", "U"}, {"A1", "Y1_T"}, {"U", "Y1_T"}, {"U", "Y2_T"}};
    if (spec.both_randomized) {
      nodes.emplace_back("A2", NodeKind::Observed);
      edges.emplace_back("A2", "U");
      edges.emplace_back("A2", "Y2_T");
    }
    return build_dag(nodes, edges);
  }

  if (spec.partner_only_source) {
    // Individual 1 is infected first or not at all, so Y1_T equals Y1_T0 and
    // the mediator is observed.
    nodes = {{"A1", NodeKind::Observed}, {"Y1_T0", NodeKind::Observed}, {"Y2_T", NodeKind::Observed}};
    edges = {{"A1", "Y1_T0"}, {"Y1_T0", "Y2_T"}, {"A1", "Y2_T"}};
    if (spec.both_randomized) {
      nodes.emplace_back("A2", NodeKind::Observed);
      edges.emplace_back("A2", "Y2_T");
    }
    return build_dag(nodes, edges);
  }

  // Either individual can be infected first, so the time of the first
  // infection T0 enters the graph. The arrow T0 -> Y2_T exists only under a
  // fixed season-end follow-up; the truncated T0+s follow-up removes it.
  nodes = {{"A1", NodeKind::Observed},
           {"T0", NodeKind::Observed},
           {"Y1_T0", NodeKind::Observed},
           {"Y2_T", NodeKind::Observed}};
  edges = {{"A1", "T0"}, {"A1", "Y1_T0"}, {"T0", "Y1_T0"}, {"Y1_T0", "Y2_T"}, {"A1", "Y2_T"}};
  if (spec.followup == FollowUp::FixedSeasonEnd) edges.emplace_back("T0", "Y2_T");
  if (spec.both_randomized) {
    nodes.emplace_back("A2", NodeKind::Observed);
    edges.emplace_back("A2", "Y2_T");
    edges.emplace_back("A2", "Y1_T0");
    edges.emplace_back("A2", "T0");
  }
  return build_dag(nodes, edges);
}

Dag build_allocation_dag(const AllocationSpec& spec) {
  if (spec.m < 2) throw Error(Errc::InvalidSpec, "allocation graphs need m >= 2");
  if (spec.groups < 2 || spec.groups > spec.m)
    throw Error(Errc::InvalidSpec, "allocation graphs need 2 <= groups <= m");
  const int m = spec.m;

  std::vector<std::pair<std::string, NodeKind>> nodes;
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) {
    nodes.emplace_back(unit("Z", i), NodeKind::Observed);
    nodes.emplace_back(unit("A", i), NodeKind::Observed);
    nodes.emplace_back(unit("Zstar", i), NodeKind::Deterministic);
    nodes.emplace_back(unit("Y", i), NodeKind::Observed);
  }
  for (int i = 1; i <= m; ++i) {
    edges.emplace_back(unit("Z", i), unit("Y", i));
    edges.emplace_back(unit("Zstar", i), unit("Y", i));
    // Zstar_i is the array of same-group companions' covariates: a function
    // of every other Z and of the whole allocation vector A.
    for (int j = 1; j <= m; ++j) {
      if (j != i) edges.emplace_back(unit("Z", j), unit("Zstar", i));
      edges.emplace_back(unit("A", j), unit("Zstar", i));
    }
    if (!spec.randomized)
      for (int j = 1; j <= m; ++j) edges.emplace_back(unit("Z", j), unit("A", i));
  }

  if (spec.group_props != GroupProperties::None) {
    for (int i = 1; i <= m; ++i) nodes.emplace_back(unit("T", i), NodeKind::Observed);
    for (int i = 1; i <= m; ++i) {
      edges.emplace_back(unit("A", i), unit("T", i));
      edges.emplace_back(unit("T", i), unit("Y", i));
      if (spec.group_props == GroupProperties::CompositionDependent ||
          spec.group_props == GroupProperties::ZDependent) {
        for (int j = 1; j <= m; ++j)
          if (j != i) edges.emplace_back(unit("A", j), unit("T", i));
      }
      if (spec.group_props == GroupProperties::ZDependent) {
        for (int j = 1; j <= m; ++j) edges.emplace_back(unit("Z", j), unit("T", i));
      }
    }
  }
  return build_dag(nodes, edges);
}

Dag build_social_contagion_dag(const SocialContagionSpec& spec) {
  if (spec.timesteps < 2)
    throw Error(Errc::InvalidSpec, "social contagion graphs need timesteps >= 2");
  const int T = spec.timesteps;
  const int m = 2;

  std::vector<std::pair<std::string, NodeKind>> nodes;
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) {
    for (int t = 1; t <= T; ++t) nodes.emplace_back(timed("O", i, t, T), NodeKind::Observed);
    for (int t = 1; t < T; ++t) nodes.emplace_back(timed("B", i, t, T), NodeKind::Latent);
  }
  for (int i = 1; i <= m; ++i) {
    for (int t = 1; t < T; ++t) {
      edges.emplace_back(timed("B", i, t, T), timed("O", i, t + 1, T));
      if (t + 1 < T) {
        edges.emplace_back(timed("B", i, t, T), timed("B", i, t + 1, T));
        for (int j = 1; j <= m; ++j)
          if (j != i) edges.emplace_back(timed("B", i, t, T), timed("B", j, t + 1, T));
      }
      if (spec.structure == SocialContagionStructure::BeliefMediated) {
        for (int j = 1; j <= m; ++j)
          if (j != i) edges.emplace_back(timed("O", i, t, T), timed("B", j, t, T));
      }
    }
  }
  return build_dag(nodes, edges);
}

Dag build_figure(const std::string& alias, const FigureOptions& options) {
  const int m = options.m;
  if (alias == "fig1") {
    return build_dag({{"C", NodeKind::Observed}, {"A", NodeKind::Observed}, {"Y", NodeKind::Observed}},
                     {{"C", "A"}, {"C", "Y"}, {"A", "Y"}});
  }
  if (alias == "fig2") {
    return build_dag({{"C", NodeKind::Observed},
                      {"A", NodeKind::Observed},
                      {"M", NodeKind::Observed},
                      {"Y", NodeKind::Observed}},
                     {{"C", "A"}, {"C", "Y"}, {"A", "M"}, {"M", "Y"}, {"A", "Y"}});
  }
  if (alias == "fig3") return build_block_dag(CovariateScenario::NoInterference, m);
  if (alias == "fig4") return build_block_dag(CovariateScenario::IndependentC, m);
  if (alias == "fig5a") return build_block_dag(CovariateScenario::CjToYi, m);
  if (alias == "fig5b") return build_block_dag(CovariateScenario::CjToAi, m);
  if (alias == "fig5c") return build_block_dag(CovariateScenario::HOfC_toY, m);
  if (alias == "fig5d") return build_block_dag(CovariateScenario::HOfC_toA, m);
  if (alias == "fig5e") return build_block_dag(CovariateScenario::BlockLevelD, m);
  if (alias == "fig5f") return build_block_dag(CovariateScenario::CommonCauseOfC, m);
  if (alias == "fig5g") return build_block_dag(CovariateScenario::CovariateInterferenceOnly, m);
  if (alias == "fig6")
    return build_contagion_dag({m, options.horizon, ContagionObservation::FullPanel, false});
  if (alias == "fig7")
    return build_contagion_dag({m, options.horizon, ContagionObservation::EndpointOnly, false});
  if (alias == "fig8")
    return build_contagion_dag({m, options.horizon, ContagionObservation::FirstCase, false});
  if (alias == "fig9")
    return build_contagion_dag({m, options.horizon, ContagionObservation::CountOutcome, false});
  if (alias == "fig10")
    return build_contagion_dag({m, options.horizon, ContagionObservation::FullPanel, true});
  if (alias == "fig11") {
    VaccineTrialSpec spec;
    spec.one_event_only = false;
    return build_vaccine_dag(spec);
  }
  if (alias == "fig12") return build_vaccine_dag(VaccineTrialSpec{});
  if (alias == "fig13") {
    VaccineTrialSpec spec;
    spec.partner_only_source = false;
    spec.followup = FollowUp::FixedSeasonEnd;
    return build_vaccine_dag(spec);
  }
  if (alias == "fig13s") {
    VaccineTrialSpec spec;
    spec.partner_only_source = false;
    spec.followup = FollowUp::TruncatedT0PlusS;
    return build_vaccine_dag(spec);
  }
  if (alias == "fig14")
    return build_allocation_dag({std::max(m, 3), options.groups, GroupProperties::None, true});
  if (alias == "fig15")
    return build_allocation_dag({std::max(m, 3), options.groups, GroupProperties::Preallocation, true});
  if (alias == "fig15d")
    return build_allocation_dag(
        {std::max(m, 3), options.groups, GroupProperties::CompositionDependent, true});
  if (alias == "fig16")
    return build_allocation_dag({std::max(m, 3), options.groups, GroupProperties::ZDependent, true});
  if (alias == "fig17")
    return build_social_contagion_dag(
        {SocialContagionStructure::LatentBeliefBackdoor, options.timesteps});
  if (alias == "fig18")
    return build_social_contagion_dag({SocialContagionStructure::BeliefMediated, options.timesteps});
  throw Error(Errc::InvalidSpec, "unknown figure alias: " + alias);
}

std::vector<std::string> figure_aliases() {
  return {"fig1",  "fig2",  "fig3",   "fig4",  "fig5a", "fig5b", "fig5c", "fig5d", "fig5e",
          "fig5f", "fig5g", "fig6",   "fig7",  "fig8",  "fig9",  "fig10", "fig11", "fig12",
          "fig13", "fig13s", "fig14", "fig15", "fig15d", "fig16", "fig17", "fig18"};
}

}  // namespace interdag

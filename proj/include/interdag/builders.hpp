#pragma once

#include <optional>
#include <string>
#include <vector>

#include "interdag/dag.hpp"

namespace interdag {

// Node naming used by every builder: per-unit variables carry a 1-based unit
// suffix (A1, Y2, C1, Zstar3, T1); time-indexed variables append "_t" with the
// final time written as "T" (Y1_1, Y1_2, Y1_T); first-case indicators use
// "_T0" (Y1_T0). The block-summary covariate is "hC", the block-level common
// cause "D", and the shared cause of the covariates "F".

// --- Covariate-control scenarios -------------------------------------------

enum class CovariateScenario {
  NoInterference,            // own-effect triangles only
  IndependentC,              // cross treatment->outcome arrows, private C
  CjToYi,                    // others' covariates hit own outcome
  CjToAi,                    // others' covariates hit own treatment
  HOfC_toY,                  // summary hC of all covariates hits outcomes
  HOfC_toA,                  // summary hC hits treatments
  BlockLevelD,               // block-level common cause D of A and Y
  CommonCauseOfC,            // latent F behind all covariates
  CovariateInterferenceOnly  // covariates cross, treatments do not
};

Dag build_block_dag(CovariateScenario scenario, int m);

// --- Outcome evolution / contagion ------------------------------------------

enum class ContagionObservation {
  FullPanel,     // every Yi_t observed
  EndpointOnly,  // only endpoints observed, latent U carries the history
  FirstCase,     // endpoints plus first-case layer and its time T0
  CountOutcome   // FirstCase plus direct cross arrows into others' outcomes
};

struct ContagionSpec {
  int m = 2;
  int horizon = 3;  // number of time layers; the last is named "T"
  ContagionObservation observation = ContagionObservation::FullPanel;
  bool with_confounders = false;  // adds Ci -> Ai and Ci -> every own outcome
};

Dag build_contagion_dag(const ContagionSpec& spec);

// --- Two-person vaccine trial ----------------------------------------------

enum class FollowUp { FixedSeasonEnd, TruncatedT0PlusS };

struct VaccineTrialSpec {
  bool one_event_only = true;
  bool partner_only_source = true;
  FollowUp followup = FollowUp::FixedSeasonEnd;
  int s = 1;                     // lag in days for the truncated follow-up
  bool both_randomized = false;  // adds A2

  std::string treatment() const { return "A1"; }
  std::string mediator() const { return "Y1_T0"; }
  std::string outcome() const { return "Y2_T"; }
};

Dag build_vaccine_dag(const VaccineTrialSpec& spec);

// --- Allocational interference ----------------------------------------------

enum class GroupProperties { None, Preallocation, CompositionDependent, ZDependent };

struct AllocationSpec {
  int m = 3;
  int groups = 2;
  GroupProperties group_props = GroupProperties::None;
  bool randomized = true;  // false adds every Zj -> Ai
};

Dag build_allocation_dag(const AllocationSpec& spec);

// --- Social contagion through latent beliefs --------------------------------

enum class SocialContagionStructure { LatentBeliefBackdoor, BeliefMediated };

struct SocialContagionSpec {
  SocialContagionStructure structure = SocialContagionStructure::LatentBeliefBackdoor;
  int timesteps = 3;
};

Dag build_social_contagion_dag(const SocialContagionSpec& spec);

// --- Catalog -----------------------------------------------------------------

/// Options consumed by the figure aliases that take parameters.
struct FigureOptions {
  int m = 2;
  int horizon = 3;
  int timesteps = 3;
  int groups = 2;
};

/// Builds a graph by catalog alias (fig1 ... fig18 plus the variants
/// fig13s, fig15d). Throws InvalidSpec for unknown aliases.
Dag build_figure(const std::string& alias, const FigureOptions& options = {});

/// All known aliases, sorted.
std::vector<std::string> figure_aliases();

}  // namespace interdag

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "interdag/dag.hpp"

namespace interdag {

/// Edges whose tail value is held fixed across both terms of a contrast.
/// A directed path is deactivated iff it contains at least one such edge.
struct ActivationSpec {
  std::set<Edge> deactivated_edges;
};

struct EffectQuery {
  NodeSet treatments;
  std::string outcome;
  NodeSet mediators;
  NodeSet conditioning;
};

enum class Assumption { ExchAY, ExchMY, ExchAM, RecantingWitness };

const char* assumption_tag(Assumption a);

struct AssumptionStatus {
  bool holds = false;
  std::optional<Path> open_path;          // witness for a failed exchangeability check
  std::optional<std::string> witness_node;  // witness for a failed recanting-witness check
};

struct IdentReport {
  std::map<Assumption, AssumptionStatus> status;
  std::vector<std::string> notes;

  bool identifiable() const;
};

inline constexpr std::size_t kMaxAdjustmentCandidates = 20;

/// Backdoor criterion for a (possibly vector-valued) treatment set:
/// no member of z is a descendant of any treatment, and every backdoor path
/// from each treatment to the outcome that does not pass through another
/// treatment is blocked by z alone.
bool satisfies_backdoor(const Dag& dag, const NodeSet& treatments, const std::string& outcome,
                        const NodeSet& z);

/// All inclusion-minimal subsets of candidates passing satisfies_backdoor,
/// ordered by size then lexicographically. Empty result means no subset of
/// the candidates identifies the effect. Candidates may not be latent or
/// descendants of a treatment; at most kMaxAdjustmentCandidates of them.
std::vector<NodeSet> minimal_adjustment_sets(const Dag& dag, const NodeSet& treatments,
                                             const std::string& outcome, const NodeSet& candidates);

/// First node W (in name order) with an activated directed path from a
/// treatment, a deactivated directed path to the outcome, and an activated
/// directed path to the outcome; nullopt when no such node exists.
std::optional<std::string> find_recanting_witness(const Dag& dag, const NodeSet& treatments,
                                                  const std::string& outcome,
                                                  const ActivationSpec& spec);

/// Graphical sufficient conditions for the natural direct/indirect effects:
/// Exch-AY, Exch-MY, Exch-AM plus the recanting-witness criterion evaluated
/// with every edge into a mediator deactivated.
IdentReport check_natural_effects(const Dag& dag, const EffectQuery& query);

/// Graphical sufficient conditions for the controlled direct effect:
/// Exch-AY and Exch-MY only.
IdentReport check_controlled_direct(const Dag& dag, const EffectQuery& query);

/// Block-level exchangeability for the joint treatment vector: the backdoor
/// criterion with the query's conditioning set. On failure the witness is an
/// open backdoor path (when one exists within the enumeration bound).
std::pair<bool, std::optional<Path>> check_block_exchangeability(const Dag& dag,
                                                                 const EffectQuery& query);

}  // namespace interdag

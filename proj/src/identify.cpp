#include "interdag/identify.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace interdag {

const char* assumption_tag(Assumption a) {
  switch (a) {
    case Assumption::ExchAY: return "Exch-AY";
    case Assumption::ExchMY: return "Exch-MY";
    case Assumption::ExchAM: return "Exch-AM";
    case Assumption::RecantingWitness: return "RecantingWitness";
  }
  return "?";
}

bool IdentReport::identifiable() const {
  for (const auto& [tag, st] : status) {
    (void)tag;
    if (!st.holds) return false;
  }
  return true;
}

namespace {

void require_nodes(const Dag& dag, const NodeSet& set) {
  for (const auto& name : set) dag.require(name);
}

/// Open "proper" backdoor path test for one treatment: is there a simple path
/// from the treatment to the outcome that starts with an arrow into the
/// treatment, has no other treatment and no `avoid` node in its interior, and
/// is not blocked by z? Blocking follows path_blocked on the full graph, so
/// collider openings count descendants in the original graph even when the
/// descendant route runs through an avoided node.
///
/// Implemented as a ball-passing walk over the graph with the treatment's
/// out-edges dropped and the excluded nodes untraversable.
bool has_open_backdoor(const Dag& dag, const std::string& treatment, const NodeSet& treatments,
                       const std::string& outcome, const NodeSet& z, const NodeSet& avoid) {
  const int t_id = dag.require(treatment);
  const int y_id = dag.require(outcome);

  std::vector<bool> excluded(dag.node_count(), false);
  for (const auto& name : treatments)
    if (name != treatment) excluded[static_cast<std::size_t>(dag.require(name))] = true;
  for (const auto& name : avoid) excluded[static_cast<std::size_t>(dag.require(name))] = true;
  excluded[static_cast<std::size_t>(t_id)] = true;  // simple paths never revisit the endpoint

  std::vector<bool> in_z(dag.node_count(), false);
  for (const auto& name : z) in_z[static_cast<std::size_t>(dag.require(name))] = true;

  // Collider turns are allowed where the node or one of its descendants in
  // the *original* graph is conditioned on.
  std::vector<bool> collider_open(dag.node_count(), false);
  {
    std::deque<int> queue;
    for (const auto& name : z) {
      int id = dag.require(name);
      if (!collider_open[static_cast<std::size_t>(id)]) {
        collider_open[static_cast<std::size_t>(id)] = true;
        queue.push_back(id);
      }
    }
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      for (int p : dag.parent_ids(node)) {
        if (!collider_open[static_cast<std::size_t>(p)]) {
          collider_open[static_cast<std::size_t>(p)] = true;
          queue.push_back(p);
        }
      }
    }
  }

  enum { kUp = 0, kDown = 1 };
  std::vector<std::array<bool, 2>> seen(dag.node_count(), {false, false});
  std::deque<std::pair<int, int>> queue;
  for (int p : dag.parent_ids(t_id))
    if (!excluded[static_cast<std::size_t>(p)]) queue.emplace_back(p, kUp);

  while (!queue.empty()) {
    auto [node, dir] = queue.front();
    queue.pop_front();
    if (seen[static_cast<std::size_t>(node)][static_cast<std::size_t>(dir)]) continue;
    seen[static_cast<std::size_t>(node)][static_cast<std::size_t>(dir)] = true;
    if (node == y_id) return true;

    bool observed = in_z[static_cast<std::size_t>(node)];
    auto push = [&](int next, int d) {
      if (!excluded[static_cast<std::size_t>(next)]) queue.emplace_back(next, d);
    };
    if (dir == kUp) {
      if (!observed) {
        for (int p : dag.parent_ids(node))
          if (p != t_id) push(p, kUp);
        for (int c : dag.child_ids(node)) push(c, kDown);
      }
    } else {
      if (!observed)
        for (int c : dag.child_ids(node)) push(c, kDown);
      if (collider_open[static_cast<std::size_t>(node)])
        for (int p : dag.parent_ids(node))
          if (p != t_id) push(p, kUp);
    }
  }
  return false;
}

/// Enumerated witness path for a failed check, or nullopt when the graph is
/// too large to enumerate.
std::optional<Path> open_backdoor_witness(const Dag& dag, const NodeSet& treatments,
                                          const std::string& outcome, const NodeSet& z,
                                          const NodeSet& avoid) {
  if (dag.node_count() > kDefaultPathEnumerationBound) return std::nullopt;
  for (const auto& t : treatments) {
    for (const auto& path : backdoor_paths(dag, t, outcome)) {
      bool proper = true;
      for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
        if ((treatments.count(path.nodes[i]) && path.nodes[i] != t) || avoid.count(path.nodes[i])) {
          proper = false;
          break;
        }
      }
      if (proper && !path_blocked(dag, path, z)) return path;
    }
  }
  return std::nullopt;
}

/// Exchangeability surrogate shared by the mediation checks: no open proper
/// backdoor path from any exposure to the outcome given z, skipping paths
/// through `avoid`. Unlike satisfies_backdoor this places no descendant
/// restriction on z, so observed post-treatment covariates may be held.
AssumptionStatus exchangeability_status(const Dag& dag, const NodeSet& exposures,
                                        const std::string& outcome, const NodeSet& z,
                                        const NodeSet& avoid) {
  AssumptionStatus st;
  st.holds = true;
  for (const auto& exposure : exposures) {
    if (has_open_backdoor(dag, exposure, exposures, outcome, z, avoid)) {
      st.holds = false;
      st.open_path = open_backdoor_witness(dag, exposures, outcome, z, avoid);
      break;
    }
  }
  return st;
}

void validate_query(const Dag& dag, const EffectQuery& q) {
  require_nodes(dag, q.treatments);
  require_nodes(dag, q.mediators);
  require_nodes(dag, q.conditioning);
  dag.require(q.outcome);
  if (q.treatments.count(q.outcome))
    throw Error(Errc::OverlappingSets, "outcome is also a treatment: " + q.outcome);
  for (const auto& t : q.treatments)
    if (q.mediators.count(t) || q.conditioning.count(t))
      throw Error(Errc::OverlappingSets, "treatment overlaps mediators/conditioning: " + t);
  for (const auto& m : q.mediators) {
    if (q.conditioning.count(m))
      throw Error(Errc::OverlappingSets, "mediator overlaps conditioning: " + m);
    if (m == q.outcome) throw Error(Errc::OverlappingSets, "outcome is also a mediator: " + m);
  }
  if (q.conditioning.count(q.outcome))
    throw Error(Errc::OverlappingSets, "outcome is also conditioned on: " + q.outcome);
  for (const auto& c : q.conditioning)
    if (dag.kind(c) == NodeKind::Latent)
      throw Error(Errc::InvalidQuery, "latent node in conditioning set: " + c);
}

void add_deterministic_note(const Dag& dag, const NodeSet& conditioning, IdentReport& report) {
  for (const auto& c : conditioning) {
    if (dag.kind(c) == NodeKind::Deterministic) {
      report.notes.push_back("conditioning on deterministic node " + c +
                             ": a function of covariates on the causal pathway may block part "
                             "of the treatment effect");
    }
  }
}

}  // namespace

bool satisfies_backdoor(const Dag& dag, const NodeSet& treatments, const std::string& outcome,
                        const NodeSet& z) {
  require_nodes(dag, treatments);
  require_nodes(dag, z);
  dag.require(outcome);
  if (treatments.count(outcome))
    throw Error(Errc::OverlappingSets, "outcome is also a treatment: " + outcome);
  for (const auto& name : z)
    if (treatments.count(name) || name == outcome)
      throw Error(Errc::OverlappingSets, "conditioning set overlaps treatments/outcome: " + name);

  NodeSet treatment_descendants = relatives(dag, treatments, Relation::Descendants);
  for (const auto& name : z)
    if (treatment_descendants.count(name)) return false;
  for (const auto& t : treatments)
    if (has_open_backdoor(dag, t, treatments, outcome, z, {})) return false;
  return true;
}

std::vector<NodeSet> minimal_adjustment_sets(const Dag& dag, const NodeSet& treatments,
                                             const std::string& outcome, const NodeSet& candidates) {
  require_nodes(dag, treatments);
  dag.require(outcome);
  if (candidates.size() > kMaxAdjustmentCandidates)
    throw Error(Errc::CandidateSetTooLarge,
                "adjustment search is exhaustive; at most " +
                    std::to_string(kMaxAdjustmentCandidates) + " candidates");
  NodeSet treatment_descendants = relatives(dag, treatments, Relation::Descendants);
  for (const auto& name : candidates) {
    dag.require(name);
    if (dag.kind(name) == NodeKind::Latent)
      throw Error(Errc::InvalidQuery, "latent node in candidates: " + name);
    if (treatment_descendants.count(name))
      throw Error(Errc::InvalidQuery, "candidate is a descendant of a treatment: " + name);
    if (treatments.count(name) || name == outcome)
      throw Error(Errc::OverlappingSets, "candidate overlaps treatments/outcome: " + name);
  }

  std::vector<std::string> pool(candidates.begin(), candidates.end());
  const std::size_t n = pool.size();
  std::vector<NodeSet> found;

  // Size-ascending, lexicographic within each size; a passing set is minimal
  // iff no previously found set is contained in it.
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<std::size_t> comb(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      NodeSet subset;
      for (std::size_t idx : comb) subset.insert(pool[idx]);
      bool dominated = std::any_of(found.begin(), found.end(), [&subset](const NodeSet& smaller) {
        return std::includes(subset.begin(), subset.end(), smaller.begin(), smaller.end());
      });
      if (!dominated && satisfies_backdoor(dag, treatments, outcome, subset))
        found.push_back(std::move(subset));
      if (size == 0) break;
      // next combination
      std::size_t i = size;
      while (i > 0) {
        --i;
        if (comb[i] != i + n - size) {
          ++comb[i];
          for (std::size_t j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
          break;
        }
        if (i == 0) {
          i = size + 1;  // done marker
          break;
        }
      }
      if (i == size + 1) break;
    }
  }
  return found;
}

std::optional<std::string> find_recanting_witness(const Dag& dag, const NodeSet& treatments,
                                                  const std::string& outcome,
                                                  const ActivationSpec& spec) {
  require_nodes(dag, treatments);
  dag.require(outcome);
  for (const auto& [from, to] : spec.deactivated_edges)
    if (!dag.has_edge(from, to))
      throw Error(Errc::DanglingEdge, "deactivated edge not in graph: " + from + " -> " + to);

  auto deactivated = [&spec](int from, int to, const Dag& d) {
    return spec.deactivated_edges.count({d.name_of(from), d.name_of(to)}) > 0;
  };

  // Forward reachability along activated edges only.
  auto activated_reach = [&](const std::vector<int>& seeds) {
    std::vector<bool> seen(dag.node_count(), false);
    std::deque<int> queue;
    for (int s : seeds) {
      seen[static_cast<std::size_t>(s)] = true;
      queue.push_back(s);
    }
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      for (int c : dag.child_ids(node)) {
        if (!deactivated(node, c, dag) && !seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = true;
          queue.push_back(c);
        }
      }
    }
    return seen;
  };

  std::vector<int> treatment_ids;
  for (const auto& t : treatments) treatment_ids.push_back(dag.require(t));
  const int outcome_id = dag.require(outcome);

  // (i): nodes with an activated directed path from some treatment.
  std::vector<bool> activated_from_treatment(dag.node_count(), false);
  {
    auto reach = activated_reach(treatment_ids);
    for (int t : treatment_ids) reach[static_cast<std::size_t>(t)] = false;
    activated_from_treatment = reach;
  }

  // (iii): nodes with an activated directed path to the outcome. Computed by
  // backward search over activated edges.
  std::vector<bool> activated_to_outcome(dag.node_count(), false);
  {
    std::deque<int> queue{outcome_id};
    std::vector<bool> seen(dag.node_count(), false);
    seen[static_cast<std::size_t>(outcome_id)] = true;
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      for (int p : dag.parent_ids(node)) {
        if (!deactivated(p, node, dag) && !seen[static_cast<std::size_t>(p)]) {
          seen[static_cast<std::size_t>(p)] = true;
          queue.push_back(p);
        }
      }
    }
    activated_to_outcome = seen;
    activated_to_outcome[static_cast<std::size_t>(outcome_id)] = false;
  }

  // (ii): W -> ... -> outcome containing >= 1 deactivated edge, i.e. some
  // deactivated edge (u, v) with u a descendant-or-self of W and v an
  // ancestor-or-self of the outcome.
  NodeSet outcome_anc = relatives(dag, {outcome}, Relation::Ancestors);
  outcome_anc.insert(outcome);
  auto has_deactivated_route = [&](const std::string& w) {
    NodeSet w_desc = relatives(dag, {w}, Relation::Descendants);
    w_desc.insert(w);
    for (const auto& [from, to] : spec.deactivated_edges)
      if (w_desc.count(from) && outcome_anc.count(to)) return true;
    return false;
  };

  for (const auto& name : dag.node_names()) {
    if (treatments.count(name) || name == outcome) continue;
    int id = dag.index_of(name);
    if (!activated_from_treatment[static_cast<std::size_t>(id)]) continue;
    if (!activated_to_outcome[static_cast<std::size_t>(id)]) continue;
    if (has_deactivated_route(name)) return name;
  }
  return std::nullopt;
}

IdentReport check_natural_effects(const Dag& dag, const EffectQuery& q) {
  validate_query(dag, q);
  if (q.mediators.empty()) throw Error(Errc::IncompleteSpec, "natural effects need mediators");

  IdentReport report;
  report.status[Assumption::ExchAY] =
      exchangeability_status(dag, q.treatments, q.outcome, q.conditioning, q.mediators);
  {
    NodeSet given = q.conditioning;
    given.insert(q.treatments.begin(), q.treatments.end());
    report.status[Assumption::ExchMY] =
        exchangeability_status(dag, q.mediators, q.outcome, given, {});
  }
  {
    AssumptionStatus st;
    st.holds = true;
    for (const auto& m : q.mediators) {
      AssumptionStatus per = exchangeability_status(dag, q.treatments, m, q.conditioning, {});
      if (!per.holds) {
        st = per;
        break;
      }
    }
    report.status[Assumption::ExchAM] = st;
  }
  {
    // Fixing the mediator counterfactual freezes every arrow into it.
    ActivationSpec spec;
    for (const auto& m : q.mediators)
      for (const auto& parent : dag.parents(m)) spec.deactivated_edges.insert({parent, m});
    AssumptionStatus st;
    auto witness = find_recanting_witness(dag, q.treatments, q.outcome, spec);
    st.holds = !witness.has_value();
    st.witness_node = witness;
    report.status[Assumption::RecantingWitness] = st;
  }
  add_deterministic_note(dag, q.conditioning, report);
  return report;
}

IdentReport check_controlled_direct(const Dag& dag, const EffectQuery& q) {
  validate_query(dag, q);
  if (q.mediators.empty()) throw Error(Errc::IncompleteSpec, "controlled direct effects need mediators");

  IdentReport report;
  report.status[Assumption::ExchAY] =
      exchangeability_status(dag, q.treatments, q.outcome, q.conditioning, q.mediators);
  {
    NodeSet given = q.conditioning;
    given.insert(q.treatments.begin(), q.treatments.end());
    report.status[Assumption::ExchMY] =
        exchangeability_status(dag, q.mediators, q.outcome, given, {});
  }
  add_deterministic_note(dag, q.conditioning, report);
  return report;
}

std::pair<bool, std::optional<Path>> check_block_exchangeability(const Dag& dag,
                                                                 const EffectQuery& q) {
  validate_query(dag, q);
  if (!q.mediators.empty())
    throw Error(Errc::InvalidQuery, "block exchangeability takes no mediators");
  bool holds = satisfies_backdoor(dag, q.treatments, q.outcome, q.conditioning);
  std::optional<Path> witness;
  if (!holds) witness = open_backdoor_witness(dag, q.treatments, q.outcome, q.conditioning, {});
  return {holds, witness};
}

}  // namespace interdag

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "interdag/errors.hpp"

namespace interdag {

enum class NodeKind { Observed, Latent, Deterministic };

using NodeSet = std::set<std::string>;
using Edge = std::pair<std::string, std::string>;  // (parent, child)

const char* node_kind_name(NodeKind kind);

/// Immutable directed acyclic graph with named, role-tagged nodes.
///
/// Nodes are stored in lexicographic name order, which fixes the iteration
/// order of every query and makes all outputs reproducible.
class Dag {
 public:
  Dag() = default;

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool has_node(const std::string& name) const;
  NodeKind kind(const std::string& name) const;
  bool has_edge(const std::string& parent, const std::string& child) const;

  /// All node names, sorted.
  const std::vector<std::string>& node_names() const { return names_; }
  /// All edges as (parent, child), sorted.
  std::vector<Edge> edge_list() const;

  std::vector<std::string> parents(const std::string& name) const;
  std::vector<std::string> children(const std::string& name) const;

  bool operator==(const Dag& other) const;

  // Index-based access for algorithm internals.
  int index_of(const std::string& name) const;  // -1 when absent
  const std::string& name_of(int index) const { return names_[static_cast<std::size_t>(index)]; }
  NodeKind kind_of(int index) const { return kinds_[static_cast<std::size_t>(index)]; }
  const std::vector<int>& parent_ids(int index) const { return parents_[static_cast<std::size_t>(index)]; }
  const std::vector<int>& child_ids(int index) const { return children_[static_cast<std::size_t>(index)]; }
  int require(const std::string& name) const;  // throws UnknownNode

 private:
  friend Dag build_dag(const std::vector<std::pair<std::string, NodeKind>>& nodes,
                       const std::vector<Edge>& edges);

  std::vector<std::string> names_;           // sorted
  std::vector<NodeKind> kinds_;              // aligned with names_
  std::vector<std::vector<int>> parents_;    // sorted adjacency
  std::vector<std::vector<int>> children_;   // sorted adjacency
  std::size_t edge_count_ = 0;
};

/// Validates and constructs a Dag.
///
/// Throws DuplicateNode, DanglingEdge, or CycleDetected (the message names
/// one offending cycle). Deterministic nodes must have at least one parent.
Dag build_dag(const std::vector<std::pair<std::string, NodeKind>>& nodes,
              const std::vector<Edge>& edges);

enum class Relation { Parents, Children, Ancestors, Descendants };

/// One-step or transitive relatives of a seed set. The transitive closures
/// exclude the seed members themselves.
NodeSet relatives(const Dag& dag, const NodeSet& seed, Relation relation);

enum class Step { Forward, Backward };

/// An undirected walk through the graph; steps[i] tells whether the edge
/// between nodes[i] and nodes[i+1] points forward (nodes[i] -> nodes[i+1])
/// or backward.
struct Path {
  std::vector<std::string> nodes;
  std::vector<Step> steps;

  bool operator==(const Path& other) const = default;
};

std::string format_path(const Path& path);

inline constexpr std::size_t kDefaultPathEnumerationBound = 16;

/// Every simple path between x and y, in lexicographic order of the node
/// sequences. Path enumeration is exponential, so graphs larger than
/// max_nodes are rejected with EnumerationBound.
std::vector<Path> enumerate_paths(const Dag& dag, const std::string& x, const std::string& y,
                                  std::size_t max_nodes = kDefaultPathEnumerationBound);

/// True iff the path is blocked by z: some interior non-collider is in z, or
/// some collider has neither itself nor any descendant in z.
bool path_blocked(const Dag& dag, const Path& path, const NodeSet& z);

/// Reachability-based d-separation (no node bound). Contractually equal to
/// "every path between x and y is blocked by z".
bool d_separated(const Dag& dag, const NodeSet& x, const NodeSet& y, const NodeSet& z);

/// The subset of enumerate_paths(a, y) whose first step points into a.
std::vector<Path> backdoor_paths(const Dag& dag, const std::string& a, const std::string& y,
                                 std::size_t max_nodes = kDefaultPathEnumerationBound);

/// DOT subset: `digraph { n [kind=latent|deterministic]; a -> b; }`.
/// Unattributed nodes are Observed; statements separated by ';' or newline.
Dag parse_dot(const std::string& text);

/// Canonical (sorted) DOT text; parse_dot(to_dot(g)) == g.
std::string to_dot(const Dag& dag);

}  // namespace interdag

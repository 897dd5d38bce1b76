#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace partmpc {

/// Role of a node in a system graph.
enum class NodeKind : std::uint8_t { Input, State, Output, Agent };

std::string to_string(NodeKind k);

/// Directed graph with real-valued edge weights and kind-tagged nodes.
///
/// Node ids are dense indices 0..size()-1. An edge (u, v) means u influences
/// v; at most one edge is stored per ordered pair. Weights may be any finite
/// real, including negative. Self-loops are allowed.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  /// Creates n nodes of the given kind and returns the id of the first one.
  int add_nodes(int n, NodeKind kind);
  int add_node(NodeKind kind) { return add_nodes(1, kind); }

  /// Inserts or overwrites the edge u -> v.
  void set_edge(int u, int v, double w);

  bool has_edge(int u, int v) const;

  /// Weight of u -> v, or 0 when the edge is absent.
  double weight(int u, int v) const;

  int size() const { return static_cast<int>(kinds_.size()); }
  int edge_count() const;

  NodeKind kind(int v) const { return kinds_.at(v); }

  const std::map<int, double>& out_edges(int u) const { return adj_out_.at(u); }
  const std::map<int, double>& in_edges(int v) const { return adj_in_.at(v); }

  /// Nodes adjacent to v through an edge in either direction, v excluded.
  std::set<int> neighborhood(int v) const;

  /// Members of the subset that touch at least one node outside it.
  /// The result is always contained in the subset.
  std::set<int> frontier(const std::set<int>& subset) const;

  /// Sum of |w| over all edges.
  double total_abs_weight() const;

  void check_node(int v) const;

 private:
  std::vector<NodeKind> kinds_;
  std::vector<std::map<int, double>> adj_out_;
  std::vector<std::map<int, double>> adj_in_;
};

}  // namespace partmpc

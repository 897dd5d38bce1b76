#include "partmpc/graph.hpp"

#include <cmath>
#include <stdexcept>

namespace partmpc {

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Input: return "input";
    case NodeKind::State: return "state";
    case NodeKind::Output: return "output";
    case NodeKind::Agent: return "agent";
  }
  return "?";
}

int WeightedDigraph::add_nodes(int n, NodeKind kind) {
  if (n < 0) throw std::invalid_argument("add_nodes: negative count");
  int first = size();
  kinds_.insert(kinds_.end(), n, kind);
  adj_out_.resize(kinds_.size());
  adj_in_.resize(kinds_.size());
  return first;
}

void WeightedDigraph::check_node(int v) const {
  if (v < 0 || v >= size())
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
}

void WeightedDigraph::set_edge(int u, int v, double w) {
  check_node(u);
  check_node(v);
  if (!std::isfinite(w))
    throw std::invalid_argument("edge weight must be finite");
  adj_out_[u][v] = w;
  adj_in_[v][u] = w;
}

bool WeightedDigraph::has_edge(int u, int v) const {
  check_node(u);
  check_node(v);
  return adj_out_[u].count(v) != 0;
}

double WeightedDigraph::weight(int u, int v) const {
  check_node(u);
  check_node(v);
  auto it = adj_out_[u].find(v);
  return it == adj_out_[u].end() ? 0.0 : it->second;
}

int WeightedDigraph::edge_count() const {
  int n = 0;
  for (const auto& m : adj_out_) n += static_cast<int>(m.size());
  return n;
}

std::set<int> WeightedDigraph::neighborhood(int v) const {
  check_node(v);
  std::set<int> nb;
  for (const auto& [u, w] : adj_out_[v]) {
    (void)w;
    if (u != v) nb.insert(u);
  }
  for (const auto& [u, w] : adj_in_[v]) {
    (void)w;
    if (u != v) nb.insert(u);
  }
  return nb;
}

std::set<int> WeightedDigraph::frontier(const std::set<int>& subset) const {
  std::set<int> fr;
  for (int v : subset) {
    check_node(v);
    for (int u : neighborhood(v)) {
      if (!subset.count(u)) {
        fr.insert(v);
        break;
      }
    }
  }
  return fr;
}

double WeightedDigraph::total_abs_weight() const {
  double s = 0.0;
  for (const auto& m : adj_out_)
    for (const auto& [v, w] : m) {
      (void)v;
      s += std::abs(w);
    }
  return s;
}

}  // namespace partmpc

#include "partmpc/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace partmpc {
namespace {

void check_sizes(const WeightedDigraph& g, const Partition& p) {
  if (g.size() != p.size())
    throw std::invalid_argument("partition size does not match graph size");
}

}  // namespace

double bqp_objective(const WeightedDigraph& g, const Partition& p, double alpha) {
  check_sizes(g, p);
  const int n = g.size();

  double inter = 0.0, intra = 0.0;
  for (int i = 0; i < n; ++i) {
    const double wii = std::abs(g.weight(i, i));
    for (int j = 0; j < n; ++j) {
      const double wij = std::abs(g.weight(i, j));
      const double wji = std::abs(g.weight(j, i));
      if (p.set_of(i) == p.set_of(j)) {
        intra += wii + wij + wji + std::abs(g.weight(j, j));
      } else {
        inter += wij + wji;
      }
    }
  }

  double size = 0.0;
  for (int s : p.set_sizes()) size += static_cast<double>(s) * s;
  return inter - intra + alpha * size;
}

double partition_index(const WeightedDigraph& g, const Partition& p, double alpha) {
  check_sizes(g, p);
  const int n = g.size();

  double intra = 0.0, inter = 0.0;
  for (int u = 0; u < n; ++u) {
    for (const auto& [v, w] : g.out_edges(u)) {
      if (p.set_of(u) == p.set_of(v)) intra += std::abs(w);
    }
    for (int v : g.neighborhood(u)) {
      if (p.set_of(u) != p.set_of(v))
        inter += std::abs(g.weight(u, v)) + std::abs(g.weight(v, u));
    }
  }

  double size = 0.0;
  for (int s : p.set_sizes()) size += static_cast<double>(s) * s;
  return intra / (1.0 + inter) + alpha / (1.0 + size);
}

Eigen::MatrixXd modularity_adjacency(const WeightedDigraph& g, bool weighted) {
  const int n = g.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (const auto& [v, w] : g.out_edges(u)) {
      if (u == v) continue;  // self-loops carry no grouping information
      if (weighted) {
        a(u, v) += w;
        a(v, u) += w;
      } else {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
      }
    }
  return a;
}

double modularity(const WeightedDigraph& g, const Partition& p, bool weighted) {
  check_sizes(g, p);
  const Eigen::MatrixXd a = modularity_adjacency(g, weighted);
  const double two_m = a.sum();
  if (two_m == 0.0)
    throw std::invalid_argument("modularity is undefined for a graph with no edges");
  const Eigen::VectorXd k = a.rowwise().sum();

  double q = 0.0;
  const int n = g.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.set_of(i) == p.set_of(j)) q += a(i, j) - k(i) * k(j) / two_m;
  return q / two_m;
}

}  // namespace partmpc

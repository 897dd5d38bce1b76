#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "partmpc/graph.hpp"
#include "partmpc/model.hpp"

namespace partmpc {

/// System graph of a single (possibly nonlinear) system together with the
/// node layout: inputs first, then states, then outputs.
struct SystemGraph {
  WeightedDigraph g;
  int n_u = 0;
  int n_x = 0;
  int n_y = 0;

  int input_node(int i) const { return i; }
  int state_node(int i) const { return n_u + i; }
  int output_node(int i) const { return n_u + n_x + i; }
};

/// Builds the graph of a linear system. Nodes are inputs, states and outputs;
/// an edge points from the influencing variable to the influenced one and
/// carries the corresponding matrix entry:
///   u_i -> x_j with weight B(j, i),
///   x_i -> x_j with weight A(j, i),
///   x_i -> y_j with weight C(j, i).
/// Exact zeros produce no edge.
SystemGraph build_associated_graph(const LinearDynamics& sys);

using VectorField =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& u)>;
using OutputMap = std::function<Eigen::VectorXd(const Eigen::VectorXd& x)>;

struct FiniteDifferenceOptions {
  double step = 1e-5;      // central difference half-width
  double zero_tol = 1e-9;  // estimates at or below this create no edge
};

/// Graph of a nonlinear system obtained by estimating the Jacobians of f
/// (and optionally h) at (x0, u0) with central finite differences. An edge is
/// created when the magnitude of the estimated partial derivative exceeds
/// options.zero_tol, and its weight is the estimate itself.
SystemGraph build_associated_graph_nonlinear(const VectorField& f, int n_x, int n_u,
                                             const Eigen::VectorXd& x0,
                                             const Eigen::VectorXd& u0,
                                             const OutputMap& h = nullptr, int n_y = 0,
                                             const FiniteDifferenceOptions& options = {});

/// One constraint row together with the variables it touches (0-based).
struct ConstraintIncidence {
  std::vector<int> states;
  std::vector<int> inputs;
};

/// Variable/constraint bipartite graph. Layout: x nodes first, then u nodes,
/// then one node per constraint; each incidence becomes a unit-weight edge
/// from the variable to the constraint node.
struct BipartiteGraph {
  WeightedDigraph g;
  int n_x = 0;
  int n_u = 0;
  int n_c = 0;

  int state_node(int i) const { return i; }
  int input_node(int i) const { return n_x + i; }
  int constraint_node(int i) const { return n_x + n_u + i; }
};

BipartiteGraph build_bipartite_graph(int n_x, int n_u,
                                     const std::vector<ConstraintIncidence>& constraints);

/// Agent-level graph of a network: one node per subsystem, and for every
/// coupling an edge from its source to its target weighted by the Frobenius
/// norm of the gain. Zero-norm gains produce no edge.
WeightedDigraph build_agent_graph(const NetworkModel& net);

}  // namespace partmpc

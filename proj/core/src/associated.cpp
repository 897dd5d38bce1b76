#include "partmpc/associated.hpp"

#include <cmath>
#include <stdexcept>

namespace partmpc {

SystemGraph build_associated_graph(const LinearDynamics& sys) {
  const int n_x = static_cast<int>(sys.A.rows());
  const int n_u = static_cast<int>(sys.B.cols());
  const int n_y = sys.C ? static_cast<int>(sys.C->rows()) : 0;
  if (sys.A.cols() != n_x) throw std::invalid_argument("A must be square");
  if (sys.B.rows() != n_x) throw std::invalid_argument("B must have n_x rows");
  if (sys.C && sys.C->cols() != n_x) throw std::invalid_argument("C must have n_x columns");

  SystemGraph sg;
  sg.n_u = n_u;
  sg.n_x = n_x;
  sg.n_y = n_y;
  sg.g.add_nodes(n_u, NodeKind::Input);
  sg.g.add_nodes(n_x, NodeKind::State);
  sg.g.add_nodes(n_y, NodeKind::Output);

  for (int j = 0; j < n_x; ++j)
    for (int i = 0; i < n_u; ++i)
      if (sys.B(j, i) != 0.0) sg.g.set_edge(sg.input_node(i), sg.state_node(j), sys.B(j, i));
  for (int j = 0; j < n_x; ++j)
    for (int i = 0; i < n_x; ++i)
      if (sys.A(j, i) != 0.0) sg.g.set_edge(sg.state_node(i), sg.state_node(j), sys.A(j, i));
  if (sys.C)
    for (int j = 0; j < n_y; ++j)
      for (int i = 0; i < n_x; ++i)
        if ((*sys.C)(j, i) != 0.0)
          sg.g.set_edge(sg.state_node(i), sg.output_node(j), (*sys.C)(j, i));
  return sg;
}

SystemGraph build_associated_graph_nonlinear(const VectorField& f, int n_x, int n_u,
                                             const Eigen::VectorXd& x0,
                                             const Eigen::VectorXd& u0, const OutputMap& h,
                                             int n_y,
                                             const FiniteDifferenceOptions& options) {
  if (!f) throw std::invalid_argument("vector field is required");
  if (x0.size() != n_x || u0.size() != n_u)
    throw std::invalid_argument("operating point does not match declared dimensions");
  if (options.step <= 0.0) throw std::invalid_argument("difference step must be positive");

  SystemGraph sg;
  sg.n_u = n_u;
  sg.n_x = n_x;
  sg.n_y = h ? n_y : 0;
  sg.g.add_nodes(n_u, NodeKind::Input);
  sg.g.add_nodes(n_x, NodeKind::State);
  sg.g.add_nodes(sg.n_y, NodeKind::Output);

  const double hstep = options.step;
  auto column = [&](const Eigen::VectorXd& plus, const Eigen::VectorXd& minus) {
    return ((plus - minus) / (2.0 * hstep)).eval();
  };

  for (int i = 0; i < n_x; ++i) {
    Eigen::VectorXd xp = x0, xm = x0;
    xp(i) += hstep;
    xm(i) -= hstep;
    Eigen::VectorXd d = column(f(xp, u0), f(xm, u0));
    if (d.size() != n_x) throw std::invalid_argument("vector field output has wrong size");
    for (int j = 0; j < n_x; ++j)
      if (std::abs(d(j)) > options.zero_tol)
        sg.g.set_edge(sg.state_node(i), sg.state_node(j), d(j));
    if (h) {
      Eigen::VectorXd dh = column(h(xp), h(xm));
      if (dh.size() != sg.n_y) throw std::invalid_argument("output map has wrong size");
      for (int j = 0; j < sg.n_y; ++j)
        if (std::abs(dh(j)) > options.zero_tol)
          sg.g.set_edge(sg.state_node(i), sg.output_node(j), dh(j));
    }
  }
  for (int i = 0; i < n_u; ++i) {
    Eigen::VectorXd up = u0, um = u0;
    up(i) += hstep;
    um(i) -= hstep;
    Eigen::VectorXd d = column(f(x0, up), f(x0, um));
    for (int j = 0; j < n_x; ++j)
      if (std::abs(d(j)) > options.zero_tol)
        sg.g.set_edge(sg.input_node(i), sg.state_node(j), d(j));
  }
  return sg;
}

BipartiteGraph build_bipartite_graph(int n_x, int n_u,
                                     const std::vector<ConstraintIncidence>& constraints) {
  if (n_x < 0 || n_u < 0) throw std::invalid_argument("negative variable count");
  BipartiteGraph bg;
  bg.n_x = n_x;
  bg.n_u = n_u;
  bg.n_c = static_cast<int>(constraints.size());
  bg.g.add_nodes(n_x, NodeKind::State);
  bg.g.add_nodes(n_u, NodeKind::Input);
  bg.g.add_nodes(bg.n_c, NodeKind::Output);

  for (int c = 0; c < bg.n_c; ++c) {
    for (int v : constraints[c].states) {
      if (v < 0 || v >= n_x) throw std::invalid_argument("constraint references unknown state");
      bg.g.set_edge(bg.state_node(v), bg.constraint_node(c), 1.0);
    }
    for (int v : constraints[c].inputs) {
      if (v < 0 || v >= n_u) throw std::invalid_argument("constraint references unknown input");
      bg.g.set_edge(bg.input_node(v), bg.constraint_node(c), 1.0);
    }
  }
  return bg;
}

}  // namespace partmpc

#include "partmpc/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace partmpc {

namespace {

void check_inputs(const std::vector<Eigen::VectorXd>& u, int steps, int n_u,
                  const char* who) {
  if (steps < 0) throw std::invalid_argument(std::string(who) + ": negative step count");
  if (static_cast<int>(u.size()) < steps) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(u.size()) +
                                " inputs for " + std::to_string(steps) + " steps");
  }
  for (int k = 0; k < steps; ++k) {
    if (u[static_cast<std::size_t>(k)].size() != n_u) {
      throw std::invalid_argument(std::string(who) + ": input at step " +
                                  std::to_string(k) + " has the wrong dimension");
    }
  }
}

}  // namespace

HybridTrajectory simulate_pwa(const NetworkModel& net, const TopologyLayerSpec& layers,
                              const Eigen::VectorXd& x0,
                              const std::vector<Eigen::VectorXd>& u, int steps) {
  net.validate();
  layers.validate(net);

  const int n = net.size();
  std::vector<int> x_off, u_off;
  int n_x = 0, n_u = 0;
  for (const SubsystemModel& sub : net.subsystems) {
    x_off.push_back(n_x);
    u_off.push_back(n_u);
    n_x += sub.n_x;
    n_u += sub.n_u;
  }
  if (x0.size() != n_x) throw std::invalid_argument("simulate_pwa: x0 has the wrong dimension");
  check_inputs(u, steps, n_u, "simulate_pwa");

  for (int i = 0; i < n; ++i) {
    const SubsystemModel& sub = net.subsystems[static_cast<std::size_t>(i)];
    if (!sub.state_box.contains(x0.segment(x_off[i], sub.n_x))) {
      throw std::invalid_argument("simulate_pwa: x0 of agent " + std::to_string(i + 1) +
                                  " lies outside its state box");
    }
  }

  // Which couplings carry layer stacks; order follows net.couplings.
  std::vector<const EdgeLayers*> stacks;
  for (const Coupling& c : net.couplings) {
    const EdgeLayers* entry = layers.find(c.from, c.to);
    if (!entry) {
      throw std::invalid_argument("simulate_pwa: no topology layers given for the coupling " +
                                  std::to_string(c.from + 1) + " -> " +
                                  std::to_string(c.to + 1));
    }
    stacks.push_back(entry);
  }

  HybridTrajectory traj;
  traj.x.push_back(x0);
  std::vector<char> flagged(static_cast<std::size_t>(n), 0);

  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd& x = traj.x.back();
    const Eigen::VectorXd& uk = u[static_cast<std::size_t>(k)];

    std::vector<int> link(net.couplings.size());
    std::vector<std::vector<int>> eps(net.couplings.size());
    for (std::size_t e = 0; e < net.couplings.size(); ++e) {
      const Coupling& c = net.couplings[e];
      const SubsystemModel& src = net.subsystems[static_cast<std::size_t>(c.from)];
      const Eigen::VectorXd x_from = x.segment(x_off[c.from], src.n_x);
      const Eigen::VectorXd u_from = uk.segment(u_off[c.from], src.n_u);
      std::vector<int> values;
      for (const TopologyLayer& layer : stacks[e]->layers) {
        values.push_back(layer_value(layer, k, x_from, u_from));
      }
      link[e] = compose_links(values);
      eps[e] = std::move(values);
    }

    Eigen::VectorXd next(n_x);
    for (int i = 0; i < n; ++i) {
      const SubsystemModel& sub = net.subsystems[static_cast<std::size_t>(i)];
      const Eigen::VectorXd xi = x.segment(x_off[i], sub.n_x);
      const Eigen::VectorXd ui = uk.segment(u_off[i], sub.n_u);
      if (sub.is_pwa()) {
        next(x_off[i]) = sub.coeff_a(xi(0)) * xi(0) + sub.coeff_b(xi(0)) * ui(0);
      } else {
        next.segment(x_off[i], sub.n_x) = sub.linear().A * xi + sub.linear().B * ui;
      }
    }
    for (std::size_t e = 0; e < net.couplings.size(); ++e) {
      if (link[e] == 0) continue;
      const Coupling& c = net.couplings[e];
      next.segment(x_off[c.to], net.subsystems[static_cast<std::size_t>(c.to)].n_x) +=
          c.gain * x.segment(x_off[c.from], net.subsystems[static_cast<std::size_t>(c.from)].n_x);
    }

    for (int i = 0; i < n; ++i) {
      const SubsystemModel& sub = net.subsystems[static_cast<std::size_t>(i)];
      if (!flagged[static_cast<std::size_t>(i)] &&
          !sub.state_box.contains(next.segment(x_off[i], sub.n_x))) {
        flagged[static_cast<std::size_t>(i)] = 1;
        traj.notes.push_back("agent " + std::to_string(i + 1) +
                             " left its state box at step " + std::to_string(k + 1));
      }
    }

    traj.link.push_back(std::move(link));
    traj.eps.push_back(std::move(eps));
    traj.x.push_back(std::move(next));
  }
  return traj;
}

HybridTrajectory simulate_mld(const MldSystem& mld, const Eigen::VectorXd& x0,
                              const std::vector<Eigen::VectorXd>& u, int steps) {
  if (x0.size() != mld.n_x) {
    throw std::invalid_argument("simulate_mld: x0 has the wrong dimension");
  }
  check_inputs(u, steps, mld.n_u, "simulate_mld");

  constexpr double kRowTol = 1e-12;
  HybridTrajectory traj;
  traj.x.push_back(x0);

  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd& x = traj.x.back();
    const Eigen::VectorXd& uk = u[static_cast<std::size_t>(k)];

    // Stacked step variables [x; u; eps; z; x_next].
    Eigen::VectorXd v = Eigen::VectorXd::Zero(mld.width());
    v.head(mld.n_x) = x;
    v.segment(mld.n_x, mld.n_u) = uk;

    std::vector<int> link(mld.edges.size());
    std::vector<std::vector<int>> eps(mld.edges.size());
    std::vector<std::vector<Eigen::VectorXd>> zrec(mld.edges.size());

    for (std::size_t e = 0; e < mld.edges.size(); ++e) {
      const MldEdge& edge = mld.edges[e];
      const int dim = static_cast<int>(edge.gain.rows());
      const Eigen::VectorXd x_from =
          x.segment(mld.x_offset[edge.from], edge.gain.cols());

      Eigen::VectorXd carry = edge.gain * x_from;
      int composed = 1;
      for (int q = 1; q <= edge.levels; ++q) {
        const TopologyLayer& layer = edge.layers[static_cast<std::size_t>(q - 1)];
        int value = 0;
        if (edge.empty_guard[static_cast<std::size_t>(q - 1)]) {
          value = 0;
        } else if (layer.kind == LayerKind::StateDependent) {
          // The binary is free when the guard holds; take the active choice,
          // matching the direct piecewise simulation.
          const Eigen::VectorXd slack = layer.guard_s * x_from - layer.guard_t;
          value = (slack.array() <= 0.0).all() ? 1 : 0;
        } else if (layer.schedule.empty()) {
          value = 1;
        } else if (k < static_cast<int>(layer.schedule.size())) {
          value = layer.schedule[static_cast<std::size_t>(k)];
        } else {
          throw std::out_of_range("simulate_mld: " + to_string(layer.kind) +
                                  " schedule of coupling " + std::to_string(edge.from + 1) +
                                  " -> " + std::to_string(edge.to + 1) +
                                  " ends before step " + std::to_string(k));
        }
        composed *= value;
        if (value == 0) carry.setZero();
        v(mld.var_eps(static_cast<int>(e), q)) = value;
        for (int i = 0; i < dim; ++i) {
          v(mld.var_z(static_cast<int>(e), q, i)) = carry(i);
        }
        eps[e].push_back(value);
        zrec[e].push_back(carry);
      }
      link[e] = composed;
    }

    // Advance, then check every band against the assembled variables.
    Eigen::VectorXd next = mld.a_local * x + mld.b_local * uk;
    for (std::size_t e = 0; e < mld.edges.size(); ++e) {
      const MldEdge& edge = mld.edges[e];
      next.segment(mld.x_offset[edge.to], edge.gain.rows()) += zrec[e].back();
    }
    v.tail(mld.n_x) = next;

    for (const MldRow& row : mld.rows) {
      const double lhs = row.a.dot(v);
      const double gap = row.equality ? std::abs(lhs - row.rhs) : lhs - row.rhs;
      if (gap > kRowTol) {
        throw std::runtime_error("simulate_mld: step " + std::to_string(k) +
                                 ": violated " + mld.row_label(row) + " by " +
                                 std::to_string(gap));
      }
    }

    traj.link.push_back(std::move(link));
    traj.eps.push_back(std::move(eps));
    traj.z.push_back(std::move(zrec));
    traj.x.push_back(std::move(next));
  }
  return traj;
}

}  // namespace partmpc

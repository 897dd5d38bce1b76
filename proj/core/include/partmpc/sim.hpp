#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "partmpc/layers.hpp"
#include "partmpc/mld.hpp"
#include "partmpc/model.hpp"

namespace partmpc {

/// Open-loop trajectory with the binary record. x has steps+1 entries; the
/// per-step fields are indexed by the edge order of the simulated system.
struct HybridTrajectory {
  std::vector<Eigen::VectorXd> x;
  std::vector<std::vector<int>> link;                     // [step][edge] composed binary
  std::vector<std::vector<std::vector<int>>> eps;         // [step][edge][level]
  std::vector<std::vector<std::vector<Eigen::VectorXd>>> z;  // [step][edge][level-1], MLD only
  std::vector<std::string> notes;                         // box departures and the like
};

/// Steps the piecewise-affine network directly: per step the guards are
/// evaluated, the layer binaries composed, and active couplings applied.
/// x0 must sit inside the state box; a trajectory that later leaves the box
/// is flagged in notes and the simulation continues.
HybridTrajectory simulate_pwa(const NetworkModel& net, const TopologyLayerSpec& layers,
                              const Eigen::VectorXd& x0,
                              const std::vector<Eigen::VectorXd>& u, int steps);

/// Steps the compiled constraint system: binaries follow their guards and
/// schedules, auxiliaries cascade through the levels, and every band is
/// checked before the state advances. A violated band (bounds too small for
/// the visited states) is a hard error naming the row.
HybridTrajectory simulate_mld(const MldSystem& mld, const Eigen::VectorXd& x0,
                              const std::vector<Eigen::VectorXd>& u, int steps);

}  // namespace partmpc

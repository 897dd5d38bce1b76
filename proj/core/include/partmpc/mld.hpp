#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "partmpc/layers.hpp"
#include "partmpc/model.hpp"

namespace partmpc {

/// Bounds of a coupling term over the source state box: row_max holds the
/// componentwise maximum of |gain * x|, big the largest row (the band
/// constant), small its negation.
struct BigM {
  Eigen::VectorXd row_max;
  double big = 0.0;
  double small = 0.0;
};

/// Exact box extrema by sign-based vertex selection.
BigM compute_bigM(const Eigen::MatrixXd& gain, const Box& state_box);

/// Rowwise maximum of S x + R u - T over the two boxes; the indicator-band
/// constant of a state-dependent guard.
Eigen::VectorXd compute_guard_bigM(const Eigen::MatrixXd& s, const Eigen::MatrixXd& r,
                                   const Eigen::VectorXd& t, const Box& state_box,
                                   const Box& input_box);

/// Rowwise minimum of S x + R u - T over the two boxes; a positive entry
/// proves the guard region empty.
Eigen::VectorXd compute_guard_min(const Eigen::MatrixXd& s, const Eigen::MatrixXd& r,
                                  const Eigen::VectorXd& t, const Box& state_box,
                                  const Box& input_box);

enum class MldRowKind : std::uint8_t {
  Indicator,      // S x - T <= M*(1 - eps)
  BinaryDomain,   // eps <= 1, or eps <= 0 when the guard region is empty
  ZUpperBinary,   // z <= M eps
  ZLowerBinary,   // z >= m eps
  ZUpperSource,   // z <= source - m (1 - eps)
  ZLowerSource,   // z >= source - M (1 - eps)
  Dynamics,       // x_next = A x + B u + sum z(top)
};

std::string to_string(MldRowKind kind);

/// One linear row over the stacked step variables [x; u; eps; z; x_next].
struct MldRow {
  Eigen::RowVectorXd a;
  double rhs = 0.0;
  bool equality = false;
  MldRowKind kind = MldRowKind::Dynamics;
  int edge = -1;   // index into MldSystem::edges, -1 for network-level rows
  int level = 0;   // 1-based layer level, 0 for network-level rows
};

/// Per-edge bookkeeping of the compiled system: variable offsets, constants
/// and the layer data needed to fix binaries during simulation.
struct MldEdge {
  int from = -1;
  int to = -1;
  Eigen::MatrixXd gain;
  int levels = 0;
  int eps_offset = 0;  // first binary, one per level, within the eps block
  int z_offset = 0;    // first auxiliary block, each of dim n_x(to)
  double big_m = 0.0;
  std::vector<TopologyLayer> layers;
  std::vector<char> empty_guard;  // per level: guard region proved empty
};

struct MldSystem {
  int n_agents = 0;
  std::vector<int> x_offset;  // per agent, into the x block
  std::vector<int> u_offset;
  int n_x = 0;
  int n_u = 0;
  int n_eps = 0;
  int n_z = 0;
  Eigen::MatrixXd a_local;  // block-diagonal local dynamics
  Eigen::MatrixXd b_local;
  Box state_box;  // stacked
  Box input_box;
  std::vector<MldEdge> edges;
  std::vector<MldRow> rows;
  std::vector<std::string> notes;

  // Column positions in the stacked step variable vector.
  int var_x(int agent, int i) const { return x_offset[agent] + i; }
  int var_u(int agent, int i) const { return n_x + u_offset[agent] + i; }
  int var_eps(int edge, int level) const {  // level is 1-based
    return n_x + n_u + edges[edge].eps_offset + level - 1;
  }
  int var_z(int edge, int level, int i) const;
  int var_x_next(int agent, int i) const {
    return n_x + n_u + n_eps + n_z + x_offset[agent] + i;
  }
  int width() const { return 2 * n_x + n_u + n_eps + n_z; }

  /// Human-readable position of a row, for diagnostics.
  std::string row_label(const MldRow& row) const;
};

/// Compiles a network with switched couplings into linear constraint bands
/// over (x, u, eps, z, x_next). Local dynamics must be linear; every coupling
/// needs a layer stack. Guard regions proved empty get a warning note and a
/// row pinning their binary to zero.
MldSystem to_mld(const NetworkModel& net, const TopologyLayerSpec& layers);

/// Plain-text listing, one constraint per line (coefficients, relation, rhs)
/// with a column-name header, for cross-checks against external solvers.
void export_mld_rows(std::ostream& out, const MldSystem& mld);
void export_mld_rows_file(const std::string& path, const MldSystem& mld);

}  // namespace partmpc

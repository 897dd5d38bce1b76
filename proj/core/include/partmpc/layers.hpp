#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "partmpc/model.hpp"

namespace partmpc {

enum class LayerKind : std::uint8_t {
  StateDependent,  // active while the source agent satisfies S x + R u <= T
  Decision,        // picked by the operator, supplied as a schedule
  Signal,          // exogenous binary sequence
};

std::string to_string(LayerKind kind);

/// One topological level of a coupling edge. State-dependent layers carry
/// guard data; decision and signal layers carry a binary schedule (an empty
/// schedule means constantly active).
struct TopologyLayer {
  LayerKind kind = LayerKind::Signal;
  Eigen::MatrixXd guard_s;  // rows x n_x(from)
  Eigen::MatrixXd guard_r;  // rows x n_u(from)
  Eigen::VectorXd guard_t;
  std::vector<int> schedule;

  static TopologyLayer state_dependent(Eigen::MatrixXd s, Eigen::MatrixXd r,
                                       Eigen::VectorXd t);
  static TopologyLayer decision(std::vector<int> schedule = {});
  static TopologyLayer signal(std::vector<int> schedule);
};

/// Layer stack of one directed coupling, ordered q = 1..N.
struct EdgeLayers {
  int from = -1;  // driving agent
  int to = -1;    // driven agent
  std::vector<TopologyLayer> layers;
};

struct TopologyLayerSpec {
  std::vector<EdgeLayers> edges;

  /// Common layer count across edges; throws when edges disagree or any edge
  /// has none.
  int levels() const;

  /// Entry for the coupling from -> to, or nullptr.
  const EdgeLayers* find(int from, int to) const;

  /// Checks guard dimensions and agent ids against the network.
  void validate(const NetworkModel& net) const;
};

/// Value of one layer at step t. State-dependent layers evaluate their guard
/// on the driving agent's state and input (boundary points count as active);
/// schedule-driven layers look up t and reject steps past the schedule end.
int layer_value(const TopologyLayer& layer, int t, const Eigen::VectorXd& x_from,
                const Eigen::VectorXd& u_from);

/// Product of the given per-layer binaries; rejects an empty list and values
/// outside {0, 1}.
int compose_links(const std::vector<int>& layer_values);

/// Product across the layer stack of one edge at step t.
int compose_links(const EdgeLayers& edge, int t, const Eigen::VectorXd& x_from,
                  const Eigen::VectorXd& u_from);

/// Layer files are line-oriented: one line per (edge, level), levels in order.
///   layer <from> <to> state-dep <S> <R> <T>   (single-row guard, scalar agents)
///   layer <from> <to> decision [b0 b1 ...]
///   layer <from> <to> signal <b0> <b1> ...
/// Agent ids are 1-based; `#` starts a comment.
TopologyLayerSpec read_layers(std::istream& in);
TopologyLayerSpec read_layers_file(const std::string& path);
void write_layers(std::ostream& out, const TopologyLayerSpec& spec);
void write_layers_file(const std::string& path, const TopologyLayerSpec& spec);

}  // namespace partmpc

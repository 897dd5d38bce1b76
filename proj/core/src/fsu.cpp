#include "partmpc/engines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace partmpc {

Partition select_fsu(const SystemGraph& sg) {
  const WeightedDigraph& g = sg.g;
  const int n = g.size();
  if (sg.n_u <= 0) {
    throw std::invalid_argument("select_fsu: the system graph has no input nodes");
  }

  // Each input node seeds one unit; everything else starts unassigned.
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < sg.n_u; ++i) {
    label[static_cast<std::size_t>(sg.input_node(i))] = i;
  }
  int remaining = n - sg.n_u;

  // Strength of the tie between two adjacent nodes, direction ignored.
  auto link = [&g](int u, int v) {
    return std::max(std::abs(g.weight(u, v)), std::abs(g.weight(v, u)));
  };

  while (remaining > 0) {
    int best_node = -1;
    int best_unit = -1;
    double best_strength = -1.0;
    for (int v = 0; v < n; ++v) {
      if (label[static_cast<std::size_t>(v)] >= 0) continue;
      double strength = -1.0;
      int unit = -1;
      for (int u : g.neighborhood(v)) {
        const int lu = label[static_cast<std::size_t>(u)];
        if (lu < 0) continue;
        const double w = link(u, v);
        if (w > strength || (w == strength && lu < unit)) {
          strength = w;
          unit = lu;
        }
      }
      if (unit < 0) continue;  // not adjacent to any assigned node yet
      // Scanning v in ascending order keeps the lowest node id on ties.
      if (strength > best_strength) {
        best_node = v;
        best_unit = unit;
        best_strength = strength;
      }
    }
    if (best_node < 0) {
      // Some node sits in a component without an input; name the first one.
      for (int v = 0; v < n; ++v) {
        if (label[static_cast<std::size_t>(v)] < 0) {
          throw std::runtime_error("select_fsu: " + to_string(g.kind(v)) + " node " +
                                   std::to_string(v) +
                                   " is not connected to any input node");
        }
      }
    }
    label[static_cast<std::size_t>(best_node)] = best_unit;
    --remaining;
  }

  return Partition(label);
}

}  // namespace partmpc

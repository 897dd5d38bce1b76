#include "partmpc/associated.hpp"

namespace partmpc {

WeightedDigraph build_agent_graph(const NetworkModel& net) {
  net.validate();
  WeightedDigraph g;
  g.add_nodes(net.size(), NodeKind::Agent);
  for (const auto& c : net.couplings) {
    double w = c.gain.norm();  // Frobenius
    if (w != 0.0) g.set_edge(c.from, c.to, w);
  }
  return g;
}

}  // namespace partmpc

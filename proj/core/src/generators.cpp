#include <random>

#include "partmpc/netio.hpp"

namespace partmpc {
namespace {

SubsystemModel scalar_switched_agent(double a, double b, double xlim, double ulim) {
  SubsystemModel s;
  s.n_x = 1;
  s.n_u = 1;
  PwaDynamics d;
  d.pos = {true, a, b};
  d.neg = {false, -a, b};
  s.dynamics = d;
  s.state_box = Box::uniform(1, -xlim, xlim);
  s.input_box = Box::uniform(1, -ulim, ulim);
  return s;
}

SubsystemModel scalar_linear_agent(double a, double b, double xlim, double ulim) {
  SubsystemModel s;
  s.n_x = 1;
  s.n_u = 1;
  LinearDynamics lin;
  lin.A = Eigen::MatrixXd::Constant(1, 1, a);
  lin.B = Eigen::MatrixXd::Constant(1, 1, b);
  s.dynamics = lin;
  s.state_box = Box::uniform(1, -xlim, xlim);
  s.input_box = Box::uniform(1, -ulim, ulim);
  return s;
}

void couple(NetworkModel& net, int to, int from, double w) {
  net.couplings.push_back({from, to, Eigen::MatrixXd::Constant(1, 1, w)});
}

void couple_both(NetworkModel& net, int a, int b, double w) {
  couple(net, a, b, w);
  couple(net, b, a, w);
}

// Influenced agent, influencing agent, gain; ids are 1-based.
struct BenchEdge {
  int i, j;
  double w;
};

constexpr BenchEdge kBenchmarkEdges[] = {
    {1, 25, 0.53},  {2, 3, 0.36},   {2, 12, 0.01},  {3, 33, 0.60},  {4, 26, 0.41},
    {5, 31, 0.47},  {6, 38, 0.32},  {7, 33, 0.24},  {8, 19, 0.24},  {9, 49, 0.20},
    {10, 40, 0.36}, {11, 35, 0.72}, {12, 2, 0.01},  {12, 10, 0.42}, {13, 7, 0.17},
    {14, 44, 0.44}, {15, 31, 0.67}, {16, 7, 0.46},  {17, 28, 0.42}, {18, 40, 0.76},
    {19, 14, 0.67}, {20, 31, 0.55}, {21, 34, 0.37}, {22, 4, 0.66},  {23, 1, 0.20},
    {24, 47, 0.51}, {25, 46, 0.78}, {26, 41, 0.10}, {27, 40, 0.60}, {28, 22, 0.35},
    {29, 47, 0.43}, {30, 46, 0.16}, {31, 13, 0.68}, {32, 15, 0.34}, {33, 10, 0.66},
    {34, 29, 0.19}, {35, 6, 0.43},  {36, 33, 0.60}, {37, 7, 0.41},  {38, 36, 0.40},
    {39, 46, 0.23}, {40, 36, 0.44}, {41, 35, 0.31}, {42, 39, 0.66}, {43, 38, 0.39},
    {44, 29, 0.19}, {45, 39, 0.49}, {46, 21, 0.69}, {47, 16, 0.40}, {48, 12, 0.29},
    {49, 12, 0.13}, {50, 40, 0.77},
};

}  // namespace

NetworkModel make_benchmark_network() {
  NetworkModel net;
  for (int i = 0; i < 50; ++i)
    net.subsystems.push_back(scalar_switched_agent(0.5, 1.0, 0.9, 0.5));
  for (const auto& e : kBenchmarkEdges) couple(net, e.i - 1, e.j - 1, e.w);
  net.validate();
  return net;
}

NetworkModel make_modular64_network() {
  NetworkModel net;
  for (int i = 0; i < 64; ++i)
    net.subsystems.push_back(scalar_linear_agent(0.5, 1.0, 1.0, 1.0));

  // Cliques of four.
  for (int m = 0; m < 16; ++m)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) couple_both(net, 4 * m + a, 4 * m + b, 0.1);

  // Within each group of sixteen, the four clique leads form a clique.
  for (int g = 0; g < 4; ++g)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        couple_both(net, 16 * g + 4 * a, 16 * g + 4 * b, 0.01);

  // The four group leads form a clique.
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) couple_both(net, 16 * a, 16 * b, 0.001);

  net.validate();
  return net;
}

NetworkModel make_random_network(int n, double density, std::uint64_t seed, bool pwa) {
  if (n <= 0) throw std::invalid_argument("random network needs at least one agent");
  if (density < 0.0 || density > 1.0)
    throw std::invalid_argument("density must lie in [0, 1]");
  NetworkModel net;
  for (int i = 0; i < n; ++i)
    net.subsystems.push_back(pwa ? scalar_switched_agent(0.5, 1.0, 0.9, 0.5)
                                 : scalar_linear_agent(0.5, 1.0, 0.9, 0.5));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> gain(0.05, 0.8);
  for (int to = 0; to < n; ++to)
    for (int from = 0; from < n; ++from) {
      if (to == from) continue;
      double c = coin(rng);
      double g = gain(rng);
      if (c < density) couple(net, to, from, g);
    }
  net.validate();
  return net;
}

}  // namespace partmpc

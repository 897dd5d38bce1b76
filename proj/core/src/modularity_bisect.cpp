#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "partmpc/engines.hpp"

namespace partmpc {

namespace {

// Modularity matrix restricted to a node subset, with the diagonal correction
// that makes s' * Bg * s / (2 * two_m) the exact modularity change of
// splitting the subset by the sign vector s.
Eigen::MatrixXd group_matrix(const Eigen::MatrixXd& b, const std::vector<int>& group) {
  const int m = static_cast<int>(group.size());
  Eigen::MatrixXd bg(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      bg(i, j) = b(group[static_cast<std::size_t>(i)], group[static_cast<std::size_t>(j)]);
    }
  }
  for (int i = 0; i < m; ++i) {
    bg(i, i) -= bg.row(i).sum();
  }
  return bg;
}

// Shifted power iteration for the algebraically largest eigenpair of a
// symmetric matrix. Returns false when the residual never reaches tolerance.
bool leading_eigenvector(const Eigen::MatrixXd& m, Eigen::VectorXd& v, int max_iter,
                         double tol, std::mt19937_64& rng) {
  const int n = static_cast<int>(m.rows());
  const double shift = m.cwiseAbs().rowwise().sum().maxCoeff();

  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  v.resize(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  if (v.norm() == 0.0) v.setOnes();
  v.normalize();

  const double scale = std::max(1.0, shift);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd mv = m * v;
    const double lambda = v.dot(mv);
    if ((mv - lambda * v).lpNorm<Eigen::Infinity>() <= tol * scale) return true;
    Eigen::VectorXd next = mv + shift * v;
    const double norm = next.norm();
    if (norm == 0.0) return false;  // v sits in the kernel of the shifted matrix
    v = next / norm;
  }
  return false;
}

// Kernighan-Lin rounds on the split quadratic form s' * Bg * s: every node
// flips once per round in best-gain order (even when the step loses), the
// round keeps its best prefix, and rounds repeat while they improve.
void sharpen_split(const Eigen::MatrixXd& bg, Eigen::VectorXd& s) {
  const int m = static_cast<int>(bg.rows());
  constexpr double kGainTol = 1e-12;

  for (int round = 0; round < 2 * m + 8; ++round) {
    Eigen::VectorXd bs = bg * s;
    double running = s.dot(bs);
    const double round_start = running;
    double best_running = running;
    Eigen::VectorXd best_s = s;

    std::vector<char> locked(static_cast<std::size_t>(m), 0);
    for (int step = 0; step < m; ++step) {
      int pick = -1;
      double pick_delta = 0.0;
      for (int i = 0; i < m; ++i) {
        if (locked[static_cast<std::size_t>(i)]) continue;
        const double delta = -4.0 * s(i) * bs(i) + 4.0 * bg(i, i);
        if (pick < 0 || delta > pick_delta) {
          pick = i;
          pick_delta = delta;
        }
      }
      bs -= 2.0 * s(pick) * bg.col(pick);
      s(pick) = -s(pick);
      locked[static_cast<std::size_t>(pick)] = 1;
      running += pick_delta;
      if (running > best_running) {
        best_running = running;
        best_s = s;
      }
    }

    s = best_s;
    if (best_running <= round_start + kGainTol) break;
  }
}

struct GroupSplit {
  std::vector<int> plus;   // group members with positive sign
  std::vector<int> minus;  // the rest
  double gain = 0.0;       // modularity increase of accepting the split
  bool fallback = false;   // power iteration stalled, random start used
};

GroupSplit split_group(const Eigen::MatrixXd& b, const std::vector<int>& group,
                       double two_m, const BisectOptions& options,
                       std::mt19937_64& rng) {
  GroupSplit out;
  const int m = static_cast<int>(group.size());
  if (m < 2) return out;

  const Eigen::MatrixXd bg = group_matrix(b, group);
  Eigen::VectorXd v;
  if (!leading_eigenvector(bg, v, options.power_iterations, options.power_tol, rng)) {
    out.fallback = true;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < m; ++i) v(i) = coin(rng) == 0 ? -1.0 : 1.0;
  }

  Eigen::VectorXd s(m);
  for (int i = 0; i < m; ++i) s(i) = v(i) >= 0.0 ? 1.0 : -1.0;
  sharpen_split(bg, s);

  out.gain = s.dot(bg * s) / (2.0 * two_m);
  for (int i = 0; i < m; ++i) {
    (s(i) > 0.0 ? out.plus : out.minus).push_back(group[static_cast<std::size_t>(i)]);
  }
  return out;
}

PartitionResult run_bisect(const WeightedDigraph& g, const BisectOptions& options,
                           bool recurse) {
  const int n = g.size();
  if (n == 0) throw std::invalid_argument("modularity_bisect: the graph has no nodes");

  const Eigen::MatrixXd a = modularity_adjacency(g, options.weighted);
  const double two_m = a.sum();
  if (two_m <= 0.0) {
    throw std::invalid_argument("modularity_bisect is undefined for a graph with no edges");
  }
  const Eigen::VectorXd k = a.rowwise().sum();
  const Eigen::MatrixXd b = a - (k * k.transpose()) / two_m;

  PartitionResult result;
  result.method = "modularity";
  std::mt19937_64 rng(options.seed);

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::deque<std::vector<int>> pending;
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  pending.push_back(std::move(all));

  int next_label = 1;
  while (!pending.empty()) {
    std::vector<int> group = std::move(pending.front());
    pending.pop_front();

    const GroupSplit split = split_group(b, group, two_m, options, rng);
    if (split.fallback) {
      result.notes.push_back("power iteration stalled on a " +
                             std::to_string(group.size()) +
                             "-node subset; used a seeded random split instead");
    }
    if (split.gain <= options.min_gain || split.plus.empty() || split.minus.empty()) {
      continue;  // keep the group whole
    }
    const int fresh = next_label++;
    for (int v : split.minus) labels[static_cast<std::size_t>(v)] = fresh;
    if (recurse) {
      pending.push_back(split.plus);
      pending.push_back(split.minus);
    }
  }

  result.partition = Partition::from_labels(labels);
  result.modularity = modularity(g, result.partition, options.weighted);
  return result;
}

}  // namespace

PartitionResult modularity_bisect(const WeightedDigraph& g, const BisectOptions& options) {
  return run_bisect(g, options, true);
}

PartitionResult modularity_bisect_once(const WeightedDigraph& g,
                                       const BisectOptions& options) {
  return run_bisect(g, options, false);
}

}  // namespace partmpc

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "partmpc/engines.hpp"

namespace partmpc {

namespace {

// Running aggregates behind the partition index:
//   intra: ordered |w| sum over same-set pairs (diagonal included),
//   inter: boundary sum accumulated from both sides of every cross edge,
//   sq:    sum of squared set sizes.
struct IndexParts {
  double intra = 0.0;
  double inter = 0.0;
  double sq = 0.0;

  double value(double alpha) const { return intra / (1.0 + inter) + alpha / (1.0 + sq); }
};

}  // namespace

PartitionResult greedy_partition(const WeightedDigraph& g, double alpha,
                                 const GreedyOptions& options,
                                 std::vector<double>* p_index_trace) {
  const int n = g.size();
  if (n == 0) throw std::invalid_argument("greedy_partition: the graph has no nodes");

  // s(u,v) = |w(u,v)| + |w(v,u)| for u != v, gathered per node.
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int u : g.neighborhood(v)) {
      const double s = std::abs(g.weight(v, u)) + std::abs(g.weight(u, v));
      if (s > 0.0) adj[static_cast<std::size_t>(v)].emplace_back(u, s);
    }
  }

  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  std::vector<int> size(static_cast<std::size_t>(n), 1);

  IndexParts parts;
  parts.sq = static_cast<double>(n);
  for (int v = 0; v < n; ++v) {
    parts.intra += std::abs(g.weight(v, v));
    for (const auto& [u, s] : adj[static_cast<std::size_t>(v)]) {
      (void)u;
      parts.inter += s;  // every cross pair enters once from each endpoint
    }
  }

  if (p_index_trace) {
    p_index_trace->clear();
    p_index_trace->push_back(parts.value(alpha));
  }

  constexpr double kGainTol = 1e-12;
  const int max_rounds = options.max_rounds > 0 ? options.max_rounds : 16 * n;
  PartitionResult result;

  for (int round = 0;; ++round) {
    if (round >= max_rounds) {
      result.notes.push_back("stopped at the round limit before reaching a local maximum");
      break;
    }
    const double base = parts.value(alpha);

    // Coupling between sets, c[a][b] = sum of s(u,v) across the (a, b) cut.
    std::vector<std::vector<double>> cut(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int u = 0; u < n; ++u) {
      const int a = labels[static_cast<std::size_t>(u)];
      for (const auto& [v, w] : g.out_edges(u)) {
        const int b = labels[static_cast<std::size_t>(v)];
        if (a != b) {
          cut[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += std::abs(w);
          cut[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] += std::abs(w);
        }
      }
    }

    double best_gain = kGainTol;
    bool found = false;
    bool is_merge = false;
    int arg_v = -1, arg_to = -1;  // transfer
    int arg_a = -1, arg_b = -1;   // merge
    IndexParts best_parts;

    // Single-node transfers, scanned (node, target) ascending.
    std::vector<double> to_set(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      const int a = labels[static_cast<std::size_t>(v)];
      std::fill(to_set.begin(), to_set.end(), 0.0);
      for (const auto& [u, s] : adj[static_cast<std::size_t>(v)]) {
        to_set[static_cast<std::size_t>(labels[static_cast<std::size_t>(u)])] += s;
      }
      for (int b = 0; b < n; ++b) {
        if (b == a || size[static_cast<std::size_t>(b)] == 0) continue;
        IndexParts cand = parts;
        const double to_a = to_set[static_cast<std::size_t>(a)];
        const double to_b = to_set[static_cast<std::size_t>(b)];
        cand.intra += to_b - to_a;
        cand.inter += 2.0 * (to_a - to_b);
        cand.sq += 2.0 * static_cast<double>(size[static_cast<std::size_t>(b)] -
                                             size[static_cast<std::size_t>(a)] + 1);
        const double gain = cand.value(alpha) - base;
        if (gain > best_gain) {
          best_gain = gain;
          found = true;
          is_merge = false;
          arg_v = v;
          arg_to = b;
          best_parts = cand;
        }
      }
    }

    // Whole-set merges, scanned (a, b) ascending.
    for (int a = 0; a < n; ++a) {
      if (size[static_cast<std::size_t>(a)] == 0) continue;
      for (int b = a + 1; b < n; ++b) {
        if (size[static_cast<std::size_t>(b)] == 0) continue;
        const double c = cut[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        IndexParts cand = parts;
        cand.intra += c;
        cand.inter -= 2.0 * c;
        cand.sq += 2.0 * static_cast<double>(size[static_cast<std::size_t>(a)]) *
                   static_cast<double>(size[static_cast<std::size_t>(b)]);
        const double gain = cand.value(alpha) - base;
        if (gain > best_gain) {
          best_gain = gain;
          found = true;
          is_merge = true;
          arg_a = a;
          arg_b = b;
          best_parts = cand;
        }
      }
    }

    if (!found) break;

    if (is_merge) {
      for (int v = 0; v < n; ++v) {
        if (labels[static_cast<std::size_t>(v)] == arg_b) labels[static_cast<std::size_t>(v)] = arg_a;
      }
      size[static_cast<std::size_t>(arg_a)] += size[static_cast<std::size_t>(arg_b)];
      size[static_cast<std::size_t>(arg_b)] = 0;
    } else {
      const int from = labels[static_cast<std::size_t>(arg_v)];
      labels[static_cast<std::size_t>(arg_v)] = arg_to;
      --size[static_cast<std::size_t>(from)];
      ++size[static_cast<std::size_t>(arg_to)];
    }
    parts = best_parts;
    if (p_index_trace) p_index_trace->push_back(parts.value(alpha));
  }

  result.partition = Partition::from_labels(labels);
  result.method = "greedy";
  result.alpha = alpha;
  result.p_index = partition_index(g, result.partition, alpha);
  return result;
}

}  // namespace partmpc

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partmpc/engines.hpp"

namespace partmpc {

namespace {

// Per-pair quantities behind the quadratic objective. For an unordered pair
// {u, v} the objective contributes +2*s(u,v) when the nodes are separated and
// -2*(s(u,v) + loop(u) + loop(v)) when they share a set, where
// s(u,v) = |w(u,v)| + |w(v,u)|. Diagonal pairs add the constant -4*loop(v).
struct PairData {
  int n = 0;
  std::vector<double> loop;                                // |w(v,v)|
  std::vector<std::vector<std::pair<int, double>>> adj;    // (u, s(v,u)) with s > 0
  double loop_total = 0.0;
};

PairData build_pair_data(const WeightedDigraph& g) {
  PairData p;
  p.n = g.size();
  p.loop.resize(static_cast<std::size_t>(p.n), 0.0);
  p.adj.resize(static_cast<std::size_t>(p.n));
  for (int v = 0; v < p.n; ++v) {
    p.loop[static_cast<std::size_t>(v)] = std::abs(g.weight(v, v));
    p.loop_total += p.loop[static_cast<std::size_t>(v)];
    for (int u : g.neighborhood(v)) {
      const double s = std::abs(g.weight(v, u)) + std::abs(g.weight(u, v));
      if (s > 0.0) p.adj[static_cast<std::size_t>(v)].emplace_back(u, s);
    }
  }
  return p;
}

}  // namespace

PartitionResult solve_bqp_exact(const WeightedDigraph& g, double alpha,
                                const BqpExactOptions& options) {
  const int n = g.size();
  if (n == 0) throw std::invalid_argument("solve_bqp_exact: the graph has no nodes");
  if (n > options.max_nodes) {
    throw std::invalid_argument("solve_bqp_exact: " + std::to_string(n) +
                                " nodes exceeds the exhaustive-search limit of " +
                                std::to_string(options.max_nodes));
  }

  std::vector<double> loop(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> s(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int v = 0; v < n; ++v) {
    loop[static_cast<std::size_t>(v)] = std::abs(g.weight(v, v));
    for (int u = 0; u < n; ++u) {
      if (u == v) continue;
      s[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] =
          std::abs(g.weight(v, u)) + std::abs(g.weight(u, v));
    }
  }

  // pair_lb[t]: sum over still-undecided pairs (max index >= t) of the lowest
  // value each pair can take, i.e. the shared-set contribution.
  std::vector<double> pair_lb(static_cast<std::size_t>(n) + 1, 0.0);
  for (int t = n - 1; t >= 0; --t) {
    double row = 0.0;
    for (int i = 0; i < t; ++i) {
      row -= 2.0 * (s[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] +
                    loop[static_cast<std::size_t>(i)] + loop[static_cast<std::size_t>(t)]);
    }
    pair_lb[static_cast<std::size_t>(t)] = pair_lb[static_cast<std::size_t>(t) + 1] + row;
  }

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> block_size(static_cast<std::size_t>(n), 0);
  std::vector<int> best_labels;
  double best = std::numeric_limits<double>::infinity();
  double loop_constant = 0.0;
  for (int v = 0; v < n; ++v) loop_constant -= 4.0 * loop[static_cast<std::size_t>(v)];

  double cur = loop_constant;
  double size_sum = 0.0;
  int max_label = -1;

  auto recurse = [&](auto&& self, int t) -> void {
    if (t == n) {
      if (cur < best) {
        best = cur;
        best_labels = labels;
      }
      return;
    }
    const double size_lb = alpha >= 0.0
                               ? alpha * static_cast<double>(n - t)
                               : alpha * (static_cast<double>(n) * n - size_sum);
    if (cur + pair_lb[static_cast<std::size_t>(t)] + size_lb >= best) return;

    for (int l = 0; l <= max_label + 1; ++l) {
      double delta = 0.0;
      for (int i = 0; i < t; ++i) {
        if (labels[static_cast<std::size_t>(i)] == l) {
          delta -= 2.0 * (s[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] +
                          loop[static_cast<std::size_t>(t)] +
                          loop[static_cast<std::size_t>(i)]);
        } else {
          delta += 2.0 * s[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
        }
      }
      const int c = block_size[static_cast<std::size_t>(l)];
      delta += alpha * static_cast<double>(2 * c + 1);

      labels[static_cast<std::size_t>(t)] = l;
      block_size[static_cast<std::size_t>(l)] = c + 1;
      const int saved_max = max_label;
      max_label = std::max(max_label, l);
      cur += delta;
      size_sum += static_cast<double>(2 * c + 1);

      self(self, t + 1);

      size_sum -= static_cast<double>(2 * c + 1);
      cur -= delta;
      max_label = saved_max;
      block_size[static_cast<std::size_t>(l)] = c;
    }
  };
  recurse(recurse, 0);

  PartitionResult result;
  result.partition = Partition(best_labels);
  result.method = "bqp-exact";
  result.alpha = alpha;
  result.objective = bqp_objective(g, result.partition, alpha);
  return result;
}

namespace {

// Mutable partition state for the local search. Labels live in 0..n-1 and
// sets may be empty; the final result is relabeled densely.
class LocalState {
 public:
  LocalState(const PairData& p, double alpha)
      : p_(p),
        alpha_(alpha),
        labels_(static_cast<std::size_t>(p.n)),
        size_(static_cast<std::size_t>(p.n), 1),
        loop_sum_(p.loop) {
    std::iota(labels_.begin(), labels_.end(), 0);
  }

  int label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& labels() const { return labels_; }
  int set_size(int l) const { return size_[static_cast<std::size_t>(l)]; }

  // Lowest empty label, or -1 when every set is occupied.
  int spare_label() const {
    for (int l = 0; l < p_.n; ++l) {
      if (size_[static_cast<std::size_t>(l)] == 0) return l;
    }
    return -1;
  }

  double move_delta(int v, int to) const {
    const int from = labels_[static_cast<std::size_t>(v)];
    double delta = 0.0;
    for (const auto& [u, suv] : p_.adj[static_cast<std::size_t>(v)]) {
      const int lu = labels_[static_cast<std::size_t>(u)];
      if (lu == from) delta += 4.0 * suv;
      if (lu == to) delta -= 4.0 * suv;
    }
    const double lv = p_.loop[static_cast<std::size_t>(v)];
    const int a = size_[static_cast<std::size_t>(from)];
    const int b = size_[static_cast<std::size_t>(to)];
    delta += 2.0 * (static_cast<double>(a - 1) * lv +
                    (loop_sum_[static_cast<std::size_t>(from)] - lv));
    delta -= 2.0 * (static_cast<double>(b) * lv + loop_sum_[static_cast<std::size_t>(to)]);
    delta += alpha_ * 2.0 * static_cast<double>(b - a + 1);
    return delta;
  }

  void move(int v, int to) {
    const int from = labels_[static_cast<std::size_t>(v)];
    const double lv = p_.loop[static_cast<std::size_t>(v)];
    labels_[static_cast<std::size_t>(v)] = to;
    --size_[static_cast<std::size_t>(from)];
    ++size_[static_cast<std::size_t>(to)];
    loop_sum_[static_cast<std::size_t>(from)] -= lv;
    loop_sum_[static_cast<std::size_t>(to)] += lv;
  }

  // Exchanges u and v between their sets; evaluated as two dependent moves.
  double swap_delta(int u, int v) {
    const int lu = label(u);
    const int lv = label(v);
    const double d1 = move_delta(u, lv);
    move(u, lv);
    const double d2 = move_delta(v, lu);
    move(u, lu);
    return d1 + d2;
  }

  void restore(const std::vector<int>& labels) {
    labels_ = labels;
    std::fill(size_.begin(), size_.end(), 0);
    std::fill(loop_sum_.begin(), loop_sum_.end(), 0.0);
    for (int v = 0; v < p_.n; ++v) {
      const int l = labels_[static_cast<std::size_t>(v)];
      ++size_[static_cast<std::size_t>(l)];
      loop_sum_[static_cast<std::size_t>(l)] += p_.loop[static_cast<std::size_t>(v)];
    }
  }

 private:
  const PairData& p_;
  double alpha_;
  std::vector<int> labels_;
  std::vector<int> size_;
  std::vector<double> loop_sum_;
};

}  // namespace

PartitionResult solve_bqp_local(const WeightedDigraph& g, double alpha,
                                const BqpLocalOptions& options) {
  const int n = g.size();
  if (n == 0) throw std::invalid_argument("solve_bqp_local: the graph has no nodes");

  const PairData pairs = build_pair_data(g);
  LocalState state(pairs, alpha);
  double cur = bqp_objective(g, Partition::singletons(n), alpha);

  std::vector<int> scan(static_cast<std::size_t>(n));
  std::iota(scan.begin(), scan.end(), 0);
  std::mt19937_64 rng(options.seed);
  std::shuffle(scan.begin(), scan.end(), rng);

  constexpr double kGainTol = 1e-12;

  for (int pass = 0; pass < options.max_passes; ++pass) {
    const double pass_start = cur;
    const std::vector<int> start_labels = state.labels();

    std::vector<char> locked(static_cast<std::size_t>(n), 0);
    double running = cur;
    double best_running = cur;
    std::vector<int> best_labels = start_labels;

    while (true) {
      // Best single relabeling or swap among unlocked nodes; ties go to the
      // earliest candidate in seeded scan order.
      double best_delta = std::numeric_limits<double>::infinity();
      int mv_v = -1, mv_to = -1;          // relabeling
      int sw_u = -1, sw_v = -1;           // swap
      const int spare = state.spare_label();

      for (int v : scan) {
        if (locked[static_cast<std::size_t>(v)]) continue;
        const int from = state.label(v);
        for (int to = 0; to < n; ++to) {
          if (to == from) continue;
          const bool occupied = state.set_size(to) > 0;
          const bool detach = to == spare && state.set_size(from) > 1;
          if (!occupied && !detach) continue;
          const double d = state.move_delta(v, to);
          if (d < best_delta) {
            best_delta = d;
            mv_v = v;
            mv_to = to;
            sw_u = sw_v = -1;
          }
        }
      }
      for (std::size_t i = 0; i < scan.size(); ++i) {
        const int u = scan[i];
        if (locked[static_cast<std::size_t>(u)]) continue;
        for (std::size_t j = i + 1; j < scan.size(); ++j) {
          const int v = scan[j];
          if (locked[static_cast<std::size_t>(v)]) continue;
          if (state.label(u) == state.label(v)) continue;
          const double d = state.swap_delta(u, v);
          if (d < best_delta) {
            best_delta = d;
            sw_u = u;
            sw_v = v;
            mv_v = mv_to = -1;
          }
        }
      }
      if (mv_v < 0 && sw_u < 0) break;

      if (mv_v >= 0) {
        state.move(mv_v, mv_to);
        locked[static_cast<std::size_t>(mv_v)] = 1;
      } else {
        const int lu = state.label(sw_u);
        const int lv = state.label(sw_v);
        state.move(sw_u, lv);
        state.move(sw_v, lu);
        locked[static_cast<std::size_t>(sw_u)] = 1;
        locked[static_cast<std::size_t>(sw_v)] = 1;
      }
      running += best_delta;
      if (running < best_running) {
        best_running = running;
        best_labels = state.labels();
      }
    }

    if (best_running < pass_start - kGainTol) {
      state.restore(best_labels);
      cur = best_running;
    } else {
      state.restore(start_labels);
      cur = pass_start;
      break;
    }
  }

  PartitionResult result;
  result.partition = Partition::from_labels(state.labels());
  result.method = "bqp-local";
  result.alpha = alpha;
  result.objective = bqp_objective(g, result.partition, alpha);
  return result;
}

}  // namespace partmpc

#pragma once

#include <cstdint>
#include <vector>

#include "partmpc/associated.hpp"
#include "partmpc/graph.hpp"
#include "partmpc/objectives.hpp"
#include "partmpc/partition.hpp"

namespace partmpc {

/// Groups the nodes of a system graph into fundamental subsystem units, one
/// per input node. Starting from the input seeds, the strongest remaining
/// coupling between an assigned and an unassigned node decides the next
/// allocation (ties: lowest node id, then lowest unit index). Throws when a
/// non-input node has no connection to any input.
Partition select_fsu(const SystemGraph& sg);

struct BqpExactOptions {
  int max_nodes = 12;  // exhaustive search guard
};

/// Exact minimizer of bqp_objective over all partitions, found by
/// branch and bound over the assignment tree. Ties resolve to the
/// lexicographically smallest canonical assignment.
PartitionResult solve_bqp_exact(const WeightedDigraph& g, double alpha,
                                const BqpExactOptions& options = {});

struct BqpLocalOptions {
  std::uint64_t seed = 0;  // tie-break scan order
  int max_passes = 100;
};

/// Local minimizer of bqp_objective. Starts from singletons and runs
/// Kernighan-Lin style passes over single-node relabelings and pairwise
/// swaps: within a pass every node moves at most once, the best move is
/// applied even when it worsens the objective, and the pass rolls back to its
/// best prefix. Never returns a partition worse than the start.
PartitionResult solve_bqp_local(const WeightedDigraph& g, double alpha,
                                const BqpLocalOptions& options = {});

struct GreedyOptions {
  int max_rounds = 0;  // 0: 16 * n
};

/// Partition-index ascent. Starts from singletons and repeatedly applies the
/// single-node transfer or whole-set merge with the largest positive gain in
/// partition_index; stops when no move improves. When `p_index_trace` is
/// given it receives the index value after every accepted move (starting with
/// the initial value).
PartitionResult greedy_partition(const WeightedDigraph& g, double alpha,
                                 const GreedyOptions& options = {},
                                 std::vector<double>* p_index_trace = nullptr);

struct BisectOptions {
  bool weighted = false;
  double min_gain = 1e-9;       // smallest modularity gain worth a split
  int power_iterations = 50000; // per split
  double power_tol = 1e-14;
  std::uint64_t seed = 1;       // start vectors and the non-convergence fallback
};

/// Recursive modularity maximization: each subset is split by the sign
/// pattern of the leading eigenvector of its modularity matrix (power
/// iteration), sharpened by a Kernighan-Lin node-shift pass, and the
/// recursion stops when the best split gains less than min_gain. If the
/// power iteration fails to converge the split starts from a seeded random
/// sign pattern instead and the result carries a note.
PartitionResult modularity_bisect(const WeightedDigraph& g, const BisectOptions& options = {});

/// A single bisection of the whole node set (no recursion); same procedure
/// as one level of modularity_bisect. Returns one or two sets.
PartitionResult modularity_bisect_once(const WeightedDigraph& g,
                                       const BisectOptions& options = {});

}  // namespace partmpc

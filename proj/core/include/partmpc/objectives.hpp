#pragma once

#include <Eigen/Dense>

#include "partmpc/graph.hpp"
#include "partmpc/partition.hpp"

namespace partmpc {

/// Switching-cost objective of a grouping: cut coupling minus internal
/// coupling plus a quadratic size penalty,
///
///   sum over ordered pairs (i, j), i != j, in different sets of
///       |w(i,j)| + |w(j,i)|
///   - sum over ordered pairs (i, j) in the same set of
///       |w(i,i)| + |w(i,j)| + |w(j,i)| + |w(j,j)|
///   + alpha * sum over sets of |C|^2.
///
/// Lower is better. alpha tunes the granularity: 0 favors the grand
/// coalition, large values favor singletons.
double bqp_objective(const WeightedDigraph& g, const Partition& p, double alpha);

/// Partition index: ratio of internal coupling to boundary coupling plus a
/// granularity reward,
///
///   p_idx = (sum_i W_intra(C_i)) / (1 + sum_i W_inter(C_i))
///         + alpha / (1 + sum_i |C_i|^2)
///
/// where W_intra(C) sums |w(s,t)| over ordered pairs inside C and W_inter(C)
/// sums |w(s,t)| + |w(t,s)| over frontier nodes s of C and their outside
/// neighbors t. Higher is better.
double partition_index(const WeightedDigraph& g, const Partition& p, double alpha);

/// Newman modularity of the grouping on the symmetrized graph,
///
///   Q = (1/2m) sum_{i,j same set} (A(i,j) - k_i k_j / 2m),
///
/// with A the symmetrized adjacency (binary by default, w + w^T when
/// `weighted`), self-loops excluded, k the degree vector and 2m the total
/// degree. Throws when the graph has no edges.
double modularity(const WeightedDigraph& g, const Partition& p, bool weighted = false);

/// Symmetrized adjacency used by modularity: entries are 1 when an edge runs
/// in either direction, or w(i,j) + w(j,i) when `weighted`; the diagonal is
/// always zero.
Eigen::MatrixXd modularity_adjacency(const WeightedDigraph& g, bool weighted);

}  // namespace partmpc

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace partmpc {

/// A partition of nodes 0..n-1 into nonempty sets labeled 0..set_count()-1.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> assignment);

  static Partition singletons(int n);
  static Partition grand(int n);
  /// Builds a partition from explicit member lists covering 0..n-1.
  static Partition from_sets(int n, const std::vector<std::vector<int>>& sets);
  /// Builds a partition from arbitrary (possibly sparse) labels by relabeling
  /// them in order of first appearance.
  static Partition from_labels(const std::vector<int>& labels);

  int size() const { return static_cast<int>(set_of_.size()); }
  int set_count() const { return n_sets_; }
  int set_of(int node) const { return set_of_.at(node); }
  const std::vector<int>& assignment() const { return set_of_; }

  std::vector<std::set<int>> sets() const;
  std::vector<int> set_sizes() const;

  /// Relabels sets in order of first appearance (restricted growth form).
  /// Two partitions describe the same grouping iff their canonical
  /// assignments are equal.
  Partition canonical() const;

  bool same_grouping(const Partition& other) const;

 private:
  std::vector<int> set_of_;
  int n_sets_ = 0;
};

/// Enumerates every partition of n nodes (restricted growth strings, in
/// lexicographic order) and hands each to the callback. Intended as a ground
/// truth for small instances; n is capped at 13.
void enumerate_partitions_oracle(int n, const std::function<void(const Partition&)>& visit);

/// Number of partitions visited by enumerate_partitions_oracle.
long long count_partitions(int n);

/// A partition together with the metadata of the method that produced it.
struct PartitionResult {
  Partition partition;
  std::string method;
  double alpha = 0.0;
  std::optional<double> objective;  // switching-cost objective, when applicable
  std::optional<double> p_index;    // partition index, when applicable
  std::optional<double> modularity; // modularity, when applicable
  std::vector<std::string> notes;   // solver remarks (budget exhausted, fallbacks, ...)
};

/// Writes a partition with key=value header lines followed by one
/// `set <k>: <id> <id> ...` line per set (ids 1-based).
void write_partition(std::ostream& out, const PartitionResult& result);
void write_partition_file(const std::string& path, const PartitionResult& result);

/// Reads the format produced by write_partition. Unknown header keys are
/// ignored. `n` is the expected node count; throws if the sets do not
/// partition 1..n.
PartitionResult read_partition(std::istream& in, int n);
PartitionResult read_partition_file(const std::string& path, int n);

}  // namespace partmpc

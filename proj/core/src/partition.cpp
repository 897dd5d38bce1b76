#include "partmpc/partition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "partmpc/netio.hpp"

namespace partmpc {

Partition::Partition(std::vector<int> assignment) : set_of_(std::move(assignment)) {
  if (set_of_.empty()) throw std::invalid_argument("partition of zero nodes");
  int m = 0;
  for (int s : set_of_) {
    if (s < 0) throw std::invalid_argument("negative set label");
    m = std::max(m, s + 1);
  }
  std::vector<int> count(m, 0);
  for (int s : set_of_) ++count[s];
  for (int c : count)
    if (c == 0) throw std::invalid_argument("set labels must be dense (empty set found)");
  n_sets_ = m;
}

Partition Partition::singletons(int n) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i;
  return Partition(std::move(a));
}

Partition Partition::grand(int n) { return Partition(std::vector<int>(n, 0)); }

Partition Partition::from_sets(int n, const std::vector<std::vector<int>>& sets) {
  std::vector<int> a(n, -1);
  for (int s = 0; s < static_cast<int>(sets.size()); ++s)
    for (int v : sets[s]) {
      if (v < 0 || v >= n) throw std::invalid_argument("set member out of range");
      if (a[v] != -1) throw std::invalid_argument("node assigned twice");
      a[v] = s;
    }
  for (int v = 0; v < n; ++v)
    if (a[v] == -1) throw std::invalid_argument("node " + std::to_string(v) + " unassigned");
  return Partition(std::move(a));
}

Partition Partition::from_labels(const std::vector<int>& labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> dense(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, fresh] = remap.try_emplace(labels[v], static_cast<int>(remap.size()));
    dense[v] = it->second;
    (void)fresh;
  }
  return Partition(std::move(dense));
}

std::vector<std::set<int>> Partition::sets() const {
  std::vector<std::set<int>> out(n_sets_);
  for (int v = 0; v < size(); ++v) out[set_of_[v]].insert(v);
  return out;
}

std::vector<int> Partition::set_sizes() const {
  std::vector<int> out(n_sets_, 0);
  for (int s : set_of_) ++out[s];
  return out;
}

Partition Partition::canonical() const {
  std::vector<int> relabel(n_sets_, -1);
  std::vector<int> a(set_of_.size());
  int next = 0;
  for (size_t v = 0; v < set_of_.size(); ++v) {
    int& r = relabel[set_of_[v]];
    if (r == -1) r = next++;
    a[v] = r;
  }
  return Partition(std::move(a));
}

bool Partition::same_grouping(const Partition& other) const {
  if (size() != other.size()) return false;
  return canonical().assignment() == other.canonical().assignment();
}

void enumerate_partitions_oracle(int n, const std::function<void(const Partition&)>& visit) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  if (n > 13) throw std::invalid_argument("exhaustive enumeration is capped at 13 nodes");

  // Restricted growth strings: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]).
  // b[i] caches max(a[0..i-1]); incrementing the rightmost position that has
  // room and zeroing the tail walks the strings in lexicographic order.
  std::vector<int> a(n, 0);
  std::vector<int> b(n, 0);
  while (true) {
    visit(Partition(a));
    int i = n - 1;
    while (i > 0 && a[i] == b[i] + 1) --i;
    if (i == 0) break;
    ++a[i];
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      b[j] = std::max(b[j - 1], a[j - 1]);
    }
  }
}

long long count_partitions(int n) {
  long long c = 0;
  enumerate_partitions_oracle(n, [&](const Partition&) { ++c; });
  return c;
}

void write_partition(std::ostream& out, const PartitionResult& result) {
  out << "method=" << result.method << "\n";
  out << "alpha=" << format_real(result.alpha) << "\n";
  if (result.objective) out << "objective=" << format_real(*result.objective) << "\n";
  if (result.p_index) out << "p_idx=" << format_real(*result.p_index) << "\n";
  if (result.modularity) out << "Q=" << format_real(*result.modularity) << "\n";
  for (const auto& n : result.notes) out << "note=" << n << "\n";
  auto sets = result.partition.sets();
  for (size_t s = 0; s < sets.size(); ++s) {
    out << "set " << s + 1 << ":";
    for (int v : sets[s]) out << " " << v + 1;
    out << "\n";
  }
}

void write_partition_file(const std::string& path, const PartitionResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open partition file for writing: " + path);
  write_partition(out, result);
}

PartitionResult read_partition(std::istream& in, int n) {
  PartitionResult result;
  std::vector<std::vector<int>> sets;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("set ", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos)
        throw std::runtime_error("line " + std::to_string(lineno) + ": malformed set line");
      std::istringstream head(line.substr(4, colon - 4));
      int k = 0;
      if (!(head >> k) || k != static_cast<int>(sets.size()) + 1)
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": set indices must be 1, 2, ... in order");
      std::istringstream members(line.substr(colon + 1));
      std::vector<int> ids;
      int id;
      while (members >> id) {
        if (id < 1 || id > n)
          throw std::runtime_error("line " + std::to_string(lineno) + ": node id " +
                                   std::to_string(id) + " out of range");
        ids.push_back(id - 1);
      }
      if (ids.empty())
        throw std::runtime_error("line " + std::to_string(lineno) + ": empty set");
      sets.push_back(std::move(ids));
    } else {
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected key=value");
      std::string key = line.substr(0, eq), value = line.substr(eq + 1);
      try {
        if (key == "method") result.method = value;
        else if (key == "alpha") result.alpha = std::stod(value);
        else if (key == "objective") result.objective = std::stod(value);
        else if (key == "p_idx") result.p_index = std::stod(value);
        else if (key == "Q") result.modularity = std::stod(value);
        else if (key == "note") result.notes.push_back(value);
        // other keys: ignored
      } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": bad value for " + key);
      }
    }
  }
  result.partition = Partition::from_sets(n, sets);
  return result;
}

PartitionResult read_partition_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open partition file: " + path);
  return read_partition(in, n);
}

}  // namespace partmpc

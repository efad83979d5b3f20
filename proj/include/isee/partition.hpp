#pragma once

#include "isee/types.hpp"

#include <vector>

namespace isee {

/// Ordered, disjoint node blocks covering {0, ..., p-1}.
struct Partition {
  std::vector<IndexSet> blocks;
  Index nodes = 0;
};

/// Consecutive pairs {0,1}, {2,3}, ...; when p is odd the last block is a
/// triple. Throws InvalidInput for p < 2.
Partition make_partition(Index p);

/// Validates a caller-supplied block list over p nodes: blocks of size 2 or 3,
/// disjoint, covering every node. Each block is sorted ascending.
Partition make_partition(std::vector<IndexSet> blocks, Index p);

/// Relabels every node k of `partition` as perm[k].
Partition relabel(const Partition& partition, const std::vector<Index>& perm);

/// Nodes of {0, ..., p-1} not in `block`, ascending. `block` must be sorted.
IndexSet complement(const IndexSet& block, Index p);

}  // namespace isee

#include "isee/partition.hpp"

#include "isee/errors.hpp"

#include <algorithm>
#include <string>

namespace isee {

Partition make_partition(Index p) {
  if (p < 2) throw InvalidInput("partition needs p >= 2, got " + std::to_string(p));
  Partition part;
  part.nodes = p;
  const Index blocks = p / 2;
  part.blocks.reserve(static_cast<size_t>(blocks));
  for (Index l = 0; l + 1 < blocks; ++l) {
    part.blocks.push_back({2 * l, 2 * l + 1});
  }
  IndexSet last;
  for (Index k = 2 * (blocks - 1); k < p; ++k) last.push_back(k);
  part.blocks.push_back(std::move(last));
  return part;
}

Partition make_partition(std::vector<IndexSet> blocks, Index p) {
  if (p < 2) throw InvalidInput("partition needs p >= 2");
  std::vector<char> seen(static_cast<size_t>(p), 0);
  for (auto& block : blocks) {
    if (block.size() < 2 || block.size() > 3) {
      throw InvalidInput("partition blocks must have 2 or 3 nodes");
    }
    std::sort(block.begin(), block.end());
    for (const Index k : block) {
      if (k < 0 || k >= p) throw InvalidInput("partition node out of range");
      if (seen[static_cast<size_t>(k)]) {
        throw InvalidInput("partition blocks overlap at node " + std::to_string(k));
      }
      seen[static_cast<size_t>(k)] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidInput("partition blocks do not cover every node");
  }
  return Partition{std::move(blocks), p};
}

Partition relabel(const Partition& partition, const std::vector<Index>& perm) {
  std::vector<IndexSet> blocks;
  blocks.reserve(partition.blocks.size());
  for (const auto& block : partition.blocks) {
    IndexSet mapped;
    for (const Index k : block) mapped.push_back(perm.at(static_cast<size_t>(k)));
    blocks.push_back(std::move(mapped));
  }
  return make_partition(std::move(blocks), partition.nodes);
}

IndexSet complement(const IndexSet& block, Index p) {
  IndexSet out;
  out.reserve(static_cast<size_t>(p) - block.size());
  auto it = block.begin();
  for (Index k = 0; k < p; ++k) {
    if (it != block.end() && *it == k) {
      ++it;
      continue;
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace isee

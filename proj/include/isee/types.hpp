#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace isee {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// n x p observations; rows are samples, columns are nodes.
using DataMatrix = Eigen::MatrixXd;

// Sorted, 0-based node indices.
using IndexSet = std::vector<Index>;

// Unordered off-diagonal node pairs, stored as (j, k) with j < k.
using LinkSet = std::set<std::pair<Index, Index>>;

// Serial paths are the reference implementation; parallel paths must agree
// with them bitwise.
enum class Execution { serial, parallel };

}  // namespace isee

#pragma once

#include "isee/types.hpp"

#include <functional>

namespace isee {

/// Number of worker threads used by parallel kernels (1 without OpenMP).
int worker_count();

/// Sets the worker count for subsequent parallel kernels. Values < 1 are
/// ignored.
void set_worker_count(int threads);

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker; the body must only write to state owned by its index.
void for_each_index(Index count, Execution exec,
                    const std::function<void(Index)>& body);

/// Returns scale * A^T A, exactly symmetric. Every entry is a single dot
/// product over rows in ascending order, so serial and parallel execution
/// agree bitwise.
Matrix scaled_cross_product(const Matrix& a, double scale, Execution exec);

}  // namespace isee

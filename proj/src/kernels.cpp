#include "isee/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <exception>

namespace isee {

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int threads) {
#ifdef _OPENMP
  if (threads >= 1) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

void for_each_index(Index count, Execution exec,
                    const std::function<void(Index)>& body) {
  if (exec == Execution::serial || count < 2) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  // Exceptions may not cross the OpenMP region; keep the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (Index i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(isee_for_each_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

Matrix scaled_cross_product(const Matrix& a, double scale, Execution exec) {
  const Index p = a.cols();
  Matrix out(p, p);
  for_each_index(p, exec, [&](Index j) {
    const auto cj = a.col(j);
    for (Index k = 0; k <= j; ++k) {
      out(k, j) = scale * cj.dot(a.col(k));
    }
  });
  for (Index j = 0; j < p; ++j) {
    for (Index k = j + 1; k < p; ++k) out(k, j) = out(j, k);
  }
  return out;
}

}  // namespace isee

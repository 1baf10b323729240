#pragma once

#include <array>
#include <cstddef>
#include <numeric>

namespace beltrami {

/// Number of worker threads used for data-parallel loops. Defaults to the
/// OpenMP maximum, capped by the BELTRAMI_THREADS environment variable.
int thread_count();

/// Runs body(k) for k in [0, n). Iterations must be independent.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (long long k = 0; k < count; ++k) body(static_cast<std::size_t>(k));
}

/// Sum of term(k) over [0, n). The partition into chunks does not depend on
/// the thread count, so the result is bit-identical for any BELTRAMI_THREADS.
template <class Term>
double parallel_sum(std::size_t n, Term&& term) {
  constexpr std::size_t kChunks = 64;
  std::array<double, kChunks> partial{};
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (long long c = 0; c < static_cast<long long>(kChunks); ++c) {
    const std::size_t begin = n * static_cast<std::size_t>(c) / kChunks;
    const std::size_t end = n * (static_cast<std::size_t>(c) + 1) / kChunks;
    double s = 0.0;
    for (std::size_t k = begin; k < end; ++k) s += term(k);
    partial[static_cast<std::size_t>(c)] = s;
  }
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

}  // namespace beltrami

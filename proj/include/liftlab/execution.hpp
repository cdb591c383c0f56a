#pragma once

#include <cstddef>

namespace liftlab {

// kSerial is the reference path; kParallel distributes independent work items
// over OpenMP threads. Both must produce identical results.
enum class Execution { kSerial, kParallel };

// Runs body(i) for i in [0, count). Results must be written to per-index slots.
template <class Body>
void run_indexed(std::size_t count, Execution exec, Body&& body) {
  if (exec == Execution::kParallel) {
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
}

}  // namespace liftlab

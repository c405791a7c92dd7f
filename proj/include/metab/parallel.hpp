#pragma once

// Bounded worker parallelism for independent loop bodies.

#include <cstddef>
#include <functional>

namespace metab {

/// Worker count used by parallel_for; defaults to the hardware concurrency.
int worker_threads();
/// 0 restores the default.
void set_worker_threads(int n);

/// Runs body(i) for i in [0, count) on up to worker_threads() threads. The
/// first exception thrown by a body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace metab

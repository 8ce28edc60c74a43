#pragma once

#include <cstddef>
#include <functional>

namespace gamlssboost {

/// Worker count: GAMLSSBOOST_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(0..count-1) on up to thread_count() threads. Each index runs
/// exactly once; if any throw, the exception of the lowest failing index is
/// rethrown after all workers finish. Calls made from inside a worker run
/// serially on that worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gamlssboost

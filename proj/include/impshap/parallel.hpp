#pragma once

#include <cstddef>
#include <functional>

namespace impshap {

// Worker budget: IMPSHAP_THREADS when set (minimum 1), otherwise the machine
// parallelism.
std::size_t thread_budget();

// Runs fn(0..n-1) across the thread budget. Work items must be independent;
// results should be written to index-addressed slots so the outcome does not
// depend on scheduling. The first exception thrown by any item is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace impshap

#pragma once

#include <cstddef>
#include <functional>

namespace bloch {

/// Worker count from BLOCH_TOPO_THREADS (unset or 0 means hardware concurrency).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write into pre-sized slots so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace bloch

#ifndef DODTEST_PARALLEL_HPP
#define DODTEST_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace dod {

// Runs fn(i) for i in [0, count) on up to hardware_concurrency() threads.
// Callers must make fn(i) independent of execution order (per-index seeds);
// results are typically written into a preallocated slot per index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace dod

#endif

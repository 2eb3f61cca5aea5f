#pragma once

#include <functional>

namespace hg {

// Worker count: HITCHIN_GLUE_THREADS if set to a positive integer, else hardware concurrency.
int thread_count();

// Runs body(k) for k = 0..n-1 on up to thread_count() threads. Each index writes its own slot,
// so results do not depend on scheduling. The exception of the lowest failing index is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace hg

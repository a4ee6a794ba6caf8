#pragma once

#include <functional>

namespace fraxterp {

/// Worker count: hardware concurrency clamped to [1, 8], further capped by
/// the FRAXTERP_THREADS environment variable when set to a positive integer.
int thread_cap();

/// Runs fn(0..n-1), chunked across threads when that pays off.  The result
/// must not depend on the execution order; exceptions are rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace fraxterp

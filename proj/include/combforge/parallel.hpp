#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace combforge {

// Worker count: hardware concurrency, optionally capped by the
// COMB_FORGE_THREADS environment variable or by set_thread_cap(). The cap
// never changes results, only scheduling; all reductions in this codebase
// combine per-index slots in a fixed order.
int thread_budget();

// Programmatic cap (0 = follow the environment). Used by determinism tests.
void set_thread_cap(int cap);

// Runs task(i) for i in [0, count) on up to thread_budget() workers. Tasks
// must be independent; write results to per-index slots. Exceptions are
// captured and the first one (lowest index) is rethrown on the caller.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& task);

} // namespace combforge

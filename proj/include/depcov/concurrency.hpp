#pragma once

#include <cstddef>
#include <functional>

namespace depcov {

// Worker-thread cap: DEPCOV_THREADS if set and > 0, hardware concurrency
// otherwise (DEPCOV_THREADS=0 also means auto).
unsigned thread_budget();

// Runs fn(begin, end) over a partition of [0, n) into contiguous blocks,
// one block per worker. Blocks never overlap, so fn may write freely to
// per-index slots. Falls back to a single inline call when the budget is 1
// or n is small.
void parallel_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace depcov

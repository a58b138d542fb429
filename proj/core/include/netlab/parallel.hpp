#pragma once

#include <cstddef>
#include <functional>

namespace netlab {

// Worker cap: FMA_NETLAB_THREADS if set (>=1), else hardware concurrency.
std::size_t thread_cap();

// Splits [0, n) into contiguous chunks over at most thread_cap() threads.
// body(begin, end) must not touch another chunk's output slots.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace netlab

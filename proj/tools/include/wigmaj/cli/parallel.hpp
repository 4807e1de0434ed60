#pragma once

#include <cstddef>
#include <functional>

namespace wigmaj::cli {

// Worker count from WIGMAJ_THREADS, else the hardware concurrency; at least 1.
unsigned thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. Results must
// be written to per-index slots; the first exception by index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wigmaj::cli

#pragma once

#include <cstddef>
#include <functional>

namespace vc2 {

/// Worker count: `requested` if nonzero, else VC2LAB_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Items are
/// handed out in index order; the first exception thrown is rethrown after
/// all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace vc2

#pragma once

#include <cstddef>
#include <functional>

namespace tvclass {

/// Worker count used when a caller does not pin one: the TVCLASS_THREADS
/// environment variable if set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
unsigned default_threads();

/// Runs fn(i) for every i in [0, count) on up to `threads` workers.
/// Items must be independent and write only their own output slot; indices
/// are handed out through a shared counter, so the set of executed items
/// (and anything keyed off the index alone) is identical for any thread
/// count. The first exception thrown by an item is rethrown on the caller
/// after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace tvclass

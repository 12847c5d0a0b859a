#pragma once

#include <cstddef>
#include <functional>

namespace qhbound {

/// Worker count: `requested` if nonzero, else QHBOUND_THREADS if set, else
/// the hardware concurrency. QHBOUND_THREADS also caps explicit requests.
unsigned worker_count(unsigned requested = 0);

/// Runs body(i) for i in [0, n) on up to `threads` workers. If any call
/// throws, the exception from the lowest failing index is rethrown after all
/// workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace qhbound

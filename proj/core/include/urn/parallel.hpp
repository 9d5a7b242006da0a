#pragma once

#include <cstddef>
#include <functional>

namespace urn {

/// Environment variable consulted for the default worker count.
inline constexpr const char* kThreadsEnvVar = "URN_THREADS";

/// URN_THREADS if set to a positive integer, else hardware concurrency (>= 1).
unsigned default_threads() noexcept;

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work items are
/// claimed dynamically; callers write results into per-item slots and merge
/// them in index order afterwards. The first exception thrown by any body is
/// rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace urn

#pragma once

#include <cstdint>
#include <functional>

namespace uavcoop {

/// Worker count from UAVCOOP_WORKERS, else the hardware concurrency (at least 1).
[[nodiscard]] int worker_count();

/// Calls body(i) for every i in [0, n) on up to worker_count() threads.
/// Indices are handed out in blocks; callers write results by index, so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// body is rethrown after all workers stop.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace uavcoop

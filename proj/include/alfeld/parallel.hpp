#pragma once

#include <functional>

namespace alfeld {

/// Worker count for element loops (default 1). Values < 1 are clamped to 1.
void set_num_threads(int n);
int num_threads();
/// Reads ALFELD_ELAST_THREADS; returns `fallback` if unset or invalid.
int threads_from_environment(int fallback);

/// Runs body(i) for i in [begin, end). Each index is processed exactly once;
/// results must be written to per-index storage, so the outcome does not
/// depend on the thread count. The first exception is rethrown.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace alfeld

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace qcalab {

/// Least-squares slope of log(y) against log(x). Requires positive entries
/// and at least two distinct x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// visited exactly once; callers write results into pre-sized storage so the
/// output order does not depend on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Thread count from the QCALAB_THREADS environment variable, or 1.
unsigned default_thread_count();

}  // namespace qcalab

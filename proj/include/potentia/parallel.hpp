#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace potentia {

/// Worker count used by parallel_for. Defaults to POTENTIA_THREADS when set,
/// otherwise the hardware concurrency.
int thread_count();
/// Override the worker count; 0 restores the environment/hardware default.
void set_thread_count(int threads);

/// Runs body(i) for i in [0, count). Each index is handled exactly once and
/// callers write results into per-index slots, so the outcome never depends
/// on the number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace potentia

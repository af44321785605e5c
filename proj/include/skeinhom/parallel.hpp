#pragma once

#include <functional>

namespace skeinhom {

// Worker count: set_thread_count() if called, else SKEINHOM_THREADS, else 1.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n) on up to thread_count() workers. Callers write
// results into per-index slots, so output never depends on scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace skeinhom

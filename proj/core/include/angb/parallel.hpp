#pragma once

#include <cstddef>
#include <functional>

// Deterministic fork-join helper: the index range is split into contiguous
// chunks, workers write only to disjoint per-index slots, so results never
// depend on scheduling.

namespace angb {

void set_thread_count(int n);  // 0 = hardware concurrency
int thread_count();

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace angb

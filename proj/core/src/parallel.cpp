#include "angb/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace angb {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n); }

int thread_count() {
  int n = g_threads.load();
  if (n > 0) return n;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t count = end > begin ? end - begin : 0;
  if (count == 0) return;
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count));
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = std::max<std::size_t>(1, count / (8 * workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(chunk);
        if (i >= end) return;
        std::size_t stop = std::min(end, i + chunk);
        for (std::size_t j = i; j < stop; ++j) body(j);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace angb

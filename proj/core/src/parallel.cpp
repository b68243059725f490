#include "nsee/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace nsee {

std::size_t worker_count() {
  if (const char* env = std::getenv("NSEE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return std::size_t(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
thread_local bool inside_pool = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  // Nested calls run serially on the calling worker.
  const std::size_t workers = inside_pool ? 1 : std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    inside_pool = true;
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
    inside_pool = false;
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace nsee

#include "steinlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace steinlab {
namespace {

std::atomic<int> g_threads{1};
thread_local int t_override = 0;

}  // namespace

void set_num_threads(int threads) {
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
  g_threads.store(threads);
}

int num_threads() { return t_override > 0 ? t_override : g_threads.load(); }

ScopedThreads::ScopedThreads(int threads) : previous_(t_override) { t_override = std::max(threads, 1); }

ScopedThreads::~ScopedThreads() { t_override = previous_; }

void parallel_for(std::ptrdiff_t tasks, const std::function<void(std::ptrdiff_t)>& body) {
  if (tasks <= 0) return;
  const auto workers = static_cast<std::ptrdiff_t>(std::min<std::ptrdiff_t>(num_threads(), tasks));
  if (workers <= 1) {
    for (std::ptrdiff_t t = 0; t < tasks; ++t) body(t);
    return;
  }

  std::atomic<std::ptrdiff_t> next{0};
  std::exception_ptr failure;
  std::ptrdiff_t failed_task = tasks;
  std::mutex failure_mutex;
  auto worker = [&] {
    ScopedThreads serial(1);
    for (;;) {
      const std::ptrdiff_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (t < failed_task) {
          failed_task = t;
          failure = std::current_exception();
        }
        next.store(tasks);
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (std::ptrdiff_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace steinlab

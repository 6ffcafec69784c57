#pragma once

#include <cstddef>
#include <functional>

namespace steinlab {

/// Row-block size used by every parallel accumulation. Fixed so that the
/// partition, and therefore every floating-point sum, is independent of the
/// worker count.
inline constexpr std::ptrdiff_t kBlockRows = 256;

/// Process-wide worker count (default 1). Mirrors Eigen::setNbThreads.
void set_num_threads(int threads);
int num_threads();

/// Overrides the worker count for the calling thread while in scope.
/// Used to keep nested regions (per-cell work inside a parallel grid) serial.
class ScopedThreads {
 public:
  explicit ScopedThreads(int threads);
  ~ScopedThreads();
  ScopedThreads(const ScopedThreads&) = delete;
  ScopedThreads& operator=(const ScopedThreads&) = delete;

 private:
  int previous_;
};

/// Runs body(task) for task in [0, tasks) on up to num_threads() workers.
/// Tasks are claimed dynamically; callers write results into per-task slots
/// and reduce them in task order afterwards. Nested calls run serially. The
/// exception of the lowest-index failing task is rethrown after all workers join.
void parallel_for(std::ptrdiff_t tasks, const std::function<void(std::ptrdiff_t)>& body);

inline std::ptrdiff_t block_count(std::ptrdiff_t rows) { return (rows + kBlockRows - 1) / kBlockRows; }

}  // namespace steinlab

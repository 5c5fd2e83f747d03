#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace patdens {

/// Default work-unit guards; PATDENS_BUDGET overrides both.
inline constexpr std::uint64_t kDefaultExactBudget = 2'000'000'000ULL;
inline constexpr std::uint64_t kDefaultSampleBudget = 10'000'000'000ULL;

/// Raised when an operation would need more work units than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double required, std::uint64_t limit)
      : std::runtime_error("work budget exceeded: needs " + format_units(required) +
                           " work units, limit is " + std::to_string(limit) +
                           " (raise it with PATDENS_BUDGET or --budget)"),
        required_(required),
        limit_(limit) {}

  double required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

 private:
  static std::string format_units(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }
  double required_;
  std::uint64_t limit_;
};

/// PATDENS_BUDGET when set and parseable, otherwise `fallback`.
std::uint64_t budget_from_env(std::uint64_t fallback);

inline void check_budget(double required, std::uint64_t limit) {
  if (required > static_cast<double>(limit)) throw BudgetExceeded(required, limit);
}

/// 0 means one worker per hardware thread.
inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs task(block) for every block in [0, blocks) on up to `workers`
/// threads. Blocks are independent; callers write results into slots
/// indexed by block, so the outcome never depends on scheduling.
template <class Task>
void parallel_blocks(std::size_t blocks, unsigned workers, Task&& task) {
  workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) task(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (std::size_t b = next++; b < blocks; b = next++) task(b);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace patdens

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "oraclelab/cli/config.hpp"
#include "oraclelab/cli/report.hpp"

namespace oraclelab::cli {

/// Runs one experiment on a resolved config (see resolve_config).
Report run_experiment(const std::string& name, const Json& config);

/// f(i) for i in [0, count) on `workers` threads; results are stored by index, so the
/// output does not depend on scheduling. The first exception is rethrown.
template <typename R, typename F>
std::vector<R> parallel_trials(int count, int workers, F&& f) {
  std::vector<R> out(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[static_cast<std::size_t>(i)] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  const int threads = std::max(1, std::min(workers, count));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace oraclelab::cli

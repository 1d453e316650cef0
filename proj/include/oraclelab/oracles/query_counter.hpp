#pragma once

#include <atomic>
#include <cstdint>

namespace oraclelab {

/// Thread-safe query tally. Copies start from the source's current value.
class QueryCounter {
 public:
  QueryCounter() = default;
  QueryCounter(const QueryCounter& other) : count_(other.value()) {}
  QueryCounter& operator=(const QueryCounter& other) {
    count_.store(other.value(), std::memory_order_relaxed);
    return *this;
  }

  void add(std::uint64_t k = 1) const { count_.fetch_add(k, std::memory_order_relaxed); }
  std::uint64_t value() const { return count_.load(std::memory_order_relaxed); }
  void reset() { count_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> count_{0};
};

}  // namespace oraclelab

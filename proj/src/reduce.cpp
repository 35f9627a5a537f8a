#include "vlab/reduce.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "vlab/errors.hpp"

namespace vlab {

namespace {

template <typename T>
T pairwise_impl(std::span<const T> xs) {
  if (xs.size() <= 8) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_impl(xs.subspan(0, half)) + pairwise_impl(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
  return pairwise_impl(xs);
}

int thread_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("VLAB_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && v <= 256) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

MemoryBudget MemoryBudget::from_env() {
  static const MemoryBudget cached = [] {
    MemoryBudget b;
    if (const char* env = std::getenv("VLAB_BUDGET_BYTES")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) b.bytes = v;
    }
    return b;
  }();
  return cached;
}

void parallel_blocks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  const int nt = static_cast<int>(std::min<std::int64_t>(thread_count(), n));
  if (nt == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt - 1);
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto run = [&](std::int64_t b, std::int64_t e) {
    try {
      fn(b, e);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  const std::int64_t chunk = (n + nt - 1) / nt;
  for (int t = 1; t < nt; ++t) {
    const std::int64_t b = t * chunk;
    const std::int64_t e = std::min<std::int64_t>(n, b + chunk);
    if (b >= e) break;
    workers.emplace_back(run, b, e);
  }
  run(0, std::min<std::int64_t>(n, chunk));
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace vlab

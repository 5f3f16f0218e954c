#include "clevy/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace clevy {

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double RunningStats::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningStats::stderr_of_mean() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("CLEVY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::vector<RunningStats> run_ensemble(const EnsembleConfig& cfg, std::size_t quantities,
                                       const PathCallback& per_path) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min(cfg.chunks, cfg.paths));
  std::vector<std::vector<RunningStats>> partial(chunks, std::vector<RunningStats>(quantities));

  auto run_chunk = [&](std::size_t c) {
    const std::uint64_t begin = cfg.paths * c / chunks;
    const std::uint64_t end = cfg.paths * (c + 1) / chunks;
    std::vector<double> buf(quantities);
    for (std::uint64_t i = begin; i < end; ++i) {
      per_path(i, buf);
      for (std::size_t q = 0; q < quantities; ++q) partial[c][q].add(buf[q]);
    }
  };

  const std::size_t threads = std::min(worker_threads(), chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
          try {
            run_chunk(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<RunningStats> total(quantities);
  for (const auto& part : partial) {
    for (std::size_t q = 0; q < quantities; ++q) total[q].merge(part[q]);
  }
  return total;
}

}  // namespace clevy

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "clevy/random.hpp"

namespace clevy {

// Streaming mean/variance (Welford) with the associative pairwise merge,
// so that chunked ensembles combine deterministically.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased sample variance
  double stderr_of_mean() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct ComplexStats {
  RunningStats re;
  RunningStats im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void merge(const ComplexStats& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
  std::complex<double> mean() const { return {re.mean(), im.mean()}; }
  // Standard error of the complex mean, sqrt(se_re^2 + se_im^2).
  double stderr_of_mean() const { return std::hypot(re.stderr_of_mean(), im.stderr_of_mean()); }
};

struct EnsembleConfig {
  std::size_t paths = 100000;
  std::uint64_t seed = 42;
  std::uint64_t family = 0;
  // Work is split into this many fixed chunks; merge order is by chunk
  // index, so results do not depend on the number of worker threads.
  std::size_t chunks = 64;
};

// Per-path callback: fills `out` (size = quantities) for path `index`.
using PathCallback = std::function<void(std::uint64_t index, std::span<double> out)>;

// Runs `cfg.paths` independent evaluations in parallel and returns one
// RunningStats per quantity.
std::vector<RunningStats> run_ensemble(const EnsembleConfig& cfg, std::size_t quantities,
                                       const PathCallback& per_path);

// Number of worker threads used by run_ensemble (CLEVY_THREADS overrides).
std::size_t worker_threads();

}  // namespace clevy

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clevy/random.hpp"

namespace clevy {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool covers(const Interval& other) const { return lo <= other.lo && hi >= other.hi; }
  Interval hull(const Interval& other) const;
};

// One point mass of a discrete Lévy measure: rate * delta_{size}.
struct Atom {
  double size = 0.0;
  double rate = 0.0;
};

// Tempered-stable (CGMY-type) Lévy density
//   nu(x) = c e^{-g|x|} |x|^{-1-y}  for x < 0,
//   nu(x) = c e^{-m x}  x^{-1-y}    for x > 0,
// with c > 0, g > 0, m > 0 and y < 2.  All moments of order > y are finite.
struct TemperedStableDensity {
  double c = 1.0;
  double g = 1.0;
  double m = 1.0;
  double y = 0.5;

  double operator()(double x) const;
};

// Lévy measure of a zero-mean pure-jump Lévy process without Brownian part:
// a finite sum of atoms plus an optional tempered-stable density restricted
// to |x| > epsilon.  The drift is always derived, never stored, so that
// E[L(1)] = 0 holds by construction.
class JumpMeasure {
 public:
  JumpMeasure() = default;

  static JumpMeasure from_atoms(std::vector<Atom> atoms);
  static JumpMeasure with_density(TemperedStableDensity density, double epsilon = 0.0,
                                  std::vector<Atom> atoms = {});

  std::span<const Atom> atoms() const { return atoms_; }
  const std::optional<TemperedStableDensity>& density() const { return density_; }
  double epsilon() const { return epsilon_; }

  bool empty() const { return atoms_.empty() && !density_; }
  bool finite_activity() const { return total_rate() < kInf; }
  double total_rate() const;

  // ∫ g(x) nu(dx): exact atom sum plus adaptive quadrature of the density.
  double integrate(const std::function<double(double)>& g) const;
  std::complex<double> integrate_complex(
      const std::function<std::complex<double>(double)>& g) const;

  double first_moment() const;  // ∫ x nu(dx)
  double second_moment() const;  // ∫ x^2 nu(dx)
  double abs_moment(int order) const;  // ∫ |x|^order nu(dx), may be +inf

  // Drift of L such that E[L(1)] = 0, i.e. -∫ x nu(dx).
  double drift_rate() const { return -first_moment(); }

  // Throws ConfigError unless ∫|x|^m nu(dx) < inf for m = 2..order.
  void check_moments(int order) const;

  // Draws one jump size from nu / nu(R_0).  Requires finite activity.
  double sample_size(Stream& rng) const;

  // Largest |x| in the support (+inf with a density).
  double max_abs_size() const;

  // Finite set of weighted nodes representing the measure: atoms as-is, the
  // density through Gauss-Legendre nodes on graded panels.  Used by the
  // fixed-rule analytic engines.
  std::vector<Atom> discretize() const;

  std::string describe() const;

 private:
  std::vector<Atom> atoms_;
  std::optional<TemperedStableDensity> density_;
  double epsilon_ = 0.0;
  double atom_rate_ = 0.0;
  double density_rate_ = 0.0;  // mass of the density on |x| > epsilon
  double density_neg_rate_ = 0.0;
};

// e^{iz} - 1 - iz, accurate for small |z|.
std::complex<double> compensated_cis(double z);

// psi(u) = ∫ (e^{iux} - 1 - iux) nu(dx).
std::complex<double> char_exponent(const JumpMeasure& measure, double u);

// var(L(1)) = ∫ x^2 nu(dx).
double levy_variance(const JumpMeasure& measure);

struct TruncationResult {
  JumpMeasure measure;
  double discarded_variance = 0.0;  // ∫_{|x|<=eps} x^2 nu(dx)
  bool support_empty = false;
  std::string warning;
};

// Removes jumps with |x| <= eps; the drift of the result is re-derived, so
// the truncated process stays centred.
TruncationResult truncate_small_jumps(const JumpMeasure& measure, double eps);

struct Jump {
  double time = 0.0;
  double size = 0.0;
};

// One realisation of the jump measure on a finite window, with the
// compensating drift.  L(t) = sum_{0 < s <= t} x_s + drift * t for t >= 0 and
// L(t) = -sum_{t < s <= 0} x_s + drift * t for t < 0.
class JumpPath {
 public:
  JumpPath() = default;
  JumpPath(Interval window, std::vector<Jump> jumps, double drift_rate, StreamKey key = {});

  const Interval& window() const { return window_; }
  std::span<const Jump> jumps() const { return jumps_; }
  double drift_rate() const { return drift_; }
  const StreamKey& key() const { return key_; }

  double levy(double t) const;       // L(t), right-continuous
  double levy_left(double t) const;  // L(t-)
  // Sum of jump sizes with time in (a, b].
  double jump_sum(double a, double b) const;
  std::size_t jump_count(double a, double b) const;

 private:
  double prefix_upto(double t, bool inclusive) const;

  Interval window_;
  std::vector<Jump> jumps_;
  std::vector<double> prefix_;  // prefix_[i] = sum of sizes of jumps_[0..i)
  double drift_ = 0.0;
  StreamKey key_;
};

// Simulates the jump measure on `window`: homogeneous Poisson times with
// rate nu(R_0) and i.i.d. sizes from nu / nu(R_0).  The t >= 0 and t < 0
// halves use independent streams (branches 0 and 1 of `key`).
JumpPath simulate_path(const JumpMeasure& measure, const Interval& window, const StreamKey& key);

}  // namespace clevy

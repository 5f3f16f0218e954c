#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "clevy/levy.hpp"
#include "clevy/quadrature.hpp"

namespace clevy {

// A real function of one variable given either in closed form or by grid
// samples (linearly interpolated, zero outside the grid).  The declared
// support may be unbounded; breakpoints mark kinks and jumps.
class SampledFunction {
 public:
  SampledFunction();

  static SampledFunction closed_form(std::function<double(double)> g, Interval support,
                                     std::vector<double> breakpoints = {});
  static SampledFunction grid(double x0, double h, std::vector<double> samples);
  // chi_{[a,b]}: 1 on [a, b), -1 on [b, a), 0 otherwise.
  static SampledFunction indicator(double a, double b);
  static SampledFunction zero();

  double operator()(double x) const;
  const Interval& support() const { return support_; }
  // Support endpoints and interior breakpoints, sorted.
  std::vector<double> knots() const;
  bool is_zero() const { return zero_; }

  // x -> g(-x)
  SampledFunction reflected() const;

 private:
  std::function<double(double)> g_;
  Interval support_;
  std::vector<double> breaks_;
  bool zero_ = false;
};

// (I_-^a g)(x) = Gamma(a)^{-1} ∫_x^∞ g(t) (t - x)^{a-1} dt, 0 < a < 1.
double frac_int_minus(const SampledFunction& g, double alpha, double x,
                      const quad::Options& opts = {});
// (I_+^a g)(x) = Gamma(a)^{-1} ∫_{-∞}^x g(t) (x - t)^{a-1} dt.
double frac_int_plus(const SampledFunction& g, double alpha, double x,
                     const quad::Options& opts = {});

struct FracPartsResult {
  double lhs = 0.0;  // ∫ (I_-^a g) h
  double rhs = 0.0;  // ∫ g (I_+^a h)
  double residual = 0.0;
};

// Fractional integration by parts, both sides by nested quadrature.
FracPartsResult frac_parts_check(const SampledFunction& g, const SampledFunction& h,
                                 double alpha);

}  // namespace clevy

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace clevy::quad {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

struct Options {
  double rel_tol = 1e-10;
  std::size_t max_refinements = 15;
};

// Adaptive integral over [a, b]; either bound may be infinite.  Finite
// intervals use tanh-sinh (robust to algebraic endpoint singularities),
// half-infinite ones exp-sinh and the real line sinh-sinh.
// Throws NumericalError when the result is not finite.
double integrate(const RealFn& f, double a, double b, const Options& opts = {});

std::complex<double> integrate_complex(const ComplexFn& f, double a, double b,
                                       const Options& opts = {});

// Integrates over consecutive pieces [p0,p1], [p1,p2], ... so that
// discontinuities or kinks of the integrand sit on piece boundaries.
// `points` must be sorted; duplicates are skipped.
double integrate_pieces(const RealFn& f, std::span<const double> points,
                        const Options& opts = {});

std::complex<double> integrate_pieces_complex(const ComplexFn& f,
                                              std::span<const double> points,
                                              const Options& opts = {});

// A fixed quadrature rule.  `lags` carries the distance of each node to a
// designated point: b for gauss_legendre, the accumulation point for
// graded.  Used where node - point would lose precision.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> lags;

  std::size_t size() const { return nodes.size(); }
  void append(const Rule& other);
};

// 16-point Gauss-Legendre on each of `panels` equal panels of [a, b].
Rule gauss_legendre(double a, double b, std::size_t panels = 1);

// Gauss-Legendre on panels that shrink geometrically toward `a` (when
// toward_lower) or `b`, by factor `ratio`, until the panel is shorter than
// `min_width`.  The sliver next to the accumulation point is dropped.
Rule graded(double a, double b, bool toward_lower, double ratio = 0.2,
            double min_width = 1e-13);

template <class F>
auto apply(const Rule& rule, F&& f) {
  using R = decltype(f(0.0));
  R acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

}  // namespace clevy::quad

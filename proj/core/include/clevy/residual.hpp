#pragma once

#include <algorithm>
#include <cmath>
#include <string>

namespace clevy {

// One row of a verification report: an identity evaluated on both sides.
struct IdentityResidual {
  std::string identity;
  std::string eta_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double std_error = 0.0;  // Monte Carlo standard error of lhs - rhs (0 if exact)
  double tolerance = 0.0;
  bool pass = false;
};

// tolerance = max(abs_tol, sigmas * std_error); pass iff |lhs - rhs| <= tolerance.
inline IdentityResidual make_residual(std::string identity, std::string eta_id, double lhs,
                                      double rhs, double std_error, double abs_tol,
                                      double sigmas) {
  IdentityResidual r;
  r.identity = std::move(identity);
  r.eta_id = std::move(eta_id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.std_error = std_error;
  r.tolerance = std::max(abs_tol, sigmas * std_error);
  r.pass = std::isfinite(r.residual) && r.residual <= r.tolerance;
  return r;
}

}  // namespace clevy

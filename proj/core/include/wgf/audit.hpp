#pragma once

#include "wgf/driver.hpp"

namespace wgf {

/// Finite-difference audit of the analytic step-objective derivatives at a
/// randomized interior point (seeded, reproducible). `corrupt_gradient`
/// perturbs the analytic gradient before comparing, as a negative control
/// that the audit actually bites.
struct AuditReport {
  double gradient_rel_err = 0.0;
  double hessian_rel_err = 0.0;            // exact mode vs FD of F
  double surrogate_hessian_rel_err = 0.0;  // surrogate mode vs FD of F~
  double threshold = 1e-5;
  bool pass = false;
};

AuditReport derivative_audit(const Preset& preset, int nx, unsigned seed = 7,
                             bool corrupt_gradient = false);

}  // namespace wgf

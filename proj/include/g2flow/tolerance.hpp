#pragma once

namespace g2flow {

/// Global numerical tolerance (default 1e-9).  Used to prune coefficients
/// after form arithmetic, for approximate equality of forms and matrices,
/// and as the acceptance gate of the structural validity checks.
/// Mutable so a driver can override it once at startup (CLI: --tol or the
/// G2FLOW_TOL environment variable); not meant to be toggled mid-computation.
double& global_tolerance();

/// RAII helper for tests that need a temporary tolerance.
class ToleranceGuard {
 public:
  explicit ToleranceGuard(double value);
  ~ToleranceGuard();
  ToleranceGuard(const ToleranceGuard&) = delete;
  ToleranceGuard& operator=(const ToleranceGuard&) = delete;

 private:
  double saved_;
};

}  // namespace g2flow

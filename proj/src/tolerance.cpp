#include "g2flow/tolerance.hpp"

namespace g2flow {

double& global_tolerance() {
  static double tol = 1e-9;
  return tol;
}

ToleranceGuard::ToleranceGuard(double value) : saved_(global_tolerance()) {
  global_tolerance() = value;
}

ToleranceGuard::~ToleranceGuard() { global_tolerance() = saved_; }

}  // namespace g2flow

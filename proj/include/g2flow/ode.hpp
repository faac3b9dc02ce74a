#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace g2flow {

enum class OdeStatus {
  Completed,      // reached t_end
  StabilityLost,  // a per-step check rejected the state
  StepUnderflow,  // step size collapsed (typically a finite-time singularity)
  MaxSteps,       // step budget exhausted
};

std::string to_string(OdeStatus s);

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  long max_steps = 1000000;
};

struct OdeSample {
  double t = 0.0;
  Eigen::VectorXd y;
};

struct OdeResult {
  OdeStatus status = OdeStatus::Completed;
  std::string message;
  double t = 0.0;        // last accepted time
  Eigen::VectorXd y;     // state there
  long steps_accepted = 0;
  long steps_rejected = 0;
  std::vector<OdeSample> samples;  // dense output at the requested times
};

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

/// Called after every accepted step; return false to halt with
/// StabilityLost, optionally filling `why`.
using OdeStepCheck = std::function<bool(double, const Eigen::VectorXd&, std::string*)>;

/// Adaptive Dormand-Prince 4(5) integration from t0 to t_end (either
/// direction).  Dense output at `sample_times` (must be sorted in the
/// direction of integration and lie inside [t0, t_end]) uses cubic Hermite
/// interpolation on accepted steps.
OdeResult integrate_rk45(const OdeRhs& f, double t0, const Eigen::VectorXd& y0,
                         double t_end, const OdeOptions& opts = {},
                         const OdeStepCheck& check = {},
                         const std::vector<double>& sample_times = {});

}  // namespace g2flow

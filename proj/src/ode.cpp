#include "g2flow/ode.hpp"

#include <algorithm>
#include <cmath>

#include "g2flow/errors.hpp"

namespace g2flow {

std::string to_string(OdeStatus s) {
  switch (s) {
    case OdeStatus::Completed: return "completed";
    case OdeStatus::StabilityLost: return "stability_lost";
    case OdeStatus::StepUnderflow: return "step_underflow";
    case OdeStatus::MaxSteps: return "max_steps";
  }
  return "unknown";
}

namespace {

// Dormand-Prince coefficients (the classic RK45 pair with FSAL).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

Eigen::VectorXd hermite(double t, double t0, double t1, const Eigen::VectorXd& y0,
                        const Eigen::VectorXd& y1, const Eigen::VectorXd& f0,
                        const Eigen::VectorXd& f1) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * f0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * f1;
}

}  // namespace

OdeResult integrate_rk45(const OdeRhs& f, double t0, const Eigen::VectorXd& y0,
                         double t_end, const OdeOptions& opts,
                         const OdeStepCheck& check, const std::vector<double>& sample_times) {
  if (!f) throw ValidationError("integrate_rk45 needs a right-hand side");
  OdeResult res;
  res.t = t0;
  res.y = y0;

  const double dir = t_end >= t0 ? +1.0 : -1.0;
  const double span = std::abs(t_end - t0);
  std::size_t sample_idx = 0;
  auto emit_through = [&](double t_prev, double t_new, const Eigen::VectorXd& y_prev,
                          const Eigen::VectorXd& y_new, const Eigen::VectorXd& f_prev,
                          const Eigen::VectorXd& f_new) {
    while (sample_idx < sample_times.size()) {
      const double s = sample_times[sample_idx];
      if (dir * (s - t_new) > 1e-14 * std::max(1.0, std::abs(t_new))) break;
      if (dir * (s - t_prev) < 0) {  // before this step, out of order: skip
        ++sample_idx;
        continue;
      }
      res.samples.push_back({s, hermite(s, t_prev, t_new, y_prev, y_new, f_prev, f_new)});
      ++sample_idx;
    }
  };

  if (span == 0.0) {
    if (!sample_times.empty()) res.samples.push_back({t0, y0});
    return res;
  }

  double t = t0;
  Eigen::VectorXd y = y0;
  Eigen::VectorXd k1 = f(t, y);
  double h = dir * std::min(std::abs(opts.initial_step), span);

  for (long step = 0; step < opts.max_steps; ++step) {
    if (dir * (t - t_end) >= 0) {
      res.status = OdeStatus::Completed;
      return res;
    }
    double h_try = h;
    if (dir * (t + h_try - t_end) > 0) h_try = t_end - t;
    // Land on the next requested sample time exactly, so dense output states
    // are accepted step endpoints rather than interpolants.
    if (sample_idx < sample_times.size()) {
      const double s = sample_times[sample_idx];
      if (dir * (s - t) > 1e-12 * std::max(1.0, std::abs(t)) &&
          dir * (t + h_try - s) > 0)
        h_try = s - t;
    }

    const Eigen::VectorXd k2 = f(t + c2 * h_try, y + h_try * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + c3 * h_try, y + h_try * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 =
        f(t + c4 * h_try, y + h_try * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 =
        f(t + c5 * h_try, y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 = f(
        t + h_try, y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd y_new =
        y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = f(t + h_try, y_new);  // FSAL
    const Eigen::VectorXd err_vec =
        h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(err_vec[i]) / scale);
    }

    if (err <= 1.0 || !std::isfinite(err)) {
      if (!std::isfinite(err) || !y_new.allFinite()) {
        // Treat a non-finite stage as a failed step and shrink.
        h = 0.1 * h_try;
        ++res.steps_rejected;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
          res.status = OdeStatus::StepUnderflow;
          res.message = "step size underflow (non-finite right-hand side)";
          return res;
        }
        continue;
      }
      ++res.steps_accepted;
      emit_through(t, t + h_try, y, y_new, k1, k7);
      t += h_try;
      y = y_new;
      k1 = k7;
      res.t = t;
      res.y = y;
      if (check) {
        std::string why;
        if (!check(t, y, &why)) {
          res.status = OdeStatus::StabilityLost;
          res.message = why.empty() ? "per-step check failed" : why;
          return res;
        }
      }
    } else {
      ++res.steps_rejected;
    }

    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    h = h_try * factor;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
      res.status = OdeStatus::StepUnderflow;
      res.message = "step size underflow";
      return res;
    }
  }
  res.status = OdeStatus::MaxSteps;
  res.message = "step budget exhausted";
  return res;
}

}  // namespace g2flow

#include "ricci/ode.hpp"

#include <algorithm>
#include <cmath>

#include "ricci/errors.hpp"

namespace ricci {

namespace {

// Dormand–Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<Vector> DormandPrince::integrate(double t0, Vector y0, const std::vector<double>& times) const {
  std::vector<Vector> out;
  out.reserve(times.size());
  double t = t0;
  Vector y = std::move(y0);
  double h = opt_.initial_step;
  Vector k1 = rhs_(t, y);

  for (double target : times) {
    if (target < t) throw GeometryError(ErrorCode::StepFailure, "output times must ascend");
    while (t < target) {
      if (++steps_ > opt_.max_steps) throw GeometryError(ErrorCode::StepFailure, "step budget exhausted");
      bool last = false;
      if (t + h >= target) {
        h = target - t;
        last = true;
      }
      const Vector k2 = rhs_(t + c2 * h, y + h * a21 * k1);
      const Vector k3 = rhs_(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      const Vector k4 = rhs_(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vector k5 = rhs_(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vector k6 = rhs_(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vector y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Vector k7 = rhs_(t + h, y5);
      const Vector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const Vector scale = (opt_.tol + opt_.tol * y.cwiseAbs().cwiseMax(y5.cwiseAbs()).array()).matrix();
      const double err_norm = (err.array() / scale.array()).abs().maxCoeff();
      if (!std::isfinite(err_norm)) throw GeometryError(ErrorCode::StepFailure, "non-finite state");

      if (err_norm <= 1.0 || std::abs(h) <= opt_.min_step) {
        t = last ? target : t + h;
        y = y5;
        k1 = k7;
        const double grow = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
        h *= grow;
      } else {
        h *= std::clamp(0.9 * std::pow(err_norm, -0.25), 0.1, 0.9);
        if (std::abs(h) < opt_.min_step) throw GeometryError(ErrorCode::StepFailure, "step size underflow");
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace ricci

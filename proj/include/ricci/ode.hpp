#pragma once

#include <functional>
#include <vector>

#include "ricci/tensor.hpp"

namespace ricci {

/// Adaptive Dormand–Prince 5(4) integration of y' = f(t, y).
class DormandPrince {
 public:
  using Rhs = std::function<Vector(double, const Vector&)>;

  struct Options {
    double tol = 1e-10;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    long max_steps = 200000;
  };

  DormandPrince(Rhs rhs, Options options) : rhs_(std::move(rhs)), opt_(options) {}

  /// Integrates from (t0, y0) and returns y at each of the ascending `times`.
  /// Throws StepFailure when the step size collapses or the budget runs out.
  std::vector<Vector> integrate(double t0, Vector y0, const std::vector<double>& times) const;

  long steps_taken() const { return steps_; }

 private:
  Rhs rhs_;
  Options opt_;
  mutable long steps_ = 0;
};

}  // namespace ricci

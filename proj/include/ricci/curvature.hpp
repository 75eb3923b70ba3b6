#pragma once

#include <vector>

#include "ricci/chart.hpp"
#include "ricci/errors.hpp"
#include "ricci/tensor.hpp"

namespace ricci {

struct MetricEval {
  Matrix g;
  Matrix g_inv;
};

/// Metric components and their exact partial derivatives at a point.
struct MetricJet {
  Matrix g;
  Matrix g_inv;
  std::vector<Matrix> dg;   // dg[a] = ∂_a g
  std::vector<Matrix> d2g;  // d2g[a * n + b] = ∂_a ∂_b g; empty for first-order jets

  const Matrix& second(int a, int b) const { return d2g[static_cast<size_t>(a) * g.rows() + b]; }
};

struct PointCurvature {
  Vector point;
  Christoffel christoffel;
  AlgebraicCurvature riemann;  // coordinate frame, frame_metric = g(x)
  Matrix ricci;
  double scalar = 0.0;
};

/// Checks symmetry and positive definiteness of a Gram matrix; returns its inverse.
Matrix checked_inverse(const Matrix& g);

MetricEval eval_metric(const MetricChart& chart, const Vector& x);

/// order 1 uses one dual layer, order 2 two nested layers.
MetricJet metric_jet(const MetricChart& chart, const Vector& x, int order);

/// Γ^k_{ij} = ½ g^{kl}(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij}).
Christoffel christoffel(const MetricChart& chart, const Vector& x);
Christoffel christoffel_from_jet(const MetricJet& jet);

/// Full curvature at x with R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z,
/// stored so that R_{ijij} is the sectional curvature of orthonormal e_i, e_j.
PointCurvature riemann_at(const MetricChart& chart, const Vector& x);

/// Riemann components from Γ and ∂Γ; dgamma[m](k, i, j) = ∂_m Γ^k_{ij}.
Tensor4<double> riemann_from_christoffel(const Matrix& g, const Christoffel& gamma,
                                         const std::vector<Christoffel>& dgamma);

/// Sectional curvature of span{u, v}; the Gram matrix comes from R.frame_metric.
double sectional(const AlgebraicCurvature& R, const Vector& u, const Vector& v);

inline constexpr double kDegeneratePlaneTol = 1e-12;

}  // namespace ricci

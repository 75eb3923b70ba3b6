#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ricci/chart.hpp"
#include "ricci/frame.hpp"
#include "ricci/tensor.hpp"

namespace ricci {

struct GeodesicState {
  Vector position;
  Vector velocity;
  double time = 0.0;
  double speed_drift = 0.0;  // max |g(v,v) − g(v0,v0)| over the outputs
};

GeodesicState geodesic_flow(const MetricChart& chart, const Vector& p, const Vector& u, double t_end,
                            double tol = 1e-10);

/// Jacobi fields along γ_u with J(0) = 0, J'(0) = I, in a parallel
/// orthonormal frame whose last vector is γ'(0) = u.
struct JacobiBlock {
  double time = 0.0;
  Vector position;
  Vector velocity;
  Matrix frame;       // parallel frame, coordinate components in columns
  Matrix J;           // J(t)
  Matrix J_prime;     // J'(t)
  double frame_drift = 0.0;  // max |EᵀgE − I|
};

/// Initial parallel frame used by jacobi_transport: [u^⊥ basis | u].
Matrix initial_jacobi_frame(const Matrix& metric, const Vector& u);

/// Integrates geodesic, parallel frame and Jacobi system jointly; returns the
/// block at every ascending time in `times`.
std::vector<JacobiBlock> jacobi_transport(const MetricChart& chart, const Vector& p, const Vector& u,
                                          const std::vector<double>& times, double tol = 1e-10);
JacobiBlock jacobi_transport(const MetricChart& chart, const Vector& p, const Vector& u, double t_end,
                             double tol = 1e-10);

/// Density model ρ(r) = 1 + c2 r² + c4 r⁴ fitted by least squares; c0 = 1 is
/// the Euclidean leading term.
struct ExpansionFit {
  std::string label;
  std::vector<double> radii;      // strictly decreasing
  std::vector<double> densities;
  double c0 = 1.0;
  double c2 = 0.0;
  double c4 = 0.0;
  double residual = 0.0;          // max relative misfit
  double target = 0.0;            // expected c2
  double tolerance = 0.0;
  bool pass() const;
  double model(double r) const { return c0 + c2 * r * r + c4 * r * r * r * r; }
};

inline constexpr double kFitResidualLimit = 1e-4;

std::vector<double> default_radius_ladder(double scale = 1.0);

/// Fits radii/densities; throws FitRejected when the residual exceeds the limit.
ExpansionFit fit_expansion(std::vector<double> radii, std::vector<double> densities, std::string label);

/// Same data without the smallest radius.
ExpansionFit refit_without_smallest(const ExpansionFit& fit);

struct ExpansionOptions {
  double tol = 1e-10;
  int monte_carlo_samples = 8192;  // n ≥ 4
  int circle_points = 64;          // n = 2
  int gauss_nodes = 12;            // n = 3, nodes in cos θ
  int azimuth_points = 24;         // n = 3
  std::uint64_t seed = 0x5EED;
};

/// vol(S_r)/(ω_{n−1} r^{n−1}) → 1 − Scal/(6n) r².
ExpansionFit sphere_volume_coeff(const MetricChart& chart, const Vector& p, std::vector<double> radii,
                                 const ExpansionOptions& options = {});

/// Jacobian of exp_p along unit u, restricted to u^⊥ → 1 − Ric(u,u)/6 r².
ExpansionFit radial_density_coeff(const MetricChart& chart, const Vector& p, const Vector& u,
                                  std::vector<double> radii, const ExpansionOptions& options = {});

/// (d−1)-volume density of exp_p(r S^{d−1}_Π) at v → 1 − Ric_Π(v,v)/6 r².
ExpansionFit plane_density_coeff(const MetricChart& chart, const Vector& p, const SubspaceFrame& frame,
                                 const Vector& v, std::vector<double> radii, const ExpansionOptions& options = {});

/// Density of the normal sphere of Π^⊥ along unit u ∈ Π → 1 − Ric^⊥_Π(u)/6 r².
ExpansionFit normal_density_coeff(const MetricChart& chart, const Vector& p, const SubspaceFrame& frame,
                                  const Vector& u, std::vector<double> radii, const ExpansionOptions& options = {});

/// L(r)/(2πr) for geodesic circles on a surface → 1 − K/6 r².
ExpansionFit bdp_circumference(const MetricChart& chart, const Vector& p, std::vector<double> radii,
                               const ExpansionOptions& options = {});

/// Gauss–Legendre nodes and weights on [−1, 1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace ricci

#include "ricci/means.hpp"

#include <cmath>
#include <random>

#include "ricci/errors.hpp"
#include "ricci/exterior.hpp"

namespace ricci {

namespace {

void require_same_frame(const AlgebraicCurvature& R, const SubspaceFrame& frame) {
  if (R.dim() != frame.dim_total())
    throw GeometryError(ErrorCode::DimensionMismatch, "curvature and frame dimensions differ");
  const double scale = std::max(1.0, R.frame_metric.cwiseAbs().maxCoeff());
  if ((R.frame_metric - frame.metric).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw GeometryError(ErrorCode::FrameMismatch, "frame metric differs from curvature frame");
}

void require_unit_in(const Matrix& basis, const Matrix& g, const Vector& v) {
  const Vector projected = basis * (basis.transpose() * (g * v));
  const Vector residual = v - projected;
  if (std::sqrt(std::max(0.0, residual.dot(g * residual))) > 1e-8)
    throw GeometryError(ErrorCode::VectorNotInPlane, "direction is not in the plane");
  if (std::abs(std::sqrt(v.dot(g * v)) - 1.0) > 1e-10)
    throw GeometryError(ErrorCode::NotUnit, "direction is not a unit vector");
}

}  // namespace

double directional_intrinsic_ricci(const AlgebraicCurvature& R, const SubspaceFrame& frame,
                                   const Vector& v) {
  require_same_frame(R, frame);
  require_unit_in(frame.plane, frame.metric, v);
  // Σ_i R(v, e_i, v, e_i) over any orthonormal basis of Π; the component of
  // e_i along v contributes nothing, so this equals the sum over a completion.
  double s = 0.0;
  for (int i = 0; i < frame.dim_plane(); ++i) s += R.evaluate(v, frame.plane.col(i), v, frame.plane.col(i));
  return s;
}

double directional_normal_ricci(const AlgebraicCurvature& R, const SubspaceFrame& frame,
                                const Vector& u) {
  require_same_frame(R, frame);
  require_unit_in(frame.plane, frame.metric, u);
  double s = 0.0;
  for (int a = 0; a < frame.codim(); ++a) s += R.evaluate(u, frame.normal.col(a), u, frame.normal.col(a));
  return s;
}

namespace {

MeanRicciReport finish(double intrinsic_sum, double mixed_sum, int n, int d) {
  MeanRicciReport rep;
  rep.intrinsic_sum = intrinsic_sum;
  rep.mixed_sum = mixed_sum;
  if (d > 1) rep.intrinsic_mean = 2.0 * intrinsic_sum / d;
  if (d < n) rep.normal_mean = mixed_sum / (static_cast<double>(d) * (n - d));
  return rep;
}

}  // namespace

MeanRicciReport mean_ricci(const AlgebraicCurvature& R, const SubspaceFrame& frame) {
  require_same_frame(R, frame);
  const int d = frame.dim_plane();
  double intrinsic = 0.0, mixed = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j)
      intrinsic += R.evaluate(frame.plane.col(i), frame.plane.col(j), frame.plane.col(i), frame.plane.col(j));
    for (int a = 0; a < frame.codim(); ++a)
      mixed += R.evaluate(frame.plane.col(i), frame.normal.col(a), frame.plane.col(i), frame.normal.col(a));
  }
  return finish(intrinsic, mixed, frame.dim_total(), d);
}

Matrix curvature_operator(const AlgebraicCurvature& R) {
  const MultiIndexBasis pairs(R.dim(), 2);
  Matrix q(pairs.size(), pairs.size());
  for (int p = 0; p < pairs.size(); ++p)
    for (int r = 0; r < pairs.size(); ++r)
      q(p, r) = R(pairs[p][0], pairs[p][1], pairs[r][0], pairs[r][1]);
  return q;
}

MeanRicciReport mean_ricci_via_traces(const AlgebraicCurvature& R, const SubspaceFrame& frame) {
  require_same_frame(R, frame);
  const int n = frame.dim_total();
  const int d = frame.dim_plane();
  const MultiIndexBasis pairs(n, 2);
  const Matrix q = curvature_operator(R);

  auto wedge = [&](const Vector& u, const Vector& v) {
    Vector b(pairs.size());
    for (int p = 0; p < pairs.size(); ++p) {
      const int a = pairs[p][0], c = pairs[p][1];
      b(p) = u(a) * v(c) - u(c) * v(a);
    }
    return b;
  };

  double trace_plane = 0.0, trace_mixed = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Vector b = wedge(frame.plane.col(i), frame.plane.col(j));
      trace_plane += b.dot(q * b);
    }
    for (int a = 0; a < frame.codim(); ++a) {
      const Vector b = wedge(frame.plane.col(i), frame.normal.col(a));
      trace_mixed += b.dot(q * b);
    }
  }
  return finish(trace_plane, trace_mixed, n, d);
}

SphereAverage sphere_average_check(const AlgebraicCurvature& R, const SubspaceFrame& frame,
                                   int samples, std::uint64_t seed) {
  require_same_frame(R, frame);
  const int d = frame.dim_plane();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  double si = 0.0, si2 = 0.0, sn = 0.0, sn2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vector z(d);
    for (int k = 0; k < d; ++k) z(k) = gauss(rng);
    const double norm = z.norm();
    if (norm == 0.0) {
      --s;
      continue;
    }
    const Vector v = frame.plane * (z / norm);
    const double ri = directional_intrinsic_ricci(R, frame, v);
    // Ric^⊥_Π(v) averages to (n − d)·Ric̄^⊥_Π; rescale so both fields estimate the means.
    const double rn = frame.codim() > 0 ? directional_normal_ricci(R, frame, v) / frame.codim() : 0.0;
    si += ri;
    si2 += ri * ri;
    sn += rn;
    sn2 += rn * rn;
  }
  SphereAverage avg;
  avg.samples = samples;
  const double m = samples;
  avg.intrinsic = si / m;
  avg.normal = sn / m;
  auto stderr_of = [m](double s, double s2) {
    const double var = std::max(0.0, (s2 - s * s / m) / std::max(1.0, m - 1.0));
    return std::sqrt(var / m);
  };
  avg.intrinsic_stderr = stderr_of(si, si2);
  avg.normal_stderr = stderr_of(sn, sn2);
  return avg;
}

}  // namespace ricci

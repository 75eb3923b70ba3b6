#include "ricci/frame.hpp"

#include <cmath>
#include <vector>

namespace ricci {

namespace {

double g_dot(const Matrix& g, const Vector& a, const Vector& b) { return a.dot(g * b); }

// Removes the components of v along the first `count` columns of q, twice.
void project_out(const Matrix& g, const Matrix& q, int count, Vector& v) {
  for (int pass = 0; pass < 2; ++pass)
    for (int c = 0; c < count; ++c) v -= g_dot(g, q.col(c), v) * q.col(c);
}

}  // namespace

Matrix SubspaceFrame::full() const {
  Matrix f(dim_total(), dim_total());
  f << plane, normal;
  return f;
}

double SubspaceFrame::orthonormality_defect() const {
  const Matrix f = full();
  return (f.transpose() * metric * f - Matrix::Identity(dim_total(), dim_total())).cwiseAbs().maxCoeff();
}

SubspaceFrame build_frame(const Matrix& metric, const Matrix& spanners, Vector point) {
  const int n = static_cast<int>(metric.rows());
  const int d = static_cast<int>(spanners.cols());
  if (spanners.rows() != n || d < 1 || d > n)
    throw GeometryError(ErrorCode::DimensionMismatch, "spanners must be n × d with 1 ≤ d ≤ n");

  // Dependence test on the unit-normalized spanners.
  Matrix unit = spanners;
  for (int c = 0; c < d; ++c) {
    const double norm2 = g_dot(metric, unit.col(c), unit.col(c));
    if (!(norm2 > 0.0)) throw GeometryError(ErrorCode::DegenerateSpan, "zero spanner");
    unit.col(c) /= std::sqrt(norm2);
  }
  if (!((unit.transpose() * metric * unit).determinant() > kDegenerateSpanTol))
    throw GeometryError(ErrorCode::DegenerateSpan, "spanners are linearly dependent");

  Matrix q(n, n);
  std::vector<bool> used(d, false);
  for (int c = 0; c < d; ++c) {
    // pivot: remaining spanner with the largest residual
    int best = -1;
    double best_norm = -1.0;
    Vector best_vec;
    for (int s = 0; s < d; ++s) {
      if (used[s]) continue;
      Vector v = unit.col(s);
      project_out(metric, q, c, v);
      const double norm2 = g_dot(metric, v, v);
      if (norm2 > best_norm) {
        best_norm = norm2;
        best = s;
        best_vec = std::move(v);
      }
    }
    if (!(best_norm > kDegenerateSpanTol))
      throw GeometryError(ErrorCode::DegenerateSpan, "rank of spanners below d");
    used[best] = true;
    q.col(c) = best_vec / std::sqrt(best_norm);
  }

  // Complete with the coordinate axis that survives projection best.
  std::vector<bool> axis_used(n, false);
  for (int c = d; c < n; ++c) {
    int best = -1;
    double best_norm = -1.0;
    Vector best_vec;
    for (int a = 0; a < n; ++a) {
      if (axis_used[a]) continue;
      Vector v = Vector::Unit(n, a);
      project_out(metric, q, c, v);
      const double norm2 = g_dot(metric, v, v);
      if (norm2 > best_norm) {
        best_norm = norm2;
        best = a;
        best_vec = std::move(v);
      }
    }
    axis_used[best] = true;
    q.col(c) = best_vec / std::sqrt(best_norm);
  }

  SubspaceFrame frame;
  frame.point = std::move(point);
  frame.metric = metric;
  frame.plane = q.leftCols(d);
  frame.normal = q.rightCols(n - d);
  return frame;
}

SubspaceFrame remix(const SubspaceFrame& frame, const Matrix& q_plane, const Matrix& q_normal) {
  SubspaceFrame out = frame;
  out.plane = frame.plane * q_plane;
  out.normal = frame.normal * q_normal;
  return out;
}

SubspaceFrame complement(const SubspaceFrame& frame) {
  SubspaceFrame out = frame;
  out.plane = frame.normal;
  out.normal = frame.plane;
  return out;
}

}  // namespace ricci

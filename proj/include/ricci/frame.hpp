#pragma once

#include "ricci/errors.hpp"
#include "ricci/tensor.hpp"

namespace ricci {

/// g-orthonormal bases of a d-plane Π and of its complement Π^⊥ at a point.
/// Vectors are columns, expressed in the same frame as `metric`.
struct SubspaceFrame {
  Vector point;
  Matrix metric;
  Matrix plane;   // n × d
  Matrix normal;  // n × (n − d)

  int dim_total() const { return static_cast<int>(metric.rows()); }
  int dim_plane() const { return static_cast<int>(plane.cols()); }
  int codim() const { return static_cast<int>(normal.cols()); }

  /// [plane | normal], a full g-orthonormal frame.
  Matrix full() const;

  /// Max deviation of the full frame's Gram matrix from the identity.
  double orthonormality_defect() const;
};

inline constexpr double kDegenerateSpanTol = 1e-10;

/// Modified Gram–Schmidt (two passes) in the g inner product with pivoting
/// on the spanners, then completion by projected coordinate axes.
SubspaceFrame build_frame(const Matrix& metric, const Matrix& spanners, Vector point = Vector());

/// Same plane and metric, orthonormal bases rotated by Q_plane ∈ O(d) and Q_normal ∈ O(n − d).
SubspaceFrame remix(const SubspaceFrame& frame, const Matrix& q_plane, const Matrix& q_normal);

/// Swaps the roles of Π and Π^⊥.
SubspaceFrame complement(const SubspaceFrame& frame);

}  // namespace ricci

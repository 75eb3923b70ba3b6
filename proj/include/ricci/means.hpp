#pragma once

#include <cstdint>
#include <optional>

#include "ricci/frame.hpp"
#include "ricci/tensor.hpp"

namespace ricci {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr int kDefaultDirectionSamples = 4096;

/// Intrinsic and normal (mixed) mean Ricci curvatures of a d-plane.
/// intrinsic_mean is absent for d = 1, normal_mean for d = n.
struct MeanRicciReport {
  std::optional<double> intrinsic_mean;
  std::optional<double> normal_mean;
  double intrinsic_sum = 0.0;  // Σ_{i<j} K(e_i, e_j)
  double mixed_sum = 0.0;      // Σ_{i,α} K(e_i, n_α)
};

/// Ric_Π(v, v) = Σ K(v, e_i') over an orthonormal completion of v in Π.
double directional_intrinsic_ricci(const AlgebraicCurvature& R, const SubspaceFrame& frame,
                                   const Vector& v);

/// Ric^⊥_Π(u) = Σ_α K(u, n_α).
double directional_normal_ricci(const AlgebraicCurvature& R, const SubspaceFrame& frame,
                                const Vector& u);

MeanRicciReport mean_ricci(const AlgebraicCurvature& R, const SubspaceFrame& frame);

/// Same means from traces of the curvature operator on Λ²Π and Π∧Π^⊥.
MeanRicciReport mean_ricci_via_traces(const AlgebraicCurvature& R, const SubspaceFrame& frame);

/// Curvature operator as a bilinear form on Λ² in the pair basis (a<b):
/// Q(ab, cd) = R_{abcd}.
Matrix curvature_operator(const AlgebraicCurvature& R);

struct SphereAverage {
  double intrinsic = 0.0;
  double intrinsic_stderr = 0.0;
  double normal = 0.0;
  double normal_stderr = 0.0;
  int samples = 0;
};

/// Monte-Carlo averages over uniform unit v ∈ Π of Ric_Π(v, v) and of
/// Ric^⊥_Π(v)/(n − d), estimating the intrinsic and normal means.
SphereAverage sphere_average_check(const AlgebraicCurvature& R, const SubspaceFrame& frame,
                                   int samples = kDefaultDirectionSamples,
                                   std::uint64_t seed = kDefaultSeed);

}  // namespace ricci

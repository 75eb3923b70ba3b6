#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ricci/exterior.hpp"
#include "ricci/frame.hpp"
#include "ricci/means.hpp"
#include "ricci/tensor.hpp"

namespace ricci {

inline constexpr int kMaxWeitzenboeckDim = 12;

/// Matrix of the Weitzenböck curvature endomorphism on Λ^d in the wedge
/// basis of an orthonormal frame: entries(I, J) = ⟨𝓡_d ω_J, ω_I⟩.
struct WeitzenboeckMatrix {
  int n = 0;
  int d = 0;
  Matrix entries;

  double asymmetry() const { return (entries - entries.transpose()).cwiseAbs().maxCoeff(); }
};

/// (𝓡_d ω)_I = Σ_s Ric_{i_s j} ω_{i_1..j..i_d} − Σ_{s<t} R_{i_s i_t j k} ω_{i_1..j..k..i_d},
/// with j, k written in slots s, t and the tuple sorted with its parity.
WeitzenboeckMatrix weitz_matrix(const AlgebraicCurvature& R, int d);

/// Unit-scaled simple d-vector e_1∧…∧e_d built from a frame's plane basis.
struct SimpleDVector {
  SubspaceFrame frame;
  double scale = 1.0;
};

/// ⟨𝓡_d V, V⟩; V's frame must live in the orthonormal frame of W.
double pair_simple(const WeitzenboeckMatrix& W, const SimpleDVector& V);

/// The curvature tensor and frame re-expressed in the orthonormal frame
/// [plane | normal], so that Π is spanned by the first d axes.
struct OrthonormalView {
  AlgebraicCurvature curvature;
  SubspaceFrame frame;
};
OrthonormalView orthonormal_view(const AlgebraicCurvature& R, const SubspaceFrame& frame);

/// The three routes to ⟨𝓡_d V, V⟩ for the unit simple V spanning frame.plane.
struct SimplePairing {
  double weitzenboeck = 0.0;          // matrix pairing
  double ricci_minus_sectional = 0.0; // Σ Ric(e_i, e_i) − 2 Σ_{i<j} K(e_i, e_j)
  double mixed = 0.0;                 // d(n−d)·mean normal Ricci = Σ_{i,α} K(e_i, n_α)
  double max_discrepancy() const;
};
SimplePairing simple_pairing(const AlgebraicCurvature& R, const SubspaceFrame& frame);

struct BivectorBochner {
  double value = 0.0;    // Ric(X,X) + Ric(Y,Y) − 2K(X,Y)
  double pairing = 0.0;  // ⟨𝓡_2 X∧Y, X∧Y⟩
  double normal_term = 0.0;  // 2(n−2)·mean normal Ricci
  double max_discrepancy() const;
};
BivectorBochner bochner_bivector(const AlgebraicCurvature& R, const Vector& x, const Vector& y);

/// Curvature available at arbitrary points of a coordinate box.
struct CurvatureSource {
  std::string name;
  int dim = 0;
  bool homogeneous = false;
  bool non_compact = false;
  Vector lower;
  Vector upper;
  Vector base_point;
  std::function<AlgebraicCurvature(const Vector&)> at;
};

struct KappaSearchConfig {
  int restarts = 32;
  int point_samples = 16;
  double initial_step = 0.3;
  double shrink = 0.5;
  double min_step = 1e-6;
  long long max_evaluations = 5'000'000;
  std::uint64_t seed = kDefaultSeed;
};

struct KappaTrace {
  Vector point;
  double start_value = 0.0;
  double end_value = 0.0;
  long long evaluations = 0;
};

struct KappaResult {
  int n = 0;
  int d = 0;
  double kappa = 0.0;           // d(n−d)·best normal mean; an upper bound on κ_d
  double best_normal_mean = 0.0;
  double median_normal_mean = 0.0;
  Vector point;
  Matrix plane;                 // orthonormal basis in chart coordinates
  int restarts = 0;
  long long evaluations = 0;
  bool upper_bound = true;
  bool homogeneous = false;
  bool non_compact = false;
  bool budget_exceeded = false;
  std::vector<KappaTrace> traces;
};

/// Multi-start compass search for d(n−d)·inf Ric̄^⊥_Π over points and planes.
KappaResult kappa_d(const CurvatureSource& source, int d, const KappaSearchConfig& config = {});

struct LichnerowiczEntry {
  double lambda = 0.0;
  bool satisfied = false;   // λ ≥ κ
  bool boundary = false;    // λ = κ: equality forces ∇V ≡ 0
  std::string note;
};

std::vector<LichnerowiczEntry> lichnerowicz_report(double kappa, const std::vector<double>& lambdas,
                                                   double tol = 1e-9);

}  // namespace ricci

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "ricci/chart.hpp"
#include "ricci/means.hpp"
#include "ricci/models.hpp"
#include "ricci/tensor.hpp"
#include "ricci/weitzenboeck.hpp"

namespace ricci {

/// A model manifold: coordinate chart for the numeric pipeline and/or a
/// closed-form curvature oracle.
///
/// When present, `frame(x)` returns the coordinate components of the
/// g-orthonormal frame in which `oracle(x)` is expressed.
struct CatalogueEntry {
  std::string name;
  int dim = 0;
  ChartPtr chart;
  std::function<AlgebraicCurvature(const Vector&)> oracle;
  std::function<Matrix(const Vector&)> frame;
  bool homogeneous = false;
  bool non_compact = false;
  double length_scale = 1.0;
  Vector base_point;
  std::map<std::string, double> params;

  /// Closed-form means of Π = Π_1 ⊕ Π_2 for entries that split as
  /// first factor (split_dim axes) ⊕ second factor. Plane blocks are given in
  /// the orthonormal frames of the factors.
  int split_dim = 0;
  std::function<MeanRicciReport(const Vector&, const Matrix&, const Matrix&)> split_means;

  bool has_chart() const { return static_cast<bool>(chart); }
  bool has_oracle() const { return static_cast<bool>(oracle); }

  /// Curvature at x from the chart when available, else from the oracle.
  /// Components are in chart coordinates (or the oracle frame for oracle-only entries).
  AlgebraicCurvature curvature(const Vector& x) const;

  /// Orthonormal frame at x in the coordinates of curvature(x).
  Matrix orthonormal_frame(const Vector& x) const;

  /// Random point in the inner 80% of the chart box (base point when homogeneous
  /// and chart-less).
  Vector sample_point(std::mt19937_64& rng) const;

  CurvatureSource source() const;
};

CatalogueEntry euclidean(int n);
CatalogueEntry space_form(int n, double kappa);
CatalogueEntry heisenberg();
CatalogueEntry cpn_fubini_study(int n);
CatalogueEntry surface_of_revolution(models::Profile profile, double R = 1.0);
CatalogueEntry product_spheres(int a, double rho_a, int b, double rho_b);

struct WarpedSpec {
  int base_dim = 1;
  double base_kappa = 0.0;
  int fiber_dim = 2;
  double fiber_kappa = 1.0;
  models::Warp warp;
};
CatalogueEntry warped_product(const WarpedSpec& spec);

/// Catalogue entries used by the property and verification suites.
std::vector<CatalogueEntry> standard_catalogue();

// ---- closed-form oracles -------------------------------------------------

struct MeanPair {
  double intrinsic;
  double normal;
};

MeanPair space_form_means(int d, double kappa);

/// Fixed complex structure on R^{2n}: J e_{2k} = e_{2k+1}, J e_{2k+1} = −e_{2k}.
Matrix complex_structure(int n);
/// Fubini–Study tensor with holomorphic sectional curvature 4.
AlgebraicCurvature cpn_curvature(int n);
/// 1 + 3⟨Ju, v⟩² for orthonormal u, v.
double cpn_sectional(int n, const Vector& u, const Vector& v);
MeanPair cpn_complex_plane_means(int k);
double cpn_totally_real_normal_mean(int n, int d);
double cpn_bochner_bound(int n, int d);

struct PrincipalCurvatures {
  double meridian;
  double parallel;
  double gaussian() const { return meridian * parallel; }
};
PrincipalCurvatures revolution_curvatures(const models::RevolutionProfile& profile, double u);

MeanPair product_means(int a, double kappa_a, int b, double kappa_b, int d1, int d2);

/// Bishop–O'Neill ingredients of a warped product at a point, in
/// orthonormal frames of the base and fiber.
struct WarpedData {
  int b = 0;
  int m = 0;
  double f = 1.0;
  double grad_norm2 = 0.0;   // |∇f|² on (B, g_B)
  Matrix hessian;            // Hess f in the orthonormal base frame
  double kappa_base = 0.0;
  double kappa_fiber = 0.0;
};
WarpedData warped_data(const WarpedSpec& spec, const Vector& x);

/// Sectional curvatures of adapted planes: base–base, fiber–fiber, base–fiber.
double warped_sectional_base(const WarpedData& w);
double warped_sectional_fiber(const WarpedData& w);
double warped_sectional_mixed(const WarpedData& w, const Vector& x_unit);

/// Mean curvatures of Π = Π_B ⊕ Π_F from the case (A)–(D) formulas.
/// `plane_base` is b × d1 and `plane_fiber` m × d2, orthonormal in the
/// respective orthonormal frames.
MeanRicciReport warped_means(const WarpedData& w, const Matrix& plane_base, const Matrix& plane_fiber);

}  // namespace ricci

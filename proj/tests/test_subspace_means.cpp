#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ricci/catalogue.hpp"
#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"
#include "ricci/means.hpp"
#include "ricci/verify.hpp"

using namespace ricci;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  return ErrorCode::TaskError;
}

SubspaceFrame heisenberg_xy(const CatalogueEntry& h, const Vector& x) {
  return build_frame(eval_metric(*h.chart, x).g, h.orthonormal_frame(x).leftCols(2), x);
}

}  // namespace

TEST_CASE("build_frame splits coordinate axes in euclidean space") {
  const SubspaceFrame f = build_frame(Matrix::Identity(4, 4), Matrix::Identity(4, 4).leftCols(2));
  CHECK((f.plane - Matrix::Identity(4, 4).leftCols(2)).norm() < 1e-15);
  CHECK((f.normal - Matrix::Identity(4, 4).rightCols(2)).norm() < 1e-15);
  CHECK(f.orthonormality_defect() < 1e-15);
}

TEST_CASE("build_frame by hand Gram-Schmidt") {
  Matrix s(3, 2);
  s << 1, 0, 1, 1, 0, 0;
  const SubspaceFrame f = build_frame(Matrix::Identity(3, 3), s);
  CHECK(f.orthonormality_defect() < 1e-12);
  // spans the xy-plane, normal is ±z
  CHECK(f.plane.row(2).norm() < 1e-14);
  CHECK(std::abs(std::abs(f.normal(2, 0)) - 1.0) < 1e-14);
}

TEST_CASE("build_frame on the heisenberg metric away from the origin") {
  const CatalogueEntry h = heisenberg();
  Vector x(3);
  x << 1.7, -0.4, 2.2;
  const Matrix g = eval_metric(*h.chart, x).g;
  for (int d = 1; d <= 3; ++d) {
    const SubspaceFrame f = build_frame(g, Matrix::Identity(3, 3).rightCols(d), x);
    CHECK(f.orthonormality_defect() < 1e-10);
    CHECK(f.dim_plane() == d);
    CHECK(f.codim() == 3 - d);
  }
  Matrix dep(3, 2);
  dep << 1, 2, 0, 0, 1, 2;
  CHECK(code_of([&] { build_frame(g, dep); }) == ErrorCode::DegenerateSpan);
  Matrix near(3, 2);
  near << 1, 1, 0, 1e-9, 0, 0;
  CHECK(code_of([&] { build_frame(g, near); }) == ErrorCode::DegenerateSpan);
}

TEST_CASE("directional Ricci curvatures") {
  SUBCASE("space form") {
    const double kappa = -0.7;
    const int n = 5;
    const AlgebraicCurvature R = constant_curvature(n, kappa);
    std::mt19937_64 rng(1);
    for (int d = 1; d <= n; ++d) {
      const Matrix Q = oracle::haar_orthogonal(n, rng);
      const SubspaceFrame f = build_frame(Matrix::Identity(n, n), Q.leftCols(d));
      const Vector v = f.plane * oracle::haar_orthogonal(d, rng).col(0);
      CHECK(directional_intrinsic_ricci(R, f, v) == doctest::Approx((d - 1) * kappa).epsilon(1e-12));
      CHECK(directional_normal_ricci(R, f, v) == doctest::Approx((n - d) * kappa).epsilon(1e-12));
    }
  }
  SUBCASE("d = 2 is a single sectional curvature") {
    const CatalogueEntry h = heisenberg();
    Vector x(3);
    x << -0.5, 0.3, 0.9;
    const AlgebraicCurvature R = riemann_at(*h.chart, x).riemann;
    const Matrix F = h.orthonormal_frame(x);
    Matrix s(3, 2);
    s.col(0) = F.col(0) + 0.3 * F.col(2);
    s.col(1) = F.col(1) - F.col(2);
    const SubspaceFrame f = build_frame(R.frame_metric, s, x);
    CHECK(directional_intrinsic_ricci(R, f, f.plane.col(0)) ==
          doctest::Approx(sectional(R, f.plane.col(0), f.plane.col(1))).epsilon(1e-12));
  }
  SUBCASE("heisenberg X in span{X,Y}") {
    const CatalogueEntry h = heisenberg();
    const Vector o = Vector::Zero(3);
    const AlgebraicCurvature R = riemann_at(*h.chart, o).riemann;
    const SubspaceFrame f = heisenberg_xy(h, o);
    const Vector X = h.orthonormal_frame(o).col(0);
    CHECK(directional_intrinsic_ricci(R, f, X) == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(directional_normal_ricci(R, f, X) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("full plane has an empty normal sum") {
    const AlgebraicCurvature R = constant_curvature(3, 2.0);
    const SubspaceFrame f = build_frame(Matrix::Identity(3, 3), Matrix::Identity(3, 3));
    CHECK(directional_normal_ricci(R, f, Vector::Unit(3, 1)) == 0.0);
  }
  SUBCASE("independent of the orthonormal completion") {
    const AlgebraicCurvature R = cpn_curvature(2);
    std::mt19937_64 rng(2);
    const Matrix Q = oracle::haar_orthogonal(4, rng);
    const SubspaceFrame f = build_frame(Matrix::Identity(4, 4), Q.leftCols(3));
    const Vector v = f.plane * oracle::haar_orthogonal(3, rng).col(0);
    // explicit completion {v, w1, w2} of Π by Gram-Schmidt against v
    std::vector<Vector> w{v};
    for (int i = 0; i < 3 && w.size() < 3; ++i) {
      Vector c = f.plane.col(i);
      for (const Vector& q : w) c -= q.dot(c) * q;
      if (c.norm() > 1e-3) w.push_back(c.normalized());
    }
    REQUIRE(w.size() == 3);
    double sum = 0.0;
    for (int i = 1; i < 3; ++i) sum += oracle::kahler_sectional(v, w[i]);
    CHECK(directional_intrinsic_ricci(R, f, v) == doctest::Approx(sum).epsilon(1e-12));
  }
  SUBCASE("errors") {
    const AlgebraicCurvature R = constant_curvature(3, 1.0);
    const SubspaceFrame f = build_frame(Matrix::Identity(3, 3), Matrix::Identity(3, 3).leftCols(2));
    CHECK(code_of([&] { directional_normal_ricci(R, f, Vector::Unit(3, 2)); }) == ErrorCode::VectorNotInPlane);
    CHECK(code_of([&] { directional_intrinsic_ricci(R, f, 2.0 * Vector::Unit(3, 0)); }) == ErrorCode::NotUnit);
    const AlgebraicCurvature Rg = R.in_basis(2.0 * Matrix::Identity(3, 3));
    CHECK(code_of([&] { mean_ricci(Rg, f); }) == ErrorCode::FrameMismatch);
  }
}

TEST_CASE("mean Ricci curvatures against closed forms") {
  SUBCASE("space forms") {
    std::mt19937_64 rng(4);
    for (double kappa : {-1.0, 0.0, 0.5, 1.0})
      for (int n = 2; n <= 6; ++n) {
        const AlgebraicCurvature R = constant_curvature(n, kappa);
        for (int d = 1; d <= n; ++d) {
          const SubspaceFrame f =
              build_frame(Matrix::Identity(n, n), oracle::haar_orthogonal(n, rng).leftCols(d));
          const MeanRicciReport m = mean_ricci(R, f);
          CHECK(m.intrinsic_mean.has_value() == (d > 1));
          CHECK(m.normal_mean.has_value() == (d < n));
          if (m.intrinsic_mean) CHECK(std::abs(*m.intrinsic_mean - (d - 1) * kappa) < 1e-12);
          if (m.normal_mean) CHECK(std::abs(*m.normal_mean - kappa) < 1e-12);
          if (m.intrinsic_mean) CHECK(*m.intrinsic_mean == doctest::Approx(2.0 * m.intrinsic_sum / d));
          if (m.normal_mean) CHECK(*m.normal_mean == doctest::Approx(m.mixed_sum / (d * (n - d))));
        }
      }
  }
  SUBCASE("heisenberg span{X,Y}") {
    const CatalogueEntry h = heisenberg();
    const Vector o = Vector::Zero(3);
    const MeanRicciReport m = mean_ricci(riemann_at(*h.chart, o).riemann, heisenberg_xy(h, o));
    CHECK(std::abs(*m.intrinsic_mean + 0.75) < 1e-12);
    CHECK(std::abs(*m.normal_mean - 0.25) < 1e-12);
  }
  SUBCASE("product of spheres, block oracle") {
    const CatalogueEntry e = product_spheres(2, 0.8, 3, 1.4);
    const double ka = 1 / 0.64, kb = 1 / 1.96;
    std::mt19937_64 rng(8);
    const Vector x = e.sample_point(rng);
    const AlgebraicCurvature R = riemann_at(*e.chart, x).riemann;
    const Matrix F = e.orthonormal_frame(x);
    for (int d1 = 0; d1 <= 2; ++d1)
      for (int d2 = 0; d2 <= 3; ++d2) {
        if (d1 + d2 == 0) continue;
        Matrix span = Matrix::Zero(5, d1 + d2);
        span.topLeftCorner(2, d1) = oracle::haar_orthogonal(2, rng).leftCols(d1);
        span.bottomRightCorner(3, d2) = oracle::haar_orthogonal(3, rng).leftCols(d2);
        const MeanRicciReport m = mean_ricci(R, build_frame(R.frame_metric, F * span, x));
        // Direct count: K = κ_a on pairs inside factor a, κ_b inside b, 0 across.
        const int d = d1 + d2;
        const double in_pairs = ka * d1 * (d1 - 1) / 2.0 + kb * d2 * (d2 - 1) / 2.0;
        const double mixed_pairs = ka * d1 * (2 - d1) + kb * d2 * (3 - d2);
        if (d > 1) CHECK(*m.intrinsic_mean == doctest::Approx(2.0 * in_pairs / d).epsilon(1e-10));
        if (d < 5) CHECK(*m.normal_mean == doctest::Approx(mixed_pairs / (d * (5 - d))).epsilon(1e-10));
      }
  }
}

TEST_CASE("trace dictionary, basis independence, complementarity and reductions on the catalogue") {
  std::mt19937_64 rng(21);
  for (const CatalogueEntry& e : standard_catalogue()) {
    CAPTURE(e.name);
    const int n = e.dim;
    double traces = 0.0, remixed = 0.0, comp = 0.0, red = 0.0;
    for (int k = 0; k < 4; ++k) {
      const Vector x = k == 0 ? e.base_point : e.sample_point(rng);
      const AlgebraicCurvature R = e.curvature(x);
      for (int d = 1; d <= n; ++d) {
        const SubspaceFrame f = random_plane(e, x, d, rng);
        const MeanRicciReport a = mean_ricci(R, f), b = mean_ricci_via_traces(R, f);
        if (a.intrinsic_mean) traces = std::max(traces, std::abs(*a.intrinsic_mean - *b.intrinsic_mean));
        if (a.normal_mean) traces = std::max(traces, std::abs(*a.normal_mean - *b.normal_mean));
        for (int r = 0; r < 25; ++r) {
          const MeanRicciReport c = mean_ricci(
              R, remix(f, oracle::haar_orthogonal(d, rng), oracle::haar_orthogonal(n - d, rng)));
          if (a.intrinsic_mean) remixed = std::max(remixed, std::abs(*a.intrinsic_mean - *c.intrinsic_mean));
          if (a.normal_mean) remixed = std::max(remixed, std::abs(*a.normal_mean - *c.normal_mean));
        }
        if (d < n) comp = std::max(comp, std::abs(a.mixed_sum - mean_ricci(R, complement(f)).mixed_sum));
        if (d == 2) red = std::max(red, std::abs(*a.intrinsic_mean - sectional(R, f.plane.col(0), f.plane.col(1))));
        if (d == 1) {
          const Vector u = f.plane.col(0);
          red = std::max(red, std::abs(*a.normal_mean * (n - 1) - u.dot(R.ricci() * u)));
        }
        if (d == n) red = std::max(red, std::abs(*a.intrinsic_mean * n - R.scalar()));
      }
    }
    CHECK(traces < 1e-10);
    CHECK(remixed < 1e-9);
    CHECK(comp < 1e-10);
    CHECK(red < 1e-10);
  }
}

TEST_CASE("flat space means vanish on both paths") {
  const AlgebraicCurvature R = constant_curvature(4, 0.0);
  const SubspaceFrame f = build_frame(Matrix::Identity(4, 4), Matrix::Identity(4, 4).leftCols(2));
  const MeanRicciReport t = mean_ricci_via_traces(R, f);
  CHECK(*t.intrinsic_mean == 0.0);
  CHECK(*t.normal_mean == 0.0);
}

TEST_CASE("curvature operator of a space form is κ times the identity") {
  const Matrix q = curvature_operator(constant_curvature(5, 1.5));
  CHECK((q - 1.5 * Matrix::Identity(10, 10)).norm() < 1e-14);
}

TEST_CASE("sphere averages") {
  SUBCASE("space form, N = 10^4") {
    const AlgebraicCurvature R = constant_curvature(5, -1.0);
    const SubspaceFrame f = build_frame(Matrix::Identity(5, 5), Matrix::Identity(5, 5).leftCols(3));
    const SphereAverage a = sphere_average_check(R, f, 10000);
    CHECK(std::abs(a.intrinsic - (-2.0)) <= std::max(3 * a.intrinsic_stderr, 1e-12));
    CHECK(std::abs(a.normal - (-1.0)) <= std::max(3 * a.normal_stderr, 1e-12));
    CHECK(a.samples == 10000);
  }
  SUBCASE("d = 1 is the single directional value") {
    const CatalogueEntry h = heisenberg();
    const Vector o = Vector::Zero(3);
    const AlgebraicCurvature R = riemann_at(*h.chart, o).riemann;
    const SubspaceFrame f = build_frame(R.frame_metric, h.orthonormal_frame(o).col(2), o);
    const SphereAverage a = sphere_average_check(R, f, 64);
    CHECK(a.normal == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(a.normal_stderr < 1e-12);
  }
  SUBCASE("complex line in CP^2") {
    const AlgebraicCurvature R = cpn_curvature(2);
    const SubspaceFrame f = build_frame(Matrix::Identity(4, 4), Matrix::Identity(4, 4).leftCols(2));
    const SphereAverage a = sphere_average_check(R, f, 10000);
    CHECK(std::abs(a.intrinsic - 4.0) <= std::max(3 * a.intrinsic_stderr, 1e-12));
  }
  SUBCASE("non-constant directional values converge within three standard errors") {
    const AlgebraicCurvature R = cpn_curvature(3);
    std::mt19937_64 rng(9);
    const SubspaceFrame f = build_frame(Matrix::Identity(6, 6), oracle::haar_orthogonal(6, rng).leftCols(3));
    const MeanRicciReport m = mean_ricci(R, f);
    const SphereAverage a = sphere_average_check(R, f, 10000, 77);
    CHECK(a.intrinsic_stderr > 0.0);
    CHECK(std::abs(a.intrinsic - *m.intrinsic_mean) <= 3 * a.intrinsic_stderr);
    CHECK(std::abs(a.normal - *m.normal_mean) <= 3 * a.normal_stderr);
  }
}

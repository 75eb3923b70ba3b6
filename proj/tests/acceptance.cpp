// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "ricci/catalogue.hpp"
#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"
#include "ricci/expansions.hpp"
#include "ricci/means.hpp"
#include "ricci/verify.hpp"
#include "ricci/weitzenboeck.hpp"
#include "runner.hpp"

using namespace ricci;

namespace {

struct Outcome {
  bool pass = true;
  double worst = 0.0;  // worst residual relative to its tolerance
  std::string note;

  void check(double residual, double tol) {
    if (!(residual <= tol)) pass = false;
    worst = std::max(worst, tol > 0 ? residual / tol : residual);
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= time_limit;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s %s  %-44s worst/tol=%.3g  time=%.2fs (limit %.0fs)%s%s\n", id, ok ? "PASS" : "FAIL", title, o.worst,
              secs, time_limit, o.note.empty() ? "" : "  ", o.note.c_str());
  std::fflush(stdout);
}

SubspaceFrame coordinate_plane(const MetricChart& chart, const Vector& x, const Matrix& frame, int d) {
  return build_frame(eval_metric(chart, x).g, frame.leftCols(d), x);
}

Matrix unitary_real_form(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Matrix u(2 * n, 2 * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      u(2 * j, 2 * k) = q(j, k).real();
      u(2 * j, 2 * k + 1) = -q(j, k).imag();
      u(2 * j + 1, 2 * k) = q(j, k).imag();
      u(2 * j + 1, 2 * k + 1) = q(j, k).real();
    }
  return u;
}

Outcome heisenberg_means() {
  Outcome o;
  const CatalogueEntry e = heisenberg();
  std::mt19937_64 rng(1);
  for (int k = 0; k < 5; ++k) {
    const Vector x = k == 0 ? Vector(Vector::Zero(3)) : e.sample_point(rng);
    // X = ∂x, Y = ∂y + x∂z in coordinates
    Matrix span = Matrix::Zero(3, 2);
    span(0, 0) = 1.0;
    span(1, 1) = 1.0;
    span(2, 1) = x(0);
    const PointCurvature pc = riemann_at(*e.chart, x);
    const MeanRicciReport m = mean_ricci(pc.riemann, build_frame(pc.riemann.frame_metric, span, x));
    o.check(std::abs(*m.intrinsic_mean + 0.75), 1e-9);
    o.check(std::abs(*m.normal_mean - 0.25), 1e-9);
  }
  return o;
}

Outcome space_forms() {
  Outcome o;
  std::mt19937_64 rng(2);
  for (int n = 3; n <= 6; ++n)
    for (double kappa : {-1.0, 0.0, 1.0}) {
      const CatalogueEntry e = space_form(n, kappa);
      const Vector x = e.sample_point(rng);
      const PointCurvature pc = riemann_at(*e.chart, x);
      const Matrix F = e.orthonormal_frame(x) * oracle::haar_orthogonal(n, rng);
      for (int d = 1; d < n; ++d) {
        const SubspaceFrame f = coordinate_plane(*e.chart, x, F, d);
        const MeanRicciReport m = mean_ricci(pc.riemann, f);
        if (d >= 2) o.check(std::abs(*m.intrinsic_mean - (d - 1) * kappa), 1e-9);
        o.check(std::abs(*m.normal_mean - kappa), 1e-9);
        o.check(std::abs(simple_pairing(pc.riemann, f).weitzenboeck - d * (n - d) * kappa), 1e-8);
      }
    }
  return o;
}

Outcome triple_equality() {
  Outcome o;
  std::mt19937_64 rng(3);
  const std::vector<CatalogueEntry> cat = standard_catalogue();
  for (int draw = 0; draw < 1000; ++draw) {
    const CatalogueEntry& e = cat[rng() % cat.size()];
    if (e.dim < 2) continue;
    const Vector x = e.sample_point(rng);
    const int d = 1 + static_cast<int>(rng() % (e.dim - 1));
    const SimplePairing sp = simple_pairing(e.curvature(x), random_plane(e, x, d, rng));
    o.check(sp.max_discrepancy(), 1e-8);
  }
  return o;
}

Outcome cpn_oracle() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 3; ++n) {
    const int N = 2 * n;
    const AlgebraicCurvature R = cpn_curvature(n);
    const Matrix J = complex_structure(n);
    const Matrix I = Matrix::Identity(N, N);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix U = unitary_real_form(n, rng);
      for (int k = 1; k < n; ++k) {
        Matrix span(N, 2 * k);
        for (int i = 0; i < k; ++i) {
          span.col(2 * i) = U.col(2 * i);
          span.col(2 * i + 1) = J * U.col(2 * i);
        }
        const SubspaceFrame f = build_frame(I, span);
        const MeanRicciReport m = mean_ricci(R, f);
        o.check(std::abs(*m.intrinsic_mean - 2.0 * (k + 1)), 1e-12);
        o.check(std::abs(*m.normal_mean - 1.0), 1e-12);
        const int d = 2 * k;
        o.check(std::abs(pair_simple(weitz_matrix(R, d), {f, 1.0}) - d * (N - d)), 1e-10);
      }
      // totally real: U e_0, U e_2, ... span a Lagrangian-type subspace
      for (int d = 1; d <= n; ++d) {
        Matrix span(N, d);
        for (int i = 0; i < d; ++i) span.col(i) = U.col(2 * i);
        const MeanRicciReport m = mean_ricci(R, build_frame(I, span));
        o.check(std::abs(*m.normal_mean - (1.0 + 3.0 / (N - d))), 1e-12);
      }
    }
  }
  return o;
}

Outcome expansions() {
  Outcome o;
  auto record = [&o](const ExpansionFit& f) { o.check(std::abs(f.c2 - f.target), f.tolerance); };
  for (const CatalogueEntry& e : {euclidean(3), space_form(3, 1.0), space_form(3, -1.0), heisenberg()}) {
    const Vector p = e.base_point;
    const Matrix F = e.orthonormal_frame(p);
    const auto ladder = default_radius_ladder(e.length_scale);
    const ExpansionFit sphere = sphere_volume_coeff(*e.chart, p, ladder);
    record(sphere);
    o.check(std::abs(sphere.target + riemann_at(*e.chart, p).scalar / 18.0), 1e-12);
    for (int c = 0; c < 3; ++c) record(radial_density_coeff(*e.chart, p, F.col(c), ladder));
    for (int d = 1; d <= 2; ++d) {
      const SubspaceFrame f = coordinate_plane(*e.chart, p, F, d);
      for (int c = 0; c < d; ++c) {
        if (d >= 2) record(plane_density_coeff(*e.chart, p, f, f.plane.col(c), ladder));
        record(normal_density_coeff(*e.chart, p, f, f.plane.col(c), ladder));
      }
    }
  }
  for (const CatalogueEntry& e : {surface_of_revolution(models::Profile::Cylinder, 1.0),
                                  surface_of_revolution(models::Profile::Sphere, 1.0),
                                  surface_of_revolution(models::Profile::Catenoid, 1.0)})
    record(bdp_circumference(*e.chart, e.base_point, default_radius_ladder()));
  return o;
}

Outcome products() {
  Outcome o;
  std::mt19937_64 rng(6);
  const CatalogueEntry e = product_spheres(2, 1.0, 3, 1.0);
  for (int k = 0; k < 5; ++k) {
    const Vector x = e.sample_point(rng);
    const PointCurvature pc = riemann_at(*e.chart, x);
    const Matrix F = e.orthonormal_frame(x);
    for (int d1 = 0; d1 <= 2; ++d1)
      for (int d2 = 0; d2 <= 3; ++d2) {
        if (d1 + d2 == 0 || d1 + d2 == 5) continue;
        Matrix span = Matrix::Zero(5, d1 + d2);
        span.topLeftCorner(2, d1) = oracle::haar_orthogonal(2, rng).leftCols(d1);
        span.bottomRightCorner(3, d2) = oracle::haar_orthogonal(3, rng).leftCols(d2);
        const MeanRicciReport m = mean_ricci(pc.riemann, build_frame(pc.riemann.frame_metric, F * span, x));
        const MeanPair ref = product_means(2, 1.0, 3, 1.0, d1, d2);
        if (m.intrinsic_mean) o.check(std::abs(*m.intrinsic_mean - ref.intrinsic), 1e-8);
        o.check(std::abs(*m.normal_mean - ref.normal), 1e-8);
      }
  }
  return o;
}

Outcome warped() {
  Outcome o;
  std::mt19937_64 rng(7);
  auto spec = [](int b, double kb, int m, double km, models::WarpKind kind) {
    WarpedSpec s;
    s.base_dim = b;
    s.base_kappa = kb;
    s.fiber_dim = m;
    s.fiber_kappa = km;
    s.warp.kind = kind;
    return s;
  };
  // f ≡ 1: numeric means equal the product closed forms.
  {
    const CatalogueEntry e = warped_product(spec(2, 1.0, 2, 1.0, models::WarpKind::Constant));
    for (int k = 0; k < 5; ++k) {
      const Vector x = e.sample_point(rng);
      const PointCurvature pc = riemann_at(*e.chart, x);
      const Matrix F = e.orthonormal_frame(x);
      for (int d1 = 0; d1 <= 2; ++d1)
        for (int d2 = 0; d2 <= 2; ++d2) {
          if (d1 + d2 == 0 || d1 + d2 == 4) continue;
          Matrix span = Matrix::Zero(4, d1 + d2);
          span.topLeftCorner(2, d1) = oracle::haar_orthogonal(2, rng).leftCols(d1);
          span.bottomRightCorner(2, d2) = oracle::haar_orthogonal(2, rng).leftCols(d2);
          const MeanRicciReport m = mean_ricci(pc.riemann, build_frame(pc.riemann.frame_metric, F * span, x));
          const MeanPair ref = product_means(2, 1.0, 2, 1.0, d1, d2);
          if (m.intrinsic_mean) o.check(std::abs(*m.intrinsic_mean - ref.intrinsic), 1e-6);
          o.check(std::abs(*m.normal_mean - ref.normal), 1e-6);
        }
    }
  }
  // H^n as cosh over H^{n−1} and as exp over flat space.
  for (int n = 3; n <= 5; ++n)
    for (const WarpedSpec& s : {spec(1, 0.0, n - 1, -1.0, models::WarpKind::Cosh),
                                spec(1, 0.0, n - 1, 0.0, models::WarpKind::Exp)}) {
      const CatalogueEntry e = warped_product(s);
      for (int k = 0; k < 10; ++k) {
        const Vector x = e.sample_point(rng);
        const Matrix Q = e.orthonormal_frame(x) * oracle::haar_orthogonal(n, rng);
        o.check(std::abs(sectional(e.curvature(x), Q.col(0), Q.col(1)) + 1.0), 1e-6);
      }
    }
  // Cases (A)–(D) on a curved base with a quadratic warp.
  WarpedSpec s = spec(2, 1.0, 3, -1.0, models::WarpKind::Quadratic);
  s.warp.c = 2.5;
  s.warp.linear = Vector(2);
  s.warp.linear << 0.15, -0.2;
  s.warp.quadratic = Matrix(2, 2);
  s.warp.quadratic << 0.3, 0.1, 0.1, -0.15;
  const CatalogueEntry e = warped_product(s);
  int configs = 0;
  while (configs < 50) {
    const Vector x = e.sample_point(rng);
    const int d1 = static_cast<int>(rng() % 3), d2 = static_cast<int>(rng() % 4);
    if (d1 + d2 == 0 || d1 + d2 == 5) continue;
    const Matrix pb = oracle::haar_orthogonal(2, rng).leftCols(d1), pf = oracle::haar_orthogonal(3, rng).leftCols(d2);
    Matrix span = Matrix::Zero(5, d1 + d2);
    span.topLeftCorner(2, d1) = pb;
    span.bottomRightCorner(3, d2) = pf;
    const PointCurvature pc = riemann_at(*e.chart, x);
    const MeanRicciReport num = mean_ricci(pc.riemann, build_frame(pc.riemann.frame_metric, e.orthonormal_frame(x) * span, x));
    const MeanRicciReport ora = warped_means(warped_data(s, x), pb, pf);
    if (num.intrinsic_mean) o.check(std::abs(*num.intrinsic_mean - *ora.intrinsic_mean), 1e-7);
    o.check(std::abs(*num.normal_mean - *ora.normal_mean), 1e-7);
    ++configs;
  }
  return o;
}

Outcome kappa_sanity() {
  Outcome o;
  for (int n = 3; n <= 6; ++n)
    for (int d = 2; d < n; ++d) {
      const KappaResult k = kappa_d(space_form(n, 1.0).source(), d);
      o.check(std::abs(k.kappa - d * (n - d)), 1e-4);
      if (!k.homogeneous) o.pass = false;
    }
  const KappaResult cp2 = kappa_d(cpn_fubini_study(2).source(), 2);
  std::mt19937_64 rng(8);
  double dense_min = 1e300;
  for (int k = 0; k < 1'000'000; ++k) dense_min = std::min(dense_min, oracle::kahler_normal_mean(oracle::haar_orthogonal(4, rng), 2));
  o.check(std::max(0.0, cp2.best_normal_mean - dense_min), 1e-4);
  char buf[160];
  std::snprintf(buf, sizeof buf, "CP^2: optimizer %.10f, dense %.10f, kappa_2 = %.6f", cp2.best_normal_mean, dense_min,
                cp2.kappa);
  o.note = buf;
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::string failed;
  for (const CatalogueEntry& e : standard_catalogue()) {
    const VerifyReport r = verify_entry(e, {});
    for (const Check& c : r.checks) {
      o.check(c.residual, c.tolerance);
      if (!c.pass) failed += " " + e.name + "/" + c.name;
    }
  }
  cli::RunManifest m;
  cli::apply_manifold_flag(m, "heisenberg");
  m.task = cli::Task::Verify;
  if (cli::run(m).status != 0) failed += " cli-verify";
  if (!failed.empty()) {
    o.pass = false;
    o.note = "failed:" + failed;
  }
  return o;
}

}  // namespace

int main() {
  criterion("AC1", "heisenberg means from the chart", 1, heisenberg_means);
  criterion("AC2", "space forms: means and pairing", 10, space_forms);
  criterion("AC3", "triple equality on 1000 draws", 60, triple_equality);
  criterion("AC4", "CP^n plane means and Bochner pairing", 60, cpn_oracle);
  criterion("AC5", "expansion coefficients", 300, expansions);
  criterion("AC6", "S^2 x S^3 split means", 60, products);
  criterion("AC7", "warped products", 60, warped);
  criterion("AC8", "kappa_d sanity", 600, kappa_sanity);
  criterion("AC9", "property suites and verify", 1200, property_suites);
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

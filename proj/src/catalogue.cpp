#include "ricci/catalogue.hpp"

#include <cmath>
#include <numbers>

#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"
#include "ricci/frame.hpp"

namespace ricci {

AlgebraicCurvature CatalogueEntry::curvature(const Vector& x) const {
  if (chart) return riemann_at(*chart, x).riemann;
  return oracle(x);
}

Matrix CatalogueEntry::orthonormal_frame(const Vector& x) const {
  if (!chart) return Matrix::Identity(dim, dim);
  if (frame) return frame(x);
  return build_frame(eval_metric(*chart, x).g, Matrix::Identity(dim, dim)).full();
}

Vector CatalogueEntry::sample_point(std::mt19937_64& rng) const {
  if (!chart) return base_point;
  std::uniform_real_distribution<double> unit(0.1, 0.9);
  Vector p(dim);
  for (int i = 0; i < dim; ++i)
    p(i) = chart->lower()(i) + unit(rng) * (chart->upper()(i) - chart->lower()(i));
  return p;
}

CurvatureSource CatalogueEntry::source() const {
  CurvatureSource src;
  src.name = name;
  src.dim = dim;
  src.homogeneous = homogeneous;
  src.non_compact = non_compact;
  src.base_point = base_point;
  if (chart) {
    src.lower = chart->lower();
    src.upper = chart->upper();
    src.at = [c = chart](const Vector& x) { return riemann_at(*c, x).riemann; };
  } else {
    src.lower = base_point;
    src.upper = base_point;
    src.at = oracle;
  }
  return src;
}

namespace {

Vector filled(int n, double v) { return Vector::Constant(n, v); }

double space_form_halfwidth(int n, double kappa) {
  if (kappa < 0.0) return 0.9 / std::sqrt(-kappa * n);  // box inside the Poincaré ball
  if (kappa > 0.0) return 2.0 / std::sqrt(kappa);
  return 5.0;
}

std::function<Matrix(const Vector&)> conformal_frame(models::ConformalSpaceForm model) {
  return [model](const Vector& x) {
    return Matrix(Matrix::Identity(model.n, model.n) / model.factor(x));
  };
}

}  // namespace

CatalogueEntry euclidean(int n) {
  CatalogueEntry e;
  e.name = "euclidean";
  e.dim = n;
  e.chart = make_chart("euclidean", filled(n, -5.0), filled(n, 5.0), EuclideanModel{n});
  e.oracle = [n](const Vector&) { return constant_curvature(n, 0.0); };
  e.frame = [n](const Vector&) { return Matrix(Matrix::Identity(n, n)); };
  e.homogeneous = true;
  e.non_compact = true;
  e.base_point = Vector::Zero(n);
  e.params = {{"n", n}};
  return e;
}

CatalogueEntry space_form(int n, double kappa) {
  const models::ConformalSpaceForm model{n, kappa};
  const double h = space_form_halfwidth(n, kappa);
  CatalogueEntry e;
  e.name = "space_form";
  e.dim = n;
  e.chart = make_chart("space_form", filled(n, -h), filled(n, h), model);
  e.oracle = [n, kappa](const Vector&) { return constant_curvature(n, kappa); };
  e.frame = conformal_frame(model);
  e.homogeneous = true;
  e.non_compact = kappa <= 0.0;
  e.length_scale = kappa != 0.0 ? 1.0 / std::sqrt(std::abs(kappa)) : 1.0;
  e.base_point = Vector::Zero(n);
  e.params = {{"n", n}, {"kappa", kappa}};
  return e;
}

CatalogueEntry heisenberg() {
  CatalogueEntry e;
  e.name = "heisenberg";
  e.dim = 3;
  e.chart = make_chart("heisenberg", filled(3, -3.0), filled(3, 3.0), models::Heisenberg{});
  e.oracle = [](const Vector&) {
    // Diagonal curvature operator in the X∧Y, X∧Z, Y∧Z basis.
    Tensor4<double> r(3);
    auto set = [&r](int i, int j, double k) {
      r(i, j, i, j) = k;
      r(j, i, j, i) = k;
      r(i, j, j, i) = -k;
      r(j, i, i, j) = -k;
    };
    set(0, 1, -0.75);
    set(0, 2, 0.25);
    set(1, 2, 0.25);
    return AlgebraicCurvature(std::move(r), Matrix::Identity(3, 3));
  };
  e.frame = [](const Vector& x) {
    Matrix f = Matrix::Identity(3, 3);
    f(2, 1) = x(0);  // Y = ∂y + x ∂z
    return f;
  };
  e.homogeneous = true;
  e.non_compact = true;
  e.base_point = Vector::Zero(3);
  return e;
}

Matrix complex_structure(int n) {
  Matrix J = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    J(2 * k + 1, 2 * k) = 1.0;   // J e_{2k} = e_{2k+1}
    J(2 * k, 2 * k + 1) = -1.0;  // J e_{2k+1} = −e_{2k}
  }
  return J;
}

AlgebraicCurvature cpn_curvature(int n) {
  const int m = 2 * n;
  const Matrix J = complex_structure(n);
  // ⟨JX, Y⟩ for basis vectors: (J e_x)_y = J(y, x)
  auto jdot = [&J](int x, int y) { return J(y, x); };
  auto dlt = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  Tensor4<double> r(m);
  // Slots (X, Y, Z, W) of the holomorphic-curvature-4 tensor, stored with the
  // last two swapped so that R_{ijij} = K.
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int w = 0; w < m; ++w)
        for (int z = 0; z < m; ++z) {
          const double star = dlt(x, w) * dlt(y, z) - dlt(x, z) * dlt(y, w) + jdot(x, w) * jdot(y, z) -
                              jdot(x, z) * jdot(y, w) - 2.0 * jdot(x, y) * jdot(z, w);
          r(x, y, w, z) = star;
        }
  return {std::move(r), Matrix::Identity(m, m)};
}

double cpn_sectional(int n, const Vector& u, const Vector& v) {
  const double c = (complex_structure(n) * u).dot(v);
  return 1.0 + 3.0 * c * c;
}

MeanPair cpn_complex_plane_means(int k) { return {2.0 * (k + 1), 1.0}; }

double cpn_totally_real_normal_mean(int n, int d) { return 1.0 + 3.0 / (2.0 * n - d); }

double cpn_bochner_bound(int n, int d) { return static_cast<double>(d) * (2 * n - d); }

CatalogueEntry cpn_fubini_study(int n) {
  CatalogueEntry e;
  e.name = "cpn";
  e.dim = 2 * n;
  const AlgebraicCurvature R = cpn_curvature(n);
  e.oracle = [R](const Vector&) { return R; };
  e.homogeneous = true;
  e.base_point = Vector::Zero(2 * n);
  e.params = {{"n", n}, {"real_dim", 2 * n}};
  if (n == 1) {
    // CP^1 is the round sphere of radius 1/2.
    const models::ConformalSpaceForm model{2, 4.0};
    e.chart = make_chart("cp1_sphere", filled(2, -1.0), filled(2, 1.0), model);
    e.frame = conformal_frame(model);
    e.length_scale = 0.5;
  }
  return e;
}

PrincipalCurvatures revolution_curvatures(const models::RevolutionProfile& p, double u) {
  const double r = p.r(u), dr = p.dr(u), d2r = p.d2r(u), dz = p.dz(u), d2z = p.d2z(u);
  const double speed2 = dr * dr + dz * dz;
  return {(dr * d2z - d2r * dz) / std::pow(speed2, 1.5), dz / (r * std::sqrt(speed2))};
}

CatalogueEntry surface_of_revolution(models::Profile profile, double R) {
  const models::RevolutionProfile prof{profile, R};
  CatalogueEntry e;
  e.dim = 2;
  Vector lo(2), hi(2);
  switch (profile) {
    case models::Profile::Cylinder:
      e.name = "cylinder";
      lo << -5.0, -10.0;
      hi << 5.0, 10.0;
      e.base_point = Vector::Zero(2);
      e.homogeneous = true;
      e.non_compact = true;
      break;
    case models::Profile::Sphere:
      e.name = "sphere";
      lo << 0.05 * std::numbers::pi * R, -10.0;
      hi << 0.95 * std::numbers::pi * R, 10.0;
      e.base_point = Vector(2);
      e.base_point << 0.5 * std::numbers::pi * R, 0.0;
      e.homogeneous = true;
      break;
    case models::Profile::Catenoid:
      e.name = "catenoid";
      lo << -3.0, -10.0;
      hi << 3.0, 10.0;
      e.base_point = Vector::Zero(2);
      e.non_compact = true;
      break;
  }
  e.chart = make_chart(e.name, lo, hi, models::SurfaceOfRevolution{prof});
  e.oracle = [prof](const Vector& x) { return constant_curvature(2, revolution_curvatures(prof, x(0)).gaussian()); };
  e.frame = [prof](const Vector& x) {
    const double u = x(0);
    Matrix f = Matrix::Zero(2, 2);
    f(0, 0) = 1.0 / std::hypot(prof.dr(u), prof.dz(u));
    f(1, 1) = 1.0 / prof.r(u);
    return f;
  };
  e.length_scale = profile == models::Profile::Sphere ? R : 1.0;
  e.params = {{"R", R}};
  return e;
}

MeanPair product_means(int a, double ka, int b, double kb, int d1, int d2) {
  const int n = a + b, d = d1 + d2;
  const double intrinsic = (d1 * (d1 - 1) * ka + d2 * (d2 - 1) * kb) / d;
  const double normal = d < n ? (d1 * (a - d1) * ka + d2 * (b - d2) * kb) / (static_cast<double>(d) * (n - d)) : 0.0;
  return {intrinsic, normal};
}

CatalogueEntry product_spheres(int a, double rho_a, int b, double rho_b) {
  const models::ConformalSpaceForm fa{a, 1.0, rho_a}, fb{b, 1.0, rho_b};
  const double ka = 1.0 / (rho_a * rho_a), kb = 1.0 / (rho_b * rho_b);
  const int n = a + b;
  CatalogueEntry e;
  e.name = "product_spheres";
  e.dim = n;
  e.chart = make_chart("product_spheres", filled(n, -2.0), filled(n, 2.0), models::Product{fa, fb});
  e.oracle = [a, b, ka, kb, n](const Vector&) {
    Tensor4<double> r(n);
    auto block = [&r](int off, int dim, double k) {
      for (int i = off; i < off + dim; ++i)
        for (int j = off; j < off + dim; ++j) {
          if (i == j) continue;
          r(i, j, i, j) = k;
          r(i, j, j, i) = -k;
        }
    };
    // S^1 factors carry no curvature.
    block(0, a, a > 1 ? ka : 0.0);
    block(a, b, b > 1 ? kb : 0.0);
    return AlgebraicCurvature(std::move(r), Matrix::Identity(n, n));
  };
  e.frame = [fa, fb, a, b](const Vector& x) {
    Matrix f = Matrix::Zero(a + b, a + b);
    f.topLeftCorner(a, a) = Matrix::Identity(a, a) / fa.factor(Vector(x.head(a)));
    f.bottomRightCorner(b, b) = Matrix::Identity(b, b) / fb.factor(Vector(x.tail(b)));
    return f;
  };
  e.homogeneous = true;
  e.length_scale = std::min(rho_a, rho_b);
  e.base_point = Vector::Zero(n);
  e.params = {{"a", a}, {"rho_a", rho_a}, {"b", b}, {"rho_b", rho_b}};
  e.split_dim = a;
  e.split_means = [a, b, ka, kb](const Vector&, const Matrix& p1, const Matrix& p2) {
    const int d1 = static_cast<int>(p1.cols()), d2 = static_cast<int>(p2.cols());
    const MeanPair m = product_means(a, a > 1 ? ka : 0.0, b, b > 1 ? kb : 0.0, d1, d2);
    MeanRicciReport rep;
    if (d1 + d2 > 1) rep.intrinsic_mean = m.intrinsic;
    if (d1 + d2 < a + b) rep.normal_mean = m.normal;
    return rep;
  };
  return e;
}

WarpedData warped_data(const WarpedSpec& spec, const Vector& x) {
  const int b = spec.base_dim;
  const models::ConformalSpaceForm base{b, spec.base_kappa};
  const Vector xb = x.head(b);
  const double phi = base.factor(xb);
  const Vector grad = spec.warp.gradient(xb);
  Matrix hess = spec.warp.hessian(xb);

  // Γ of φ²δ: δ_ik ∂_jσ + δ_jk ∂_iσ − δ_ij ∂_kσ with σ = ln φ.
  const double denom = 1.0 + spec.base_kappa * xb.squaredNorm();
  const Vector dsigma = spec.base_kappa == 0.0 ? Vector::Zero(b) : Vector(-2.0 * spec.base_kappa * xb / denom);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) {
      double gamma_grad = dsigma(j) * grad(i) + dsigma(i) * grad(j);
      if (i == j) gamma_grad -= dsigma.dot(grad);
      hess(i, j) -= gamma_grad;
    }

  WarpedData w;
  w.b = b;
  w.m = spec.fiber_dim;
  w.f = spec.warp.value(xb);
  w.grad_norm2 = grad.squaredNorm() / (phi * phi);
  w.hessian = hess / (phi * phi);
  w.kappa_base = b > 1 ? spec.base_kappa : 0.0;
  w.kappa_fiber = spec.fiber_dim > 1 ? spec.fiber_kappa : 0.0;
  return w;
}

double warped_sectional_base(const WarpedData& w) { return w.kappa_base; }

double warped_sectional_fiber(const WarpedData& w) {
  return (w.kappa_fiber - w.grad_norm2) / (w.f * w.f);
}

double warped_sectional_mixed(const WarpedData& w, const Vector& x_unit) {
  return -x_unit.dot(w.hessian * x_unit) / w.f;
}

namespace {

Matrix complement_in(const Matrix& plane, int dim) {
  if (plane.cols() == 0) return Matrix::Identity(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(plane);
  const Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  return q.rightCols(dim - plane.cols());
}

double trace_on(const Matrix& h, const Matrix& basis) {
  double t = 0.0;
  for (int i = 0; i < basis.cols(); ++i) t += basis.col(i).dot(h * basis.col(i));
  return t;
}

}  // namespace

MeanRicciReport warped_means(const WarpedData& w, const Matrix& plane_base, const Matrix& plane_fiber) {
  const int b = w.b, m = w.m, n = b + m;
  const int d1 = static_cast<int>(plane_base.cols()), d2 = static_cast<int>(plane_fiber.cols());
  const int d = d1 + d2;
  const double f = w.f, f2 = f * f, grad2 = w.grad_norm2;
  const Matrix& H = w.hessian;
  const Matrix base_perp = complement_in(plane_base, b);
  // Frame-level sectional curvatures of each factor (space forms: constant).
  const double KB = w.kappa_base, KF = w.kappa_fiber;

  double intrinsic = 0.0;  // bracket multiplying 2/d
  double mixed = 0.0;      // bracket multiplying 1/(d(n−d))

  if (d2 == 0) {  // (A) pure base
    intrinsic = KB * d * (d - 1) / 2.0;
    mixed = KB * d * (b - d) - (m / f) * trace_on(H, plane_base);
  } else if (d1 == 0) {  // (B) pure fiber
    intrinsic = (d * (d - 1) / 2.0) * (KF - grad2) / f2;
    mixed = (1.0 / f2) * KF * d * (m - d) - d * (m - d) * grad2 / f2 - (d / f) * H.trace();
  } else if (d1 == 1 && d2 == 1) {  // (C) mixed 2-plane
    const Vector X = plane_base.col(0);
    intrinsic = -X.dot(H * X) / f;
    mixed = KB * (b - 1) + (1.0 / f2) * (m - 1) * (KF - grad2) - ((m - 1) / f) * X.dot(H * X) -
            (1.0 / f) * trace_on(H, base_perp);
  } else {  // (D) general split
    intrinsic = KB * d1 * (d1 - 1) / 2.0 + (1.0 / f2) * (d2 * (d2 - 1) / 2.0) * (KF - grad2) -
                (d2 / f) * trace_on(H, plane_base);
    mixed = KB * d1 * (b - d1) + (1.0 / f2) * d2 * (m - d2) * (KF - grad2) -
            ((m - d2) / f) * trace_on(H, plane_base) - (d2 / f) * trace_on(H, base_perp);
  }

  MeanRicciReport rep;
  rep.intrinsic_sum = intrinsic;
  rep.mixed_sum = mixed;
  if (d > 1) rep.intrinsic_mean = (d1 == 1 && d2 == 1) ? intrinsic : 2.0 * intrinsic / d;
  if (d < n) rep.normal_mean = (d1 == 1 && d2 == 1) ? mixed / (2.0 * (b + m - 2)) : mixed / (static_cast<double>(d) * (n - d));
  return rep;
}

CatalogueEntry warped_product(const WarpedSpec& spec) {
  const int b = spec.base_dim, m = spec.fiber_dim, n = b + m;
  const models::ConformalSpaceForm base{b, spec.base_kappa}, fiber{m, spec.fiber_kappa};
  Vector lower(n), upper(n);
  lower.head(b).setConstant(-space_form_halfwidth(b, spec.base_kappa) * (spec.base_kappa == 0.0 ? 0.2 : 1.0));
  upper.head(b) = -lower.head(b);
  lower.tail(m).setConstant(-space_form_halfwidth(m, spec.fiber_kappa) * (spec.fiber_kappa == 0.0 ? 0.2 : 1.0));
  upper.tail(m) = -lower.tail(m);

  // f must stay positive over the base box; sample a grid.
  {
    const int per_axis = 9;
    const int total = static_cast<int>(std::pow(per_axis, std::min(b, 3)));
    for (int k = 0; k < total; ++k) {
      Vector xb = Vector::Zero(b);
      int rem = k;
      for (int c = 0; c < std::min(b, 3); ++c) {
        xb(c) = lower(c) + (upper(c) - lower(c)) * (rem % per_axis) / (per_axis - 1.0);
        rem /= per_axis;
      }
      if (!(spec.warp.value(xb) > 0.0))
        throw GeometryError(ErrorCode::WarpNotPositive, "warp function is not positive on the base box");
    }
  }

  CatalogueEntry e;
  e.name = "warped_product";
  e.dim = n;
  e.chart = make_chart("warped_product", lower, upper, models::WarpedProduct{base, fiber, spec.warp});
  e.oracle = [spec, n, b, m](const Vector& x) {
    const WarpedData w = warped_data(spec, x);
    Tensor4<double> r(n);
    auto block = [&r](int off, int dim, double k) {
      for (int i = off; i < off + dim; ++i)
        for (int j = off; j < off + dim; ++j) {
          if (i == j) continue;
          r(i, j, i, j) = k;
          r(i, j, j, i) = -k;
        }
    };
    block(0, b, warped_sectional_base(w));
    block(b, m, warped_sectional_fiber(w));
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) {
        const double h = -w.hessian(i, j) / w.f;
        for (int a = b; a < n; ++a) {
          r(i, a, j, a) = h;
          r(a, i, a, j) = h;
          r(i, a, a, j) = -h;
          r(a, i, j, a) = -h;
        }
      }
    return AlgebraicCurvature(std::move(r), Matrix::Identity(n, n));
  };
  e.frame = [base, fiber, spec, b, m](const Vector& x) {
    Matrix f = Matrix::Zero(b + m, b + m);
    const Vector xb = x.head(b);
    f.topLeftCorner(b, b) = Matrix::Identity(b, b) / base.factor(xb);
    f.bottomRightCorner(m, m) = Matrix::Identity(m, m) / (fiber.factor(Vector(x.tail(m))) * spec.warp.value(xb));
    return f;
  };
  e.homogeneous = false;
  e.non_compact = true;
  e.base_point = Vector::Zero(n);
  e.params = {{"base_dim", b}, {"base_kappa", spec.base_kappa}, {"fiber_dim", m}, {"fiber_kappa", spec.fiber_kappa}};
  e.split_dim = b;
  e.split_means = [spec](const Vector& x, const Matrix& pb, const Matrix& pf) {
    return warped_means(warped_data(spec, x), pb, pf);
  };
  return e;
}

MeanPair space_form_means(int d, double kappa) { return {(d - 1) * kappa, kappa}; }

std::vector<CatalogueEntry> standard_catalogue() {
  std::vector<CatalogueEntry> out;
  out.push_back(euclidean(3));
  out.push_back(space_form(3, 1.0));
  out.push_back(space_form(4, -1.0));
  out.push_back(space_form(5, 0.5));
  out.push_back(heisenberg());
  out.push_back(cpn_fubini_study(1));
  out.push_back(cpn_fubini_study(2));
  out.push_back(cpn_fubini_study(3));
  out.push_back(surface_of_revolution(models::Profile::Cylinder, 1.5));
  out.push_back(surface_of_revolution(models::Profile::Sphere, 2.0));
  out.push_back(surface_of_revolution(models::Profile::Catenoid));
  out.push_back(product_spheres(2, 1.0, 3, 1.0));
  out.push_back(product_spheres(2, 0.8, 2, 1.3));

  WarpedSpec hyperbolic;
  hyperbolic.base_dim = 1;
  hyperbolic.fiber_dim = 3;
  hyperbolic.fiber_kappa = -1.0;
  hyperbolic.warp.kind = models::WarpKind::Cosh;
  out.push_back(warped_product(hyperbolic));

  WarpedSpec curved;
  curved.base_dim = 2;
  curved.base_kappa = 1.0;
  curved.fiber_dim = 2;
  curved.fiber_kappa = 1.0;
  curved.warp.kind = models::WarpKind::Quadratic;
  curved.warp.c = 2.0;
  curved.warp.linear = Vector(2);
  curved.warp.linear << 0.3, -0.2;
  curved.warp.quadratic = Matrix(2, 2);
  curved.warp.quadratic << 0.4, 0.1, 0.1, -0.2;
  out.push_back(warped_product(curved));
  return out;
}

}  // namespace ricci

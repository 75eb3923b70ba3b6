#include "ricci/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"
#include "ricci/means.hpp"
#include "ricci/ode.hpp"
#include "ricci/parallel.hpp"

namespace ricci {

namespace {

// Re-labels domain exits raised inside the flow.
template <typename F>
auto in_flow(F&& f) {
  try {
    return f();
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::OutOfDomain) throw GeometryError(ErrorCode::ChartExit, e.what());
    throw;
  }
}

double speed2(const Matrix& g, const Vector& v) { return v.dot(g * v); }

}  // namespace

GeodesicState geodesic_flow(const MetricChart& chart, const Vector& p, const Vector& u, double t_end, double tol) {
  const int n = chart.dim();
  const double s0 = speed2(eval_metric(chart, p).g, u);
  DormandPrince::Rhs rhs = [&chart, n](double, const Vector& y) {
    const Vector x = y.head(n), v = y.tail(n);
    const Christoffel gamma = christoffel(chart, x);
    Vector dy(2 * n);
    dy.head(n) = v;
    for (int k = 0; k < n; ++k) {
      double a = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a += gamma(k, i, j) * v(i) * v(j);
      dy(n + k) = -a;
    }
    return dy;
  };
  Vector y0(2 * n);
  y0 << p, u;
  const DormandPrince solver(rhs, {.tol = tol});
  const Vector y = in_flow([&] { return solver.integrate(0.0, y0, {t_end}).back(); });

  GeodesicState s;
  s.position = y.head(n);
  s.velocity = y.tail(n);
  s.time = t_end;
  s.speed_drift = std::abs(speed2(eval_metric(chart, s.position).g, s.velocity) - s0);
  return s;
}

Matrix initial_jacobi_frame(const Matrix& metric, const Vector& u) {
  const SubspaceFrame f = build_frame(metric, u);
  Matrix e(metric.rows(), metric.rows());
  e << f.normal, f.plane;
  return e;
}

std::vector<JacobiBlock> jacobi_transport(const MetricChart& chart, const Vector& p, const Vector& u,
                                          const std::vector<double>& times, double tol) {
  const int n = chart.dim();
  const int nn = n * n;
  const Matrix g0 = eval_metric(chart, p).g;
  if (std::abs(speed2(g0, u) - 1.0) > 1e-10)
    throw GeometryError(ErrorCode::NotUnit, "initial direction must be unit");
  const Matrix e0 = initial_jacobi_frame(g0, u);

  // y = [x, v, vec(E), vec(J), vec(J')]
  DormandPrince::Rhs rhs = [&chart, n, nn](double, const Vector& y) {
    const Vector x = y.head(n), v = y.segment(n, n);
    const Eigen::Map<const Matrix> E(y.data() + 2 * n, n, n);
    const Eigen::Map<const Matrix> J(y.data() + 2 * n + nn, n, n);
    const Eigen::Map<const Matrix> Jp(y.data() + 2 * n + 2 * nn, n, n);

    const PointCurvature pc = riemann_at(chart, x);
    const Christoffel& gamma = pc.christoffel;

    // Γ(v, ·): G(k, j) = Γ^k_{ij} v^i
    Matrix G = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(k, j) += gamma(k, i, j) * v(i);

    // T(i, k) = R_{ijkl} v^j v^l, so that ⟨R(E_b, γ')γ', E_a⟩ = (Eᵀ T E)(a, b)
    Matrix T = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) s += pc.riemann(i, j, k, l) * v(j) * v(l);
        T(i, k) = s;
      }
    const Matrix M = E.transpose() * T * E;

    Vector dy(y.size());
    dy.head(n) = v;
    dy.segment(n, n) = -G * v;
    Eigen::Map<Matrix>(dy.data() + 2 * n, n, n) = -G * E;
    Eigen::Map<Matrix>(dy.data() + 2 * n + nn, n, n) = Jp;
    Eigen::Map<Matrix>(dy.data() + 2 * n + 2 * nn, n, n) = -M * J;
    return dy;
  };

  Vector y0 = Vector::Zero(2 * n + 3 * nn);
  y0.head(n) = p;
  y0.segment(n, n) = u;
  Eigen::Map<Matrix>(y0.data() + 2 * n, n, n) = e0;
  Eigen::Map<Matrix>(y0.data() + 2 * n + 2 * nn, n, n) = Matrix::Identity(n, n);

  const DormandPrince solver(rhs, {.tol = tol});
  const std::vector<Vector> states = in_flow([&] { return solver.integrate(0.0, y0, times); });

  std::vector<JacobiBlock> out;
  out.reserve(states.size());
  for (size_t k = 0; k < states.size(); ++k) {
    const Vector& y = states[k];
    JacobiBlock b;
    b.time = times[k];
    b.position = y.head(n);
    b.velocity = y.segment(n, n);
    b.frame = Eigen::Map<const Matrix>(y.data() + 2 * n, n, n);
    b.J = Eigen::Map<const Matrix>(y.data() + 2 * n + nn, n, n);
    b.J_prime = Eigen::Map<const Matrix>(y.data() + 2 * n + 2 * nn, n, n);
    const Matrix g = eval_metric(chart, b.position).g;
    b.frame_drift = (b.frame.transpose() * g * b.frame - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    out.push_back(std::move(b));
  }
  return out;
}

JacobiBlock jacobi_transport(const MetricChart& chart, const Vector& p, const Vector& u, double t_end, double tol) {
  return jacobi_transport(chart, p, u, std::vector<double>{t_end}, tol).back();
}

bool ExpansionFit::pass() const { return residual < kFitResidualLimit && std::abs(c2 - target) < tolerance; }

std::vector<double> default_radius_ladder(double scale) {
  std::vector<double> r = {0.2, 0.15, 0.1, 0.075, 0.05};
  for (double& v : r) v *= scale;
  return r;
}

ExpansionFit fit_expansion(std::vector<double> radii, std::vector<double> densities, std::string label) {
  if (radii.size() != densities.size() || radii.size() < 2)
    throw GeometryError(ErrorCode::FitRejected, "need at least two radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1])) throw GeometryError(ErrorCode::FitRejected, "radius ladder must strictly decrease");

  const int m = static_cast<int>(radii.size());
  Matrix A(m, 2);
  Vector b(m);
  for (int i = 0; i < m; ++i) {
    const double r2 = radii[i] * radii[i];
    // columns scaled by the largest radius for conditioning
    A(i, 0) = r2;
    A(i, 1) = r2 * r2;
    b(i) = densities[i] - 1.0;
  }
  const double s = radii.front() * radii.front();
  Matrix As = A;
  As.col(0) /= s;
  As.col(1) /= s * s;
  const Vector coef = As.colPivHouseholderQr().solve(b);

  ExpansionFit fit;
  fit.label = std::move(label);
  fit.radii = std::move(radii);
  fit.densities = std::move(densities);
  fit.c2 = coef(0) / s;
  fit.c4 = coef(1) / (s * s);
  for (int i = 0; i < m; ++i)
    fit.residual = std::max(fit.residual, std::abs(fit.densities[i] - fit.model(fit.radii[i])) / std::abs(fit.densities[i]));
  if (!(fit.residual <= kFitResidualLimit))
    throw GeometryError(ErrorCode::FitRejected, fit.label + ": residual above limit");
  return fit;
}

ExpansionFit refit_without_smallest(const ExpansionFit& fit) {
  std::vector<double> r(fit.radii.begin(), fit.radii.end() - 1);
  std::vector<double> d(fit.densities.begin(), fit.densities.end() - 1);
  ExpansionFit out = fit_expansion(std::move(r), std::move(d), fit.label);
  out.target = fit.target;
  out.tolerance = fit.tolerance;
  return out;
}

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  for (int i = 0; i < count; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (count == 1) p0 = 1.0, p1 = x;
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

std::vector<double> ascending(const std::vector<double>& radii) {
  std::vector<double> r(radii.rbegin(), radii.rend());
  return r;
}

void validate_ladder(const std::vector<double>& radii) {
  if (radii.size() < 2) throw GeometryError(ErrorCode::FitRejected, "need at least two radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1]) || !(radii[i] > 0.0))
      throw GeometryError(ErrorCode::FitRejected, "radius ladder must be positive and strictly decreasing");
}

// det of J restricted to γ'^⊥ (frame has γ' last) normalized by r^{n−1}.
double perpendicular_density(const JacobiBlock& b) {
  const int n = static_cast<int>(b.J.rows());
  const double det = b.J.topLeftCorner(n - 1, n - 1).determinant();
  if (!(det > 0.0)) throw GeometryError(ErrorCode::ConjugatePoint, "Jacobian vanished before the end radius");
  return det / std::pow(b.time, n - 1);
}

// sqrt det Gram of J applied to the frame coefficients in `coeffs`, normalized.
double span_density(const JacobiBlock& b, const Matrix& coeffs) {
  const int k = static_cast<int>(coeffs.cols());
  if (k == 0) return 1.0;
  const Matrix images = b.J * coeffs;
  const double gram = (images.transpose() * images).determinant();
  if (!(gram > 0.0)) throw GeometryError(ErrorCode::ConjugatePoint, "Jacobian vanished before the end radius");
  return std::sqrt(gram) / std::pow(b.time, k);
}

// Averages ρ_u(r) over unit directions given in an orthonormal frame at p.
ExpansionFit averaged_fit(const MetricChart& chart, const Vector& p, const Matrix& frame,
                          const std::vector<Vector>& dirs, const std::vector<double>& weights,
                          std::vector<double> radii, double tol, std::string label) {
  validate_ladder(radii);
  const std::vector<double> times = ascending(radii);
  const int m = static_cast<int>(times.size());
  std::vector<std::vector<double>> per_dir(dirs.size());
  parallel_for(static_cast<int>(dirs.size()), [&](int i) {
    const Vector u = frame * dirs[i];
    const auto blocks = jacobi_transport(chart, p, u, times, tol);
    per_dir[i].resize(m);
    for (int k = 0; k < m; ++k) per_dir[i][k] = perpendicular_density(blocks[k]);
  });
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  std::vector<double> dens(m, 0.0);
  for (size_t i = 0; i < dirs.size(); ++i)
    for (int k = 0; k < m; ++k) dens[k] += weights[i] * per_dir[i][k] / wsum;
  std::reverse(dens.begin(), dens.end());
  return fit_expansion(std::move(radii), std::move(dens), std::move(label));
}

Matrix frame_at(const MetricChart& chart, const Vector& p) {
  const int n = chart.dim();
  return build_frame(eval_metric(chart, p).g, Matrix::Identity(n, n)).full();
}

}  // namespace

ExpansionFit sphere_volume_coeff(const MetricChart& chart, const Vector& p, std::vector<double> radii,
                                 const ExpansionOptions& opt) {
  const int n = chart.dim();
  std::vector<Vector> dirs;
  std::vector<double> weights;
  if (n == 2) {
    for (int k = 0; k < opt.circle_points; ++k) {
      const double th = 2.0 * std::numbers::pi * k / opt.circle_points;
      Vector d(2);
      d << std::cos(th), std::sin(th);
      dirs.push_back(d);
      weights.push_back(1.0);
    }
  } else if (n == 3) {
    std::vector<double> z, w;
    gauss_legendre(opt.gauss_nodes, z, w);
    for (int i = 0; i < opt.gauss_nodes; ++i)
      for (int k = 0; k < opt.azimuth_points; ++k) {
        const double ph = 2.0 * std::numbers::pi * k / opt.azimuth_points;
        const double s = std::sqrt(1.0 - z[i] * z[i]);
        Vector d(3);
        d << s * std::cos(ph), s * std::sin(ph), z[i];
        dirs.push_back(d);
        weights.push_back(w[i]);
      }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;
    for (int k = 0; k < opt.monte_carlo_samples; ++k) {
      Vector d(n);
      for (int i = 0; i < n; ++i) d(i) = gauss(rng);
      dirs.push_back(d.normalized());
      weights.push_back(1.0);
    }
  }
  ExpansionFit fit = averaged_fit(chart, p, frame_at(chart, p), dirs, weights, std::move(radii), opt.tol,
                                  "geodesic_sphere_volume");
  const double scal = riemann_at(chart, p).scalar;
  fit.target = -scal / (6.0 * n);
  fit.tolerance = 1e-3 * std::max(1.0, std::abs(scal));
  return fit;
}

ExpansionFit radial_density_coeff(const MetricChart& chart, const Vector& p, const Vector& u,
                                  std::vector<double> radii, const ExpansionOptions& opt) {
  validate_ladder(radii);
  const auto blocks = jacobi_transport(chart, p, u, ascending(radii), opt.tol);
  std::vector<double> dens;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) dens.push_back(perpendicular_density(*it));
  ExpansionFit fit = fit_expansion(std::move(radii), std::move(dens), "radial_density");
  const PointCurvature pc = riemann_at(chart, p);
  fit.target = -u.dot(pc.ricci * u) / 6.0;
  fit.tolerance = 1e-3;
  return fit;
}

namespace {

// Frame coefficients (w.r.t. the initial Jacobi frame) of g-orthonormal
// vectors given in coordinates.
Matrix frame_coefficients(const Matrix& metric, const Vector& u, const Matrix& vectors) {
  const Matrix e0 = initial_jacobi_frame(metric, u);
  return e0.transpose() * metric * vectors;
}

}  // namespace

ExpansionFit plane_density_coeff(const MetricChart& chart, const Vector& p, const SubspaceFrame& frame,
                                 const Vector& v, std::vector<double> radii, const ExpansionOptions& opt) {
  validate_ladder(radii);
  const PointCurvature pc = riemann_at(chart, p);
  const double ric_plane = directional_intrinsic_ricci(pc.riemann, frame, v);

  // Tangent directions of S^{d−1}_Π at v: an orthonormal basis of Π ∩ v^⊥.
  const int d = frame.dim_plane();
  Matrix tangent;
  {
    // v first, then the plane basis; the dependent column is dropped.
    const Matrix& g = frame.metric;
    Matrix basis(frame.dim_total(), d);
    basis.col(0) = v;
    int filled = 1;
    for (int c = 0; c < d && filled < d; ++c) {
      Vector w = frame.plane.col(c);
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k < filled; ++k) w -= basis.col(k).dot(g * w) * basis.col(k);
      const double nrm = std::sqrt(w.dot(g * w));
      if (nrm > 1e-6) basis.col(filled++) = w / nrm;
    }
    tangent = basis.rightCols(d - 1);
  }

  const Matrix coeffs = frame_coefficients(frame.metric, v, tangent);
  const auto blocks = jacobi_transport(chart, p, v, ascending(radii), opt.tol);
  std::vector<double> dens;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) dens.push_back(span_density(*it, coeffs));
  ExpansionFit fit = fit_expansion(std::move(radii), std::move(dens), "plane_sphere_density");
  fit.target = -ric_plane / 6.0;
  fit.tolerance = 2e-3;
  return fit;
}

ExpansionFit normal_density_coeff(const MetricChart& chart, const Vector& p, const SubspaceFrame& frame,
                                  const Vector& u, std::vector<double> radii, const ExpansionOptions& opt) {
  validate_ladder(radii);
  const PointCurvature pc = riemann_at(chart, p);
  const double ric_normal = directional_normal_ricci(pc.riemann, frame, u);
  const Matrix coeffs = frame_coefficients(frame.metric, u, frame.normal);
  const auto blocks = jacobi_transport(chart, p, u, ascending(radii), opt.tol);
  std::vector<double> dens;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) dens.push_back(span_density(*it, coeffs));
  ExpansionFit fit = fit_expansion(std::move(radii), std::move(dens), "normal_sphere_density");
  fit.target = -ric_normal / 6.0;
  fit.tolerance = 2e-3;
  return fit;
}

ExpansionFit bdp_circumference(const MetricChart& chart, const Vector& p, std::vector<double> radii,
                               const ExpansionOptions& opt) {
  if (chart.dim() != 2) throw GeometryError(ErrorCode::DimensionMismatch, "circumference needs a surface chart");
  std::vector<Vector> dirs;
  std::vector<double> weights;
  for (int k = 0; k < opt.circle_points; ++k) {
    const double th = 2.0 * std::numbers::pi * k / opt.circle_points;
    Vector d(2);
    d << std::cos(th), std::sin(th);
    dirs.push_back(d);
    weights.push_back(1.0);
  }
  // L(r) = ∫ |∂_θ exp_p(r u(θ))| dθ, the integrand being |J(r)| for J'(0) = u'(θ).
  ExpansionFit fit = averaged_fit(chart, p, frame_at(chart, p), dirs, weights, std::move(radii), opt.tol,
                                  "geodesic_circle_length");
  const double K = riemann_at(chart, p).scalar / 2.0;
  fit.target = -K / 6.0;
  fit.tolerance = 1e-3;
  return fit;
}

}  // namespace ricci

#include "ricci/curvature.hpp"

#include <cmath>
#include <sstream>

namespace ricci {

namespace {

void require_in_domain(const MetricChart& chart, const Vector& x) {
  if (x.size() != chart.dim())
    throw GeometryError(ErrorCode::DimensionMismatch, "point has wrong dimension for chart " + chart.label());
  if (!chart.contains(x)) {
    std::ostringstream os;
    os << "point (" << x.transpose() << ") outside domain of " << chart.label();
    throw GeometryError(ErrorCode::OutOfDomain, os.str());
  }
}

}  // namespace

Matrix checked_inverse(const Matrix& g) {
  const double scale = g.diagonal().cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw GeometryError(ErrorCode::SingularMetric, "metric has no positive diagonal");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, scale))
    throw GeometryError(ErrorCode::SingularMetric, "metric is not symmetric");

  Eigen::LDLT<Matrix> ldlt(g);
  if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 1e-12 * scale).all())
    throw GeometryError(ErrorCode::SingularMetric, "metric is not positive definite");

  Matrix inv = ldlt.solve(Matrix::Identity(g.rows(), g.cols()));
  inv = 0.5 * (inv + inv.transpose());
  const double residual = (g * inv - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (residual >= 1e-10)
    throw GeometryError(ErrorCode::SingularMetric, "metric inverse residual too large");
  return inv;
}

MetricEval eval_metric(const MetricChart& chart, const Vector& x) {
  require_in_domain(chart, x);
  Matrix g = chart.metric(x);
  Matrix g_inv = checked_inverse(g);
  return {std::move(g), std::move(g_inv)};
}

MetricJet metric_jet(const MetricChart& chart, const Vector& x, int order) {
  require_in_domain(chart, x);
  const int n = chart.dim();
  MetricJet jet;
  jet.dg.assign(n, Matrix::Zero(n, n));

  if (order <= 1) {
    for (int a = 0; a < n; ++a) {
      VectorX<Dual1> xd(n);
      for (int c = 0; c < n; ++c) xd(c) = Dual1(x(c), c == a ? 1.0 : 0.0);
      const MatrixX<Dual1> gd = chart.metric(xd);
      if (a == 0) jet.g = gd.unaryExpr([](const Dual1& v) { return v.val; });
      jet.dg[a] = gd.unaryExpr([](const Dual1& v) { return v.eps; });
    }
    if (n == 0) jet.g = Matrix(0, 0);
  } else {
    jet.d2g.assign(static_cast<size_t>(n) * n, Matrix::Zero(n, n));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        VectorX<Dual2> xd(n);
        for (int c = 0; c < n; ++c)
          xd(c) = Dual2(Dual1(x(c), c == a ? 1.0 : 0.0), Dual1(c == b ? 1.0 : 0.0, 0.0));
        const MatrixX<Dual2> gd = chart.metric(xd);
        if (a == 0 && b == 0) jet.g = gd.unaryExpr([](const Dual2& v) { return v.val.val; });
        if (b == a) jet.dg[a] = gd.unaryExpr([](const Dual2& v) { return v.val.eps; });
        Matrix mixed = gd.unaryExpr([](const Dual2& v) { return v.eps.eps; });
        jet.d2g[static_cast<size_t>(a) * n + b] = mixed;
        jet.d2g[static_cast<size_t>(b) * n + a] = mixed;
      }
  }
  jet.g_inv = checked_inverse(jet.g);
  return jet;
}

Christoffel christoffel_from_jet(const MetricJet& jet) {
  const int n = static_cast<int>(jet.g.rows());
  Christoffel gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += jet.g_inv(k, l) * (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));
        gamma(k, i, j) = 0.5 * s;
        gamma(k, j, i) = 0.5 * s;
      }
  return gamma;
}

Christoffel christoffel(const MetricChart& chart, const Vector& x) {
  return christoffel_from_jet(metric_jet(chart, x, 1));
}

Tensor4<double> riemann_from_christoffel(const Matrix& g, const Christoffel& gamma,
                                         const std::vector<Christoffel>& dgamma) {
  const int n = static_cast<int>(g.rows());
  // Rup(l, i, j, k) = R^l_{ijk}, R(∂_i, ∂_j)∂_k = R^l_{ijk} ∂_l
  Tensor4<double> rup(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int m = 0; m < n; ++m) s += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          rup(l, i, j, k) = s;
          rup(l, j, i, k) = -s;
        }
  // R_{ijkl} = g(R(∂_i, ∂_j)∂_l, ∂_k)
  Tensor4<double> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) s += g(k, p) * rup(p, i, j, l);
          r(i, j, k, l) = s;
          r(j, i, k, l) = -s;
        }
  return r;
}

PointCurvature riemann_at(const MetricChart& chart, const Vector& x) {
  const MetricJet jet = metric_jet(chart, x, 2);
  const int n = chart.dim();
  const Matrix& ginv = jet.g_inv;

  Christoffel gamma = christoffel_from_jet(jet);

  std::vector<Christoffel> dgamma(n, Christoffel(n));
  for (int m = 0; m < n; ++m) {
    const Matrix dginv = -ginv * jet.dg[m] * ginv;
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) {
            const double bracket = jet.dg[j](k, p) + jet.dg[k](j, p) - jet.dg[p](j, k);
            const double dbracket = jet.second(m, j)(k, p) + jet.second(m, k)(j, p) - jet.second(m, p)(j, k);
            s += dginv(l, p) * bracket + ginv(l, p) * dbracket;
          }
          dgamma[m](l, j, k) = 0.5 * s;
          dgamma[m](l, k, j) = 0.5 * s;
        }
  }

  PointCurvature pc;
  pc.point = x;
  pc.riemann = AlgebraicCurvature(riemann_from_christoffel(jet.g, gamma, dgamma), jet.g);
  pc.christoffel = std::move(gamma);
  pc.ricci = pc.riemann.ricci();
  pc.scalar = (ginv * pc.ricci).trace();
  return pc;
}

double sectional(const AlgebraicCurvature& R, const Vector& u, const Vector& v) {
  const Matrix& g = R.frame_metric;
  const double uu = u.dot(g * u), vv = v.dot(g * v), uv = u.dot(g * v);
  const double gram = uu * vv - uv * uv;
  if (!(gram > kDegeneratePlaneTol))
    throw GeometryError(ErrorCode::DegeneratePlane, "spanning vectors are (nearly) dependent");
  return R.evaluate(u, v, u, v) / gram;
}

}  // namespace ricci

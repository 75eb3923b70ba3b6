#include "ricci/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace ricci {

double AlgebraicCurvature::evaluate(const Vector& u, const Vector& v, const Vector& w,
                                    const Vector& z) const {
  const int n = dim();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (v(j) == 0.0) continue;
      const double uv = u(i) * v(j);
      for (int k = 0; k < n; ++k) {
        if (w(k) == 0.0) continue;
        double inner = 0.0;
        for (int l = 0; l < n; ++l) inner += components(i, j, k, l) * z(l);
        sum += uv * w(k) * inner;
      }
    }
  }
  return sum;
}

Matrix AlgebraicCurvature::ricci() const {
  const int n = dim();
  const Matrix ginv = frame_metric.inverse();
  Matrix ric = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) s += ginv(i, k) * components(i, j, k, l);
      ric(j, l) = s;
    }
  return ric;
}

double AlgebraicCurvature::scalar() const {
  return (frame_metric.inverse() * ricci()).trace();
}

AlgebraicCurvature AlgebraicCurvature::in_basis(const Matrix& basis) const {
  const int n = dim();
  const int m = static_cast<int>(basis.cols());
  // Contract one slot at a time: O(n^5) instead of O(n^8).
  auto contract = [&](const std::vector<double>& in, int slot) {
    std::vector<double> out(static_cast<size_t>(n) * n * n * n, 0.0);
    auto at = [n](int a, int b, int c, int d) {
      return ((static_cast<size_t>(a) * n + b) * n + c) * n + d;
    };
    int idx[4];
    for (idx[0] = 0; idx[0] < n; ++idx[0])
      for (idx[1] = 0; idx[1] < n; ++idx[1])
        for (idx[2] = 0; idx[2] < n; ++idx[2])
          for (idx[3] = 0; idx[3] < n; ++idx[3]) {
            if (idx[slot] >= m) continue;
            int src[4] = {idx[0], idx[1], idx[2], idx[3]};
            double s = 0.0;
            for (int p = 0; p < n; ++p) {
              src[slot] = p;
              s += basis(p, idx[slot]) * in[at(src[0], src[1], src[2], src[3])];
            }
            out[at(idx[0], idx[1], idx[2], idx[3])] = s;
          }
    return out;
  };
  std::vector<double> work = components.data();
  for (int slot = 0; slot < 4; ++slot) work = contract(work, slot);

  Tensor4<double> r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          r(i, j, k, l) = work[((static_cast<size_t>(i) * n + j) * n + k) * n + l];
  return {std::move(r), basis.transpose() * frame_metric * basis};
}

double AlgebraicCurvature::symmetry_defect() const {
  const int n = dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r = components(i, j, k, l);
          worst = std::max({worst, std::abs(r + components(j, i, k, l)),
                            std::abs(r + components(i, j, l, k)),
                            std::abs(r - components(k, l, i, j)),
                            std::abs(r + components(i, k, l, j) + components(i, l, j, k))});
        }
  return worst;
}

AlgebraicCurvature constant_curvature(int n, double kappa) {
  Tensor4<double> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r(i, j, i, j) = kappa;
      r(i, j, j, i) = -kappa;
    }
  return {std::move(r), Matrix::Identity(n, n)};
}

}  // namespace ricci

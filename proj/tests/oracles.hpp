#pragma once

// Reference computations that share no code with the library: finite
// differences, brute-force tensor arrays and closed-form solutions.

#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using MetricFn = std::function<Matrix(const Vector&)>;

// Γ[k][i][j] and R[i][j][k][l] as flat vectors.
struct FdCurvature {
  int n = 0;
  std::vector<double> gamma;
  std::vector<double> riemann;
  double G(int k, int i, int j) const { return gamma[(k * n + i) * n + j]; }
  double R(int i, int j, int k, int l) const { return riemann[((i * n + j) * n + k) * n + l]; }
};

// 4th-order central difference of a matrix-valued function along axis a.
inline Matrix central(const std::function<Matrix(const Vector&)>& f, const Vector& x, int a, double h) {
  auto at = [&](double s) {
    Vector y = x;
    y(a) += s;
    return f(y);
  };
  return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}

inline std::vector<double> christoffel_fd(const MetricFn& g, const Vector& x, double h) {
  const int n = static_cast<int>(x.size());
  std::vector<Matrix> dg;
  for (int a = 0; a < n; ++a) dg.push_back(central(g, x, a, h));
  const Matrix ginv = g(x).inverse();
  std::vector<double> gamma(n * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[(k * n + i) * n + j] = 0.5 * s;
      }
  return gamma;
}

// R(∂_i, ∂_j)∂_l = Rup^p_{ijl} ∂_p lowered so that R_{ijij} is sectional.
inline FdCurvature curvature_fd(const MetricFn& g, const Vector& x, double h = 1e-4) {
  const int n = static_cast<int>(x.size());
  FdCurvature out;
  out.n = n;
  out.gamma = christoffel_fd(g, x, h);
  // ∂_m Γ by differencing the FD Christoffels.
  std::vector<std::vector<double>> dgamma(n);
  for (int m = 0; m < n; ++m) {
    auto at = [&](double s) {
      Vector y = x;
      y(m) += s;
      return christoffel_fd(g, y, h);
    };
    const auto p2 = at(2 * h), p1 = at(h), m1 = at(-h), m2 = at(-2 * h);
    dgamma[m].resize(n * n * n);
    for (int q = 0; q < n * n * n; ++q) dgamma[m][q] = (-p2[q] + 8 * p1[q] - 8 * m1[q] + m2[q]) / (12 * h);
  }
  auto G = [&](int k, int i, int j) { return out.gamma[(k * n + i) * n + j]; };
  auto dG = [&](int m, int k, int i, int j) { return dgamma[m][(k * n + i) * n + j]; };
  const Matrix gx = g(x);
  out.riemann.assign(n * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) {
            double up = dG(i, p, j, l) - dG(j, p, i, l);
            for (int m = 0; m < n; ++m) up += G(p, i, m) * G(m, j, l) - G(p, j, m) * G(m, i, l);
            s += gx(k, p) * up;
          }
          out.riemann[((i * n + j) * n + k) * n + l] = s;
        }
  return out;
}

// Gaussian curvature of an orthogonal surface metric E du² + G dv² (Brioschi).
inline double brioschi(const MetricFn& g, const Vector& x, double h = 1e-3) {
  auto sqrtEG = [&](const Vector& y) {
    const Matrix m = g(y);
    return std::sqrt(m(0, 0) * m(1, 1));
  };
  auto term = [&](const Vector& y, int a) {
    // (∂_u G)/√(EG) for a = 0, (∂_v E)/√(EG) for a = 1
    const Matrix d = central(g, y, a, h);
    return (a == 0 ? d(1, 1) : d(0, 0)) / sqrtEG(y);
  };
  double s = 0.0;
  for (int a = 0; a < 2; ++a) {
    auto f = [&](const Vector& y) { return Matrix::Constant(1, 1, term(y, a)); };
    s += central(f, x, a, h)(0, 0);
  }
  return -s / (2.0 * sqrtEG(x));
}

// Sectional curvature of span{u, v} from a raw component array and Gram matrix.
inline double sectional_raw(int n, const std::vector<double>& R, const Matrix& g, const Vector& u, const Vector& v) {
  double num = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) num += R[((i * n + j) * n + k) * n + l] * u(i) * v(j) * u(k) * v(l);
  return num / (u.dot(g * u) * v.dot(g * v) - std::pow(u.dot(g * v), 2));
}

// ---- exterior algebra on full antisymmetric arrays --------------------------

// Full n^d array of the wedge product of the columns of V (no normalization
// beyond ω_{i_1..i_d} = det of the selected rows).
inline std::vector<double> wedge_full(const Matrix& V) {
  const int n = static_cast<int>(V.rows()), d = static_cast<int>(V.cols());
  int total = 1;
  for (int s = 0; s < d; ++s) total *= n;
  std::vector<double> w(total, 0.0);
  std::vector<int> idx(d, 0);
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    for (int s = d - 1; s >= 0; --s) idx[s] = rem % n, rem /= n;
    Matrix sub(d, d);
    for (int s = 0; s < d; ++s) sub.row(s) = V.row(idx[s]);
    w[flat] = sub.determinant();
  }
  return w;
}

// Literal Weitzenböck formula on a full array ω with an orthonormal-frame
// curvature tensor R(i,j,k,l) and Ricci matrix.
inline std::vector<double> weitzenboeck_full(int n, int d, const std::function<double(int, int, int, int)>& R,
                                             const Matrix& ric, const std::vector<double>& w) {
  int total = 1;
  for (int s = 0; s < d; ++s) total *= n;
  std::vector<int> pow(d, 1);
  for (int s = d - 2; s >= 0; --s) pow[s] = pow[s + 1] * n;
  std::vector<double> out(total, 0.0);
  std::vector<int> idx(d);
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    for (int s = d - 1; s >= 0; --s) idx[s] = rem % n, rem /= n;
    double acc = 0.0;
    for (int s = 0; s < d; ++s)
      for (int j = 0; j < n; ++j) acc += ric(idx[s], j) * w[flat + (j - idx[s]) * pow[s]];
    for (int s = 0; s < d; ++s)
      for (int t = s + 1; t < d; ++t)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            acc -= R(idx[s], idx[t], j, k) * w[flat + (j - idx[s]) * pow[s] + (k - idx[t]) * pow[t]];
    out[flat] = acc;
  }
  return out;
}

inline double full_inner(int d, const std::vector<double>& a, const std::vector<double>& b) {
  double f = 1.0;
  for (int s = 2; s <= d; ++s) f *= s;
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0) / f;
}

// ---- ℂP^n by Kähler angle ----------------------------------------------------

// J e_{2k} = e_{2k+1}; K = 1 + 3⟨Ju, v⟩² for orthonormal u, v.
inline Vector apply_j(const Vector& u) {
  Vector ju(u.size());
  for (int k = 0; 2 * k + 1 < u.size(); ++k) {
    ju(2 * k) = -u(2 * k + 1);
    ju(2 * k + 1) = u(2 * k);
  }
  return ju;
}

inline double kahler_sectional(const Vector& u, const Vector& v) {
  const double c = apply_j(u).dot(v);
  return 1.0 + 3.0 * c * c;
}

// Mean normal Ricci of the plane spanned by the first d columns of an
// orthonormal basis Q of R^{2n}, by Kähler angles.
inline double kahler_normal_mean(const Matrix& Q, int d) {
  const int n = static_cast<int>(Q.rows());
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int a = d; a < n; ++a) s += kahler_sectional(Q.col(i), Q.col(a));
  return s / (d * (n - d));
}

inline Matrix haar_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  for (int j = 0; j < n; ++j)
    if (qr.matrixQR()(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

}  // namespace oracle
